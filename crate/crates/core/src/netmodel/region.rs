use std::collections::BTreeMap;

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::NodeSet;
use crate::{Error, Result};

const FEAS_TOL: f64 = 1e-12;

/// Linear constraints `R(S) ≤ v(S)` over node subsets, with `v(S) ≥ 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateRegion {
    n_nodes: usize,
    constraints: BTreeMap<NodeSet, f64>,
}

impl RateRegion {
    pub fn new(n_nodes: usize) -> Self {
        RateRegion {
            n_nodes,
            constraints: BTreeMap::new(),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Add `R(s) ≤ value`, clamping negatives to zero and keeping the
    /// tighter bound if `s` is already constrained.
    pub fn insert(&mut self, s: NodeSet, value: f64) {
        let v = value.max(0.0);
        self.constraints
            .entry(s)
            .and_modify(|old| *old = old.min(v))
            .or_insert(v);
    }

    pub fn bound(&self, s: NodeSet) -> Option<f64> {
        self.constraints.get(&s).copied()
    }

    pub fn constraints(&self) -> impl Iterator<Item = (&NodeSet, &f64)> {
        self.constraints.iter()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Whether a rate tuple (zero-based, one entry per node) lies in the region.
    pub fn contains(&self, rates: &[f64]) -> bool {
        rates.iter().all(|r| *r >= -FEAS_TOL)
            && self.constraints.iter().all(|(s, v)| {
                let sum: f64 = s.iter().map(|k| rates.get(k).copied().unwrap_or(0.0)).sum();
                sum <= v + FEAS_TOL
            })
    }

    /// Maximize `Σ w_k R_k` over the region with `R ≥ 0` and rates outside
    /// `active` pinned to zero. Returns `+∞` when some active source with
    /// positive weight is not covered by any constraint.
    ///
    /// Up to two weighted sources are solved exactly by vertex enumeration;
    /// larger problems go through a simplex solver.
    pub fn max_weighted_sum(&self, weights: &[f64], active: NodeSet) -> Result<f64> {
        if weights.len() != self.n_nodes {
            return Err(Error::Invalid(format!(
                "expected {} weights, got {}",
                self.n_nodes,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Invalid(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let vars: Vec<usize> = active
            .iter()
            .filter(|&k| k < self.n_nodes && weights[k] > 0.0)
            .collect();
        let var_set = NodeSet::from_indices(vars.iter().copied());
        for &k in &vars {
            if !self.constraints.keys().any(|s| s.contains(k)) {
                return Ok(f64::INFINITY);
            }
        }
        // restrict each constraint to the variables that are free
        let rows: Vec<(Vec<usize>, f64)> = self
            .constraints
            .iter()
            .filter_map(|(s, v)| {
                let cols: Vec<usize> = vars
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| s.intersection(var_set).contains(**k))
                    .map(|(i, _)| i)
                    .collect();
                (!cols.is_empty()).then_some((cols, *v))
            })
            .collect();
        let w: Vec<f64> = vars.iter().map(|&k| weights[k]).collect();
        match vars.len() {
            0 => Ok(0.0),
            1 => Ok(w[0] * rows.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min)),
            2 => Ok(vertex_max_2d(&w, &rows)),
            _ => simplex_max(&w, &rows),
        }
    }
}

/// Exact maximum of a linear objective over a 2-D polytope given by
/// `Σ_{i∈cols} r_i ≤ v` rows and `r ≥ 0`, by checking every vertex.
fn vertex_max_2d(w: &[f64], rows: &[(Vec<usize>, f64)]) -> f64 {
    // lines a·r = c, including the two axes
    let mut lines: Vec<([f64; 2], f64)> = vec![([1.0, 0.0], 0.0), ([0.0, 1.0], 0.0)];
    for (cols, v) in rows {
        let mut a = [0.0; 2];
        for &c in cols {
            a[c] = 1.0;
        }
        lines.push((a, *v));
    }
    let feasible = |p: [f64; 2]| {
        p[0] >= -FEAS_TOL
            && p[1] >= -FEAS_TOL
            && lines[2..]
                .iter()
                .all(|(a, c)| a[0] * p[0] + a[1] * p[1] <= c + FEAS_TOL * (1.0 + c.abs()))
    };
    let mut best = f64::NEG_INFINITY;
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let ((a, c), (b, d)) = (lines[i], lines[j]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0.0 {
                continue;
            }
            let p = [(c * b[1] - a[1] * d) / det, (a[0] * d - c * b[0]) / det];
            if feasible(p) {
                best = best.max(w[0] * p[0].max(0.0) + w[1] * p[1].max(0.0));
            }
        }
    }
    best.max(0.0)
}

fn simplex_max(w: &[f64], rows: &[(Vec<usize>, f64)]) -> Result<f64> {
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = w
        .iter()
        .map(|&wk| problem.add_var(wk, (0.0, f64::INFINITY)))
        .collect();
    for (cols, v) in rows {
        let expr: Vec<_> = cols.iter().map(|&c| (vars[c], 1.0)).collect();
        problem.add_constraint(expr.as_slice(), ComparisonOp::Le, *v);
    }
    let solution = problem
        .solve()
        .map_err(|e| Error::Inconsistent(format!("rate-region LP failed: {e}")))?;
    Ok(solution.objective())
}
