use std::fmt;

use super::{CodingDistribution, InputLayer, Mode};
use crate::netmodel::{DmNetwork, MixedRadix, MAX_JOINT_STATES};
use crate::{Error, Result};

/// Role of a variable in a network joint distribution (zero-based nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    X(usize),
    U(usize),
    Y(usize),
    Yhat(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => write!(f, "Q"),
            Var::X(k) => write!(f, "X{}", k + 1),
            Var::U(k) => write!(f, "U{}", k + 1),
            Var::Y(k) => write!(f, "Y{}", k + 1),
            Var::Yhat(k) => write!(f, "Yhat{}", k + 1),
        }
    }
}

const SUM_TOL: f64 = 1e-10;
const NEG_MI_TOL: f64 = 1e-9;

/// A dense joint pmf over labelled finite variables, mixed-radix with the
/// last variable fastest.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    vars: Vec<Var>,
    radix: MixedRadix,
    probs: Vec<f64>,
    /// Nonzero states: digit tuples (row-major, one row per state) and masses.
    support_digits: Vec<u32>,
    support_probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(vars: Vec<Var>, cardinalities: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if vars.len() != cardinalities.len() {
            return Err(Error::Invalid(
                "one cardinality per variable is required".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("variable {v} listed twice")));
            }
        }
        let radix = MixedRadix::new(&cardinalities).ok_or(Error::StateOverflow {
            count: u128::MAX,
            cap: MAX_JOINT_STATES,
        })?;
        if radix.total() > MAX_JOINT_STATES {
            return Err(Error::StateOverflow {
                count: radix.total() as u128,
                cap: MAX_JOINT_STATES,
            });
        }
        if probs.len() != radix.total() {
            return Err(Error::Invalid(format!(
                "probability tensor has {} entries, expected {}",
                probs.len(),
                radix.total()
            )));
        }
        if probs.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::Invalid("probabilities must be nonnegative".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Normalization(format!(
                "joint distribution sums to {sum}"
            )));
        }
        let nv = vars.len();
        let mut support_digits = Vec::new();
        let mut support_probs = Vec::new();
        let mut digits = vec![0usize; nv];
        for (idx, &p) in probs.iter().enumerate() {
            if p > 0.0 {
                radix.decode(idx, &mut digits);
                support_digits.extend(digits.iter().map(|&d| d as u32));
                support_probs.push(p);
            }
        }
        Ok(JointDistribution {
            vars,
            radix,
            probs,
            support_digits,
            support_probs,
        })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn cardinalities(&self) -> &[usize] {
        self.radix.sizes()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn state_count(&self) -> usize {
        self.radix.total()
    }

    pub fn support_len(&self) -> usize {
        self.support_probs.len()
    }

    fn position(&self, v: Var) -> Result<usize> {
        self.vars.iter().position(|w| *w == v).ok_or_else(|| {
            Error::Invalid(format!(
                "variable {v} is not part of this joint distribution"
            ))
        })
    }

    /// Marginal pmf over `vars` (in the given order), dense, last variable fastest.
    pub fn marginal(&self, vars: &[Var]) -> Result<(Vec<usize>, Vec<f64>)> {
        let pos: Vec<usize> = vars
            .iter()
            .map(|v| self.position(*v))
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = pos.iter().map(|&p| self.radix.sizes()[p]).collect();
        let radix = MixedRadix::new(&sizes).expect("bounded by the joint state count");
        let mut out = vec![0.0; radix.total()];
        let nv = self.vars.len();
        for (i, &p) in self.support_probs.iter().enumerate() {
            let row = &self.support_digits[i * nv..(i + 1) * nv];
            let idx: usize = pos
                .iter()
                .enumerate()
                .map(|(j, &vp)| row[vp] as usize * radix.stride(j))
                .sum();
            out[idx] += p;
        }
        Ok((sizes, out))
    }

    /// Joint entropy `H(vars)` in bits.
    pub fn entropy(&self, vars: &[Var]) -> Result<f64> {
        let mut sorted: Vec<Var> = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.is_empty() {
            return Ok(0.0);
        }
        let (_, m) = self.marginal(&sorted)?;
        Ok(m.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum())
    }

    /// `I(A; B | C)` in bits via `H(A,C) + H(B,C) − H(A,B,C) − H(C)`.
    ///
    /// The three sets must be pairwise disjoint. Values in `[−1e-9, 0)` are
    /// returned as 0; anything more negative is an internal error.
    pub fn conditional_mi(&self, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
        for (x, y) in [(a, b), (a, c), (b, c)] {
            if let Some(v) = x.iter().find(|v| y.contains(v)) {
                return Err(Error::Usage(format!(
                    "variable {v} appears in two argument sets of I(A;B|C)"
                )));
            }
        }
        if a.is_empty() || b.is_empty() {
            return Ok(0.0);
        }
        let ac: Vec<Var> = [a, c].concat();
        let bc: Vec<Var> = [b, c].concat();
        let abc: Vec<Var> = [a, b, c].concat();
        let value =
            self.entropy(&ac)? + self.entropy(&bc)? - self.entropy(&abc)? - self.entropy(c)?;
        if value < -NEG_MI_TOL {
            return Err(Error::Inconsistent(format!(
                "conditional mutual information evaluated to {value}"
            )));
        }
        Ok(value.max(0.0))
    }

    /// `I(A; B)`.
    pub fn mutual_information(&self, a: &[Var], b: &[Var]) -> Result<f64> {
        self.conditional_mi(a, b, &[])
    }
}

/// Assemble `p(q) Π_k p(x_k|q) p(y^N|x^N) Π_k p(ŷ_k|y_k,x_k,q)`, or in
/// superposition mode `p(q) Π_k p(u_k,x_k|q) p(y^N|x^N) Π_k p(ŷ_k|y_k,u_k,q)`.
///
/// Variables are ordered `Q, X₁…X_N, [U₁…U_N,] Y₁…Y_N, Ŷ₁…Ŷ_N`.
pub fn assemble_joint(
    net: &DmNetwork,
    dist: &CodingDistribution,
    mode: Mode,
) -> Result<JointDistribution> {
    if dist.mode() != mode {
        return Err(Error::Usage(format!(
            "coding distribution is in {:?} mode but {:?} was requested",
            dist.mode(),
            mode
        )));
    }
    dist.check_against(net)?;
    let n = net.n_nodes();
    let nq = dist.q_pmf().len();
    let u_sizes: Vec<usize> = match dist.layer() {
        InputLayer::Plain(_) => Vec::new(),
        InputLayer::Superposition { u_sizes, .. } => u_sizes.clone(),
    };
    let superposed = !u_sizes.is_empty();

    let mut vars = vec![Var::Q];
    let mut cards = vec![nq];
    vars.extend((0..n).map(Var::X));
    cards.extend_from_slice(net.x_sizes());
    if superposed {
        vars.extend((0..n).map(Var::U));
        cards.extend_from_slice(&u_sizes);
    }
    vars.extend((0..n).map(Var::Y));
    cards.extend_from_slice(net.y_sizes());
    vars.extend((0..n).map(Var::Yhat));
    cards.extend_from_slice(dist.yhat_sizes());

    let count = cards
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(c as u128));
    if count > MAX_JOINT_STATES as u128 {
        return Err(Error::StateOverflow {
            count,
            cap: MAX_JOINT_STATES,
        });
    }
    let radix = MixedRadix::new(&cards).expect("checked above");
    let mut probs = vec![0.0; radix.total()];

    let xr = net.x_radix();
    let yr = net.y_radix();
    let yhr = MixedRadix::new(dist.yhat_sizes()).expect("checked above");
    // the input layer, per node: X alone, or the (U, X) pair
    let layer_sizes: Vec<usize> = if superposed {
        (0..n).map(|k| u_sizes[k] * net.x_sizes()[k]).collect()
    } else {
        net.x_sizes().to_vec()
    };
    let lr = MixedRadix::new(&layer_sizes).expect("bounded by the joint");

    let mut layer = vec![0usize; n];
    let mut x = vec![0usize; n];
    let mut u = vec![0usize; n];
    let mut y = vec![0usize; n];
    let mut yh = vec![0usize; n];
    let mut digits = vec![0usize; vars.len()];

    for q in 0..nq {
        let pq = dist.q_pmf()[q];
        if pq == 0.0 {
            continue;
        }
        layer.iter_mut().for_each(|d| *d = 0);
        loop {
            let mut p_in = pq;
            for k in 0..n {
                p_in *= dist.input_prob(k, q, layer[k]);
                if superposed {
                    u[k] = layer[k] / net.x_sizes()[k];
                    x[k] = layer[k] % net.x_sizes()[k];
                } else {
                    x[k] = layer[k];
                }
            }
            if p_in > 0.0 {
                let row = net.channel_row(xr.index(&x));
                for (y_idx, &pc) in row.iter().enumerate() {
                    if pc == 0.0 {
                        continue;
                    }
                    yr.decode(y_idx, &mut y);
                    let base = p_in * pc;
                    yh.iter_mut().for_each(|d| *d = 0);
                    loop {
                        let mut p = base;
                        for k in 0..n {
                            let cond = if superposed { u[k] } else { x[k] };
                            p *= dist.compression_prob(k, q, y[k], cond, yh[k]);
                            if p == 0.0 {
                                break;
                            }
                        }
                        if p > 0.0 {
                            let mut i = 0;
                            digits[i] = q;
                            i += 1;
                            for k in 0..n {
                                digits[i + k] = x[k];
                            }
                            i += n;
                            if superposed {
                                for k in 0..n {
                                    digits[i + k] = u[k];
                                }
                                i += n;
                            }
                            for k in 0..n {
                                digits[i + k] = y[k];
                                digits[i + n + k] = yh[k];
                            }
                            probs[radix.index(&digits)] += p;
                        }
                        if !yhr.increment(&mut yh) {
                            break;
                        }
                    }
                }
            }
            if !lr.increment(&mut layer) {
                break;
            }
        }
    }
    JointDistribution::new(vars, cards, probs)
}

/// Joint pmf over `(X^N, Y^N)` for an arbitrary (possibly correlated) input
/// pmf over `X^N`, given mixed-radix with the last node fastest.
pub fn assemble_input_output(net: &DmNetwork, input_pmf: &[f64]) -> Result<JointDistribution> {
    let n = net.n_nodes();
    let xr = net.x_radix();
    let ny = net.y_radix().total();
    if input_pmf.len() != xr.total() {
        return Err(Error::Invalid(format!(
            "input pmf has {} entries, expected {}",
            input_pmf.len(),
            xr.total()
        )));
    }
    let sum: f64 = input_pmf.iter().sum();
    if input_pmf.iter().any(|p| !(*p >= 0.0)) || (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::Normalization(format!("input pmf sums to {sum}")));
    }
    let mut vars: Vec<Var> = (0..n).map(Var::X).collect();
    vars.extend((0..n).map(Var::Y));
    let mut cards = net.x_sizes().to_vec();
    cards.extend_from_slice(net.y_sizes());
    // X^N then Y^N is exactly the channel tensor layout
    let probs: Vec<f64> = net
        .channel()
        .iter()
        .enumerate()
        .map(|(i, pc)| input_pmf[i / ny] * pc)
        .collect();
    JointDistribution::new(vars, cards, probs)
}
