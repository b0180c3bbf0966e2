//! Closed-form regions for noiseless graphs, erasure networks and
//! deterministic networks, with conversions to dense DM networks.

use std::collections::HashMap;

use crate::infocalc::ProductInput;
use crate::netmodel::{enumerate_cutsets, DestSelector, MixedRadix, MAX_JOINT_STATES, MAX_NODES};
use crate::{DmNetwork, Error, NodeSet, RateRegion, Result};

fn check_node_count(n: usize) -> Result<()> {
    if n > MAX_NODES {
        return Err(Error::TooManyNodes(n));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("need at least 2 nodes, got {n}")));
    }
    Ok(())
}

/// Directed edge `from → to` (zero-based) carrying `capacity` bits per use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiselessEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: f64,
}

/// Weighted directed graph of error-free bit pipes. Parallel edges are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiselessNetwork {
    n_nodes: usize,
    edges: Vec<NoiselessEdge>,
}

impl NoiselessNetwork {
    pub fn new(n_nodes: usize, edges: Vec<NoiselessEdge>) -> Result<Self> {
        check_node_count(n_nodes)?;
        for (i, e) in edges.iter().enumerate() {
            if e.from >= n_nodes || e.to >= n_nodes {
                return Err(Error::Invalid(format!(
                    "edge {i} names a node outside the network"
                )));
            }
            if e.from == e.to {
                return Err(Error::Invalid(format!(
                    "edge {i} is a self-loop at node {}",
                    e.from + 1
                )));
            }
            if !(e.capacity.is_finite() && e.capacity >= 0.0) {
                return Err(Error::Invalid(format!(
                    "edge {i} has capacity {}",
                    e.capacity
                )));
            }
        }
        Ok(NoiselessNetwork { n_nodes, edges })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[NoiselessEdge] {
        &self.edges
    }

    /// Total capacity of edges leaving `s` into its complement.
    pub fn cut_capacity(&self, s: NodeSet) -> f64 {
        self.edges
            .iter()
            .filter(|e| s.contains(e.from) && !s.contains(e.to))
            .map(|e| e.capacity)
            .sum()
    }

    /// Dense DM form: `X_j` is the tuple of symbols on `j`'s out-edges and
    /// `Y_k` the tuple on `k`'s in-edges, each edge over `2^C` symbols.
    /// Edge order within a tuple follows the edge list; the first edge is the
    /// slowest digit.
    pub fn to_dm(&self, dests: Vec<NodeSet>) -> Result<DmNetwork> {
        let mut widths = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if e.capacity.fract() != 0.0 || e.capacity > 20.0 {
                return Err(Error::Invalid(format!(
                    "edge {i} capacity {} must be a small integer for the DM conversion",
                    e.capacity
                )));
            }
            widths.push(1usize << e.capacity as u32);
        }
        let digits = |pick: &dyn Fn(&NoiselessEdge) -> bool| -> Vec<usize> {
            (0..self.edges.len())
                .filter(|&i| pick(&self.edges[i]))
                .collect()
        };
        let out_edges: Vec<Vec<usize>> = (0..self.n_nodes)
            .map(|j| digits(&|e| e.from == j))
            .collect();
        let in_edges: Vec<Vec<usize>> = (0..self.n_nodes).map(|k| digits(&|e| e.to == k)).collect();
        let size = |list: &[usize]| -> Result<usize> {
            list.iter().try_fold(1usize, |acc, &i| {
                acc.checked_mul(widths[i])
                    .filter(|&v| v <= MAX_JOINT_STATES)
                    .ok_or(Error::StateOverflow {
                        count: u128::MAX,
                        cap: MAX_JOINT_STATES,
                    })
            })
        };
        let x_sizes = out_edges
            .iter()
            .map(|l| size(l))
            .collect::<Result<Vec<_>>>()?;
        let y_sizes = in_edges
            .iter()
            .map(|l| size(l))
            .collect::<Result<Vec<_>>>()?;
        let x_radix: Vec<MixedRadix> = out_edges
            .iter()
            .map(|l| {
                MixedRadix::new(&l.iter().map(|&i| widths[i]).collect::<Vec<_>>())
                    .expect("bounded above")
            })
            .collect();
        let y_radix: Vec<MixedRadix> = in_edges
            .iter()
            .map(|l| {
                MixedRadix::new(&l.iter().map(|&i| widths[i]).collect::<Vec<_>>())
                    .expect("bounded above")
            })
            .collect();
        let mut symbol = vec![0usize; self.edges.len()];
        DmNetwork::deterministic(x_sizes, y_sizes, dests, |x| {
            for (j, list) in out_edges.iter().enumerate() {
                let mut d = vec![0; list.len()];
                x_radix[j].decode(x[j], &mut d);
                for (pos, &i) in list.iter().enumerate() {
                    symbol[i] = d[pos];
                }
            }
            in_edges
                .iter()
                .enumerate()
                .map(|(k, list)| {
                    y_radix[k].index(&list.iter().map(|&i| symbol[i]).collect::<Vec<_>>())
                })
                .collect()
        })
    }
}

/// `v(S) = Σ C_jk` over edges with `j ∈ S`, `k ∈ Sᶜ`, for every eligible cut.
pub fn noiseless_region(net: &NoiselessNetwork, selector: &DestSelector) -> Result<RateRegion> {
    let mut region = RateRegion::new(net.n_nodes);
    for (s, _) in enumerate_cutsets(net.n_nodes, selector)? {
        region.insert(s, net.cut_capacity(s));
    }
    Ok(region)
}

/// Broadcast erasure network: every receiver sees each sender's symbol or an
/// erasure, with the erasure pattern known at the receivers.
///
/// Stores `P_all_erased(j, R)` for every sender `j` and receiver set `R`,
/// indexed `[j][R.mask()]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureNetwork {
    x_sizes: Vec<usize>,
    all_erased: Vec<Vec<f64>>,
}

impl ErasureNetwork {
    /// Links erased independently: `P_all_erased(j, R) = Π_{k∈R} erase[j][k]`.
    /// Diagonal entries are ignored.
    pub fn independent(x_sizes: Vec<usize>, erase: &[Vec<f64>]) -> Result<Self> {
        let n = x_sizes.len();
        check_node_count(n)?;
        if erase.len() != n || erase.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("erasure matrix must be {n}×{n}")));
        }
        if erase.iter().flatten().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Invalid(
                "erasure probabilities must lie in [0,1]".into(),
            ));
        }
        let table = (0..n)
            .map(|j| {
                (0..1u32 << n)
                    .map(|m| {
                        NodeSet::from_mask(m as u16)
                            .without(j)
                            .iter()
                            .map(|k| erase[j][k])
                            .product()
                    })
                    .collect()
            })
            .collect();
        ErasureNetwork::from_table(x_sizes, table)
    }

    /// Arbitrary joint erasure statistics given as `P_all_erased(j, R)` tables.
    pub fn from_table(x_sizes: Vec<usize>, all_erased: Vec<Vec<f64>>) -> Result<Self> {
        let n = x_sizes.len();
        check_node_count(n)?;
        if x_sizes.iter().any(|&s| s == 0) {
            return Err(Error::Invalid("alphabet sizes must be at least 1".into()));
        }
        if all_erased.len() != n || all_erased.iter().any(|r| r.len() != 1 << n) {
            return Err(Error::Invalid(format!(
                "erasure table must have {n} rows of {} entries",
                1 << n
            )));
        }
        if all_erased
            .iter()
            .flatten()
            .any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::Invalid(
                "erasure probabilities must lie in [0,1]".into(),
            ));
        }
        Ok(ErasureNetwork {
            x_sizes,
            all_erased,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.x_sizes.len()
    }

    pub fn x_sizes(&self) -> &[usize] {
        &self.x_sizes
    }

    /// Probability that sender `j`'s symbol is erased at every node of `r`.
    pub fn all_erased(&self, j: usize, r: NodeSet) -> f64 {
        self.all_erased[j][r.mask() as usize]
    }
}

/// `v(S) = Σ_{j∈S} log₂|𝒳_j| · (1 − P_all_erased(j, Sᶜ))`.
pub fn erasure_region(net: &ErasureNetwork, selector: &DestSelector) -> Result<RateRegion> {
    let n = net.n_nodes();
    let mut region = RateRegion::new(n);
    for (s, _) in enumerate_cutsets(n, selector)? {
        let sc = s.complement(n);
        let v = s
            .iter()
            .map(|j| (net.x_sizes[j] as f64).log2() * (1.0 - net.all_erased(j, sc)))
            .sum();
        region.insert(s, v);
    }
    Ok(region)
}

/// Deterministic network `Y_k = g_k(X^N)` given by lookup tables indexed by
/// the mixed-radix input index (last node fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicNetwork {
    x_sizes: Vec<usize>,
    y_sizes: Vec<usize>,
    tables: Vec<Vec<usize>>,
    dests: Vec<NodeSet>,
}

impl DeterministicNetwork {
    pub fn new(
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        tables: Vec<Vec<usize>>,
        dests: Vec<NodeSet>,
    ) -> Result<Self> {
        let n = x_sizes.len();
        check_node_count(n)?;
        if y_sizes.len() != n || tables.len() != n || dests.len() != n {
            return Err(Error::Invalid(
                "one output alphabet, table and destination set per node".into(),
            ));
        }
        if x_sizes.iter().chain(&y_sizes).any(|&s| s == 0) {
            return Err(Error::Invalid("alphabet sizes must be at least 1".into()));
        }
        let xr = MixedRadix::new(&x_sizes)
            .filter(|r| r.total() <= MAX_JOINT_STATES)
            .ok_or(Error::StateOverflow {
                count: u128::MAX,
                cap: MAX_JOINT_STATES,
            })?;
        for (k, t) in tables.iter().enumerate() {
            if t.len() != xr.total() {
                return Err(Error::Invalid(format!(
                    "table of node {} has {} entries, expected {}",
                    k + 1,
                    t.len(),
                    xr.total()
                )));
            }
            if let Some(i) = t.iter().position(|&y| y >= y_sizes[k]) {
                return Err(Error::Invalid(format!(
                    "table of node {} maps input {i} outside its alphabet",
                    k + 1
                )));
            }
        }
        if dests.iter().any(|d| !d.is_subset(NodeSet::full(n))) {
            return Err(Error::Invalid(
                "destination set names a node outside the network".into(),
            ));
        }
        Ok(DeterministicNetwork {
            x_sizes,
            y_sizes,
            tables,
            dests,
        })
    }

    /// Tabulate `g(x^N)`, which returns all `N` outputs at once.
    pub fn from_fn<F>(
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        dests: Vec<NodeSet>,
        mut g: F,
    ) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<usize>,
    {
        let n = x_sizes.len();
        check_node_count(n)?;
        let xr = MixedRadix::new(&x_sizes)
            .filter(|r| r.total() <= MAX_JOINT_STATES)
            .ok_or(Error::StateOverflow {
                count: u128::MAX,
                cap: MAX_JOINT_STATES,
            })?;
        let mut tables = vec![Vec::with_capacity(xr.total()); n];
        let mut x = vec![0; n];
        for i in 0..xr.total() {
            xr.decode(i, &mut x);
            let y = g(&x);
            if y.len() != n {
                return Err(Error::Invalid(format!(
                    "output function returned {} values, expected {n}",
                    y.len()
                )));
            }
            for (t, v) in tables.iter_mut().zip(y) {
                t.push(v);
            }
        }
        DeterministicNetwork::new(x_sizes, y_sizes, tables, dests)
    }

    /// Binary linear network `Y_k = Σ_j g[j][k] X_j mod 2`; `g[k][k]` is ignored.
    pub fn linear_gf2(g: &[Vec<u8>], dests: Vec<NodeSet>) -> Result<Self> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("gain matrix must be {n}×{n}")));
        }
        DeterministicNetwork::from_fn(vec![2; n], vec![2; n], dests, |x| {
            (0..n)
                .map(|k| {
                    (0..n)
                        .filter(|&j| j != k)
                        .map(|j| (g[j][k] & 1) as usize * x[j])
                        .sum::<usize>()
                        % 2
                })
                .collect()
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.x_sizes.len()
    }

    pub fn x_sizes(&self) -> &[usize] {
        &self.x_sizes
    }

    pub fn y_sizes(&self) -> &[usize] {
        &self.y_sizes
    }

    pub fn dests(&self) -> &[NodeSet] {
        &self.dests
    }

    pub fn output(&self, k: usize, x_index: usize) -> usize {
        self.tables[k][x_index]
    }

    pub fn to_dm(&self) -> Result<DmNetwork> {
        let xr = MixedRadix::new(&self.x_sizes).expect("validated");
        DmNetwork::deterministic(
            self.x_sizes.clone(),
            self.y_sizes.clone(),
            self.dests.clone(),
            |x| {
                let i = xr.index(x);
                self.tables.iter().map(|t| t[i]).collect()
            },
        )
    }
}

/// `v(S) = H(Y(Sᶜ) | X(Sᶜ), Q)` under a product input, by direct enumeration
/// of the lookup tables.
pub fn deterministic_region(
    net: &DeterministicNetwork,
    inputs: &ProductInput,
    selector: &DestSelector,
) -> Result<RateRegion> {
    inputs.validate(&net.x_sizes)?;
    let n = net.n_nodes();
    let xr = MixedRadix::new(&net.x_sizes).expect("validated");
    let mut x = vec![0usize; n];
    // p(x^N | q) per q
    let px: Vec<Vec<f64>> = (0..inputs.q_pmf.len())
        .map(|q| {
            (0..xr.total())
                .map(|i| {
                    xr.decode(i, &mut x);
                    x.iter()
                        .enumerate()
                        .map(|(k, &v)| inputs.marginals[k][q][v])
                        .product()
                })
                .collect()
        })
        .collect();
    let entropy = |m: &HashMap<Vec<usize>, f64>| -> f64 {
        m.values()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    };
    let mut region = RateRegion::new(n);
    for (s, _) in enumerate_cutsets(n, selector)? {
        let sc: Vec<usize> = s.complement(n).iter().collect();
        let mut v = 0.0;
        for (q, pq) in inputs.q_pmf.iter().enumerate() {
            let mut with_y: HashMap<Vec<usize>, f64> = HashMap::new();
            let mut without_y: HashMap<Vec<usize>, f64> = HashMap::new();
            for (i, &p) in px[q].iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                xr.decode(i, &mut x);
                let mut key: Vec<usize> = sc.iter().map(|&k| x[k]).collect();
                *without_y.entry(key.clone()).or_default() += p;
                key.extend(sc.iter().map(|&k| net.tables[k][i]));
                *with_y.entry(key).or_default() += p;
            }
            v += pq * (entropy(&with_y) - entropy(&without_y));
        }
        region.insert(s, v.max(0.0));
    }
    Ok(region)
}
