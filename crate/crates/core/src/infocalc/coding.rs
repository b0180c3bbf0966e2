use crate::netmodel::{DmNetwork, MixedRadix};
use crate::{Error, Result};

const ROW_TOL: f64 = 1e-12;

/// Which factorization a coding distribution follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `p(q) Π p(x_k|q) p(ŷ_k|y_k,x_k,q)`
    Plain,
    /// `p(q) Π p(u_k,x_k|q) p(ŷ_k|y_k,u_k,q)`
    Superposition,
}

/// Per-node input layer of a coding distribution, indexed `[node][q][symbol]`.
#[derive(Debug, Clone, PartialEq)]
pub enum InputLayer {
    Plain(Vec<Vec<Vec<f64>>>),
    /// Joint pmf over `(u, x)` with `u` the slow digit: symbol `u·|𝒳_k| + x`.
    Superposition {
        u_sizes: Vec<usize>,
        joint: Vec<Vec<Vec<f64>>>,
    },
}

/// Time-sharing pmf, per-node input pmfs and compression channels.
///
/// Compression rows are indexed `[node][q][row][ŷ]` where
/// `row = y·|𝒳_k| + x` in plain mode and `row = y·|𝒰_k| + u` in
/// superposition mode.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingDistribution {
    q_pmf: Vec<f64>,
    layer: InputLayer,
    compression: Vec<Vec<Vec<Vec<f64>>>>,
    yhat_sizes: Vec<usize>,
}

fn check_pmf(p: &[f64], what: impl Fn() -> String) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Invalid(format!("{} is empty", what())));
    }
    if p.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::Invalid(format!(
            "{} has an entry outside [0,1]",
            what()
        )));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > ROW_TOL {
        return Err(Error::Normalization(format!("{} sums to {s}", what())));
    }
    Ok(())
}

impl CodingDistribution {
    pub fn new(
        q_pmf: Vec<f64>,
        layer: InputLayer,
        compression: Vec<Vec<Vec<Vec<f64>>>>,
        yhat_sizes: Vec<usize>,
    ) -> Result<Self> {
        check_pmf(&q_pmf, || "time-sharing pmf".into())?;
        let nq = q_pmf.len();
        let n = yhat_sizes.len();
        let inputs = match &layer {
            InputLayer::Plain(p) => p,
            InputLayer::Superposition { u_sizes, joint } => {
                if u_sizes.len() != n || u_sizes.iter().any(|&s| s == 0) {
                    return Err(Error::Invalid(
                        "one nonzero auxiliary alphabet size per node is required".into(),
                    ));
                }
                joint
            }
        };
        if inputs.len() != n || compression.len() != n {
            return Err(Error::Invalid(format!(
                "expected {n} nodes in inputs and compression, got {} and {}",
                inputs.len(),
                compression.len()
            )));
        }
        if yhat_sizes.iter().any(|&s| s == 0) {
            return Err(Error::Invalid(
                "compression alphabets must be nonempty".into(),
            ));
        }
        for k in 0..n {
            if inputs[k].len() != nq || compression[k].len() != nq {
                return Err(Error::Invalid(format!(
                    "node {} must provide one pmf per time-sharing value",
                    k + 1
                )));
            }
            for q in 0..nq {
                check_pmf(&inputs[k][q], || {
                    format!("input pmf of node {} at q={q}", k + 1)
                })?;
                for (r, row) in compression[k][q].iter().enumerate() {
                    if row.len() != yhat_sizes[k] {
                        return Err(Error::Invalid(format!(
                            "compression row {r} of node {} at q={q} has {} entries, expected {}",
                            k + 1,
                            row.len(),
                            yhat_sizes[k]
                        )));
                    }
                    check_pmf(row, || {
                        format!("compression row {r} of node {} at q={q}", k + 1)
                    })?;
                }
            }
        }
        Ok(CodingDistribution {
            q_pmf,
            layer,
            compression,
            yhat_sizes,
        })
    }

    /// Uniform independent inputs with `Ŷ_k = Y_k` and no time sharing.
    pub fn uniform_identity(net: &DmNetwork) -> Self {
        let inputs = ProductInput::uniform(net.x_sizes());
        CodingDistribution::with_identity_compression(net, &inputs)
    }

    /// Given product inputs with `Ŷ_k = Y_k`.
    pub fn with_identity_compression(net: &DmNetwork, inputs: &ProductInput) -> Self {
        let nq = inputs.q_pmf.len();
        let compression = (0..net.n_nodes())
            .map(|k| {
                let (ny, nx) = (net.y_sizes()[k], net.x_sizes()[k]);
                let rows: Vec<Vec<f64>> = (0..ny * nx)
                    .map(|r| {
                        let mut row = vec![0.0; ny];
                        row[r / nx] = 1.0;
                        row
                    })
                    .collect();
                vec![rows; nq]
            })
            .collect();
        CodingDistribution {
            q_pmf: inputs.q_pmf.clone(),
            layer: InputLayer::Plain(inputs.marginals.clone()),
            compression,
            yhat_sizes: net.y_sizes().to_vec(),
        }
    }

    /// Given product inputs with every `Ŷ_k` constant.
    pub fn with_constant_compression(net: &DmNetwork, inputs: &ProductInput) -> Self {
        let nq = inputs.q_pmf.len();
        let compression = (0..net.n_nodes())
            .map(|k| vec![vec![vec![1.0]; net.y_sizes()[k] * net.x_sizes()[k]]; nq])
            .collect();
        CodingDistribution {
            q_pmf: inputs.q_pmf.clone(),
            layer: InputLayer::Plain(inputs.marginals.clone()),
            compression,
            yhat_sizes: vec![1; net.n_nodes()],
        }
    }

    /// Superposition-mode copy of a plain distribution with `U_k = X_k`.
    pub fn lift_to_superposition(&self) -> Result<Self> {
        let InputLayer::Plain(marginals) = &self.layer else {
            return Err(Error::Usage(
                "distribution is already in superposition mode".into(),
            ));
        };
        let n = marginals.len();
        let x_sizes: Vec<usize> = marginals.iter().map(|m| m[0].len()).collect();
        let joint = (0..n)
            .map(|k| {
                marginals[k]
                    .iter()
                    .map(|pmf| {
                        let nx = x_sizes[k];
                        let mut j = vec![0.0; nx * nx];
                        for (x, p) in pmf.iter().enumerate() {
                            j[x * nx + x] = *p;
                        }
                        j
                    })
                    .collect()
            })
            .collect();
        // rows are (y, x) in both modes, so compression carries over unchanged
        CodingDistribution::new(
            self.q_pmf.clone(),
            InputLayer::Superposition {
                u_sizes: x_sizes,
                joint,
            },
            self.compression.clone(),
            self.yhat_sizes.clone(),
        )
    }

    pub fn mode(&self) -> Mode {
        match self.layer {
            InputLayer::Plain(_) => Mode::Plain,
            InputLayer::Superposition { .. } => Mode::Superposition,
        }
    }

    pub fn q_pmf(&self) -> &[f64] {
        &self.q_pmf
    }

    pub fn layer(&self) -> &InputLayer {
        &self.layer
    }

    pub fn yhat_sizes(&self) -> &[usize] {
        &self.yhat_sizes
    }

    pub fn compression(&self) -> &[Vec<Vec<Vec<f64>>>] {
        &self.compression
    }

    pub fn n_nodes(&self) -> usize {
        self.yhat_sizes.len()
    }

    /// Probability of input-layer symbol `symbol` at node `k` given `q`.
    pub(crate) fn input_prob(&self, k: usize, q: usize, symbol: usize) -> f64 {
        match &self.layer {
            InputLayer::Plain(p) => p[k][q][symbol],
            InputLayer::Superposition { joint, .. } => joint[k][q][symbol],
        }
    }

    /// `p(ŷ_k | y_k, cond, q)` where `cond` is `x_k` (plain) or `u_k`.
    pub(crate) fn compression_prob(
        &self,
        k: usize,
        q: usize,
        y: usize,
        cond: usize,
        yhat: usize,
    ) -> f64 {
        self.compression[k][q][y * self.cond_size(k) + cond][yhat]
    }

    /// Alphabet size of the variable compression rows are conditioned on
    /// besides `y_k`.
    fn cond_size(&self, k: usize) -> usize {
        match &self.layer {
            InputLayer::Plain(p) => p[k][0].len(),
            InputLayer::Superposition { u_sizes, .. } => u_sizes[k],
        }
    }

    /// Check alphabet compatibility with a network.
    pub fn check_against(&self, net: &DmNetwork) -> Result<()> {
        let n = net.n_nodes();
        if self.n_nodes() != n {
            return Err(Error::Invalid(format!(
                "distribution describes {} nodes, network has {n}",
                self.n_nodes()
            )));
        }
        for k in 0..n {
            let (nx, ny) = (net.x_sizes()[k], net.y_sizes()[k]);
            let (layer_len, cond) = match &self.layer {
                InputLayer::Plain(_) => (nx, nx),
                InputLayer::Superposition { u_sizes, .. } => (u_sizes[k] * nx, u_sizes[k]),
            };
            for q in 0..self.q_pmf.len() {
                let got = match &self.layer {
                    InputLayer::Plain(p) => p[k][q].len(),
                    InputLayer::Superposition { joint, .. } => joint[k][q].len(),
                };
                if got != layer_len {
                    return Err(Error::Invalid(format!(
                        "input pmf of node {} has {got} entries, expected {layer_len}",
                        k + 1
                    )));
                }
                if self.compression[k][q].len() != ny * cond {
                    return Err(Error::Invalid(format!(
                        "compression of node {} has {} rows, expected {}",
                        k + 1,
                        self.compression[k][q].len(),
                        ny * cond
                    )));
                }
            }
        }
        Ok(())
    }

    /// Product input pmf for a plain distribution; `None` in superposition mode.
    pub fn product_input(&self) -> Option<ProductInput> {
        match &self.layer {
            InputLayer::Plain(m) => Some(ProductInput {
                q_pmf: self.q_pmf.clone(),
                marginals: m.clone(),
            }),
            InputLayer::Superposition { .. } => None,
        }
    }
}

/// Independent inputs given a time-sharing variable: `p(q) Π_k p(x_k|q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductInput {
    pub q_pmf: Vec<f64>,
    /// `[node][q][x]`
    pub marginals: Vec<Vec<Vec<f64>>>,
}

impl ProductInput {
    pub fn uniform(x_sizes: &[usize]) -> Self {
        ProductInput {
            q_pmf: vec![1.0],
            marginals: x_sizes
                .iter()
                .map(|&s| vec![vec![1.0 / s as f64; s]])
                .collect(),
        }
    }

    pub fn validate(&self, x_sizes: &[usize]) -> Result<()> {
        check_pmf(&self.q_pmf, || "time-sharing pmf".into())?;
        if self.marginals.len() != x_sizes.len() {
            return Err(Error::Invalid(
                "one input pmf list per node is required".into(),
            ));
        }
        for (k, per_q) in self.marginals.iter().enumerate() {
            if per_q.len() != self.q_pmf.len() {
                return Err(Error::Invalid(format!(
                    "node {} must provide one pmf per time-sharing value",
                    k + 1
                )));
            }
            for (q, pmf) in per_q.iter().enumerate() {
                if pmf.len() != x_sizes[k] {
                    return Err(Error::Invalid(format!(
                        "input pmf of node {} has the wrong length",
                        k + 1
                    )));
                }
                check_pmf(pmf, || format!("input pmf of node {} at q={q}", k + 1))?;
            }
        }
        Ok(())
    }

    /// `p(x^N) = Σ_q p(q) Π_k p(x_k|q)`, mixed-radix with the last node fastest.
    pub fn joint_pmf(&self, x_sizes: &[usize]) -> Result<Vec<f64>> {
        self.validate(x_sizes)?;
        let xr = MixedRadix::new(x_sizes)
            .ok_or_else(|| Error::Invalid("input alphabet too large".into()))?;
        let mut out = vec![0.0; xr.total()];
        let mut x = vec![0usize; x_sizes.len()];
        for (q, pq) in self.q_pmf.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                xr.decode(i, &mut x);
                *o += pq
                    * x.iter()
                        .enumerate()
                        .map(|(k, &xk)| self.marginals[k][q][xk])
                        .product::<f64>();
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::NodeSet;

    #[test]
    fn rejects_bad_rows() {
        let err = CodingDistribution::new(
            vec![1.0],
            InputLayer::Plain(vec![vec![vec![0.5, 0.6]]]),
            vec![vec![vec![vec![1.0]; 2]]],
            vec![1],
        );
        assert!(matches!(err, Err(Error::Normalization(_))));
    }

    #[test]
    fn product_joint_pmf() {
        let p = ProductInput {
            q_pmf: vec![0.5, 0.5],
            marginals: vec![
                vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            ],
        };
        assert_eq!(p.joint_pmf(&[2, 2]).unwrap(), vec![0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn identity_compression_rows() {
        let net = DmNetwork::deterministic(vec![2, 3], vec![2, 2], vec![NodeSet::EMPTY; 2], |x| {
            vec![x[1] % 2, x[0]]
        })
        .unwrap();
        let d = CodingDistribution::uniform_identity(&net);
        d.check_against(&net).unwrap();
        // node 1: y=1, x=2 maps to yhat=1
        assert_eq!(d.compression_prob(1, 0, 1, 2, 1), 1.0);
        assert_eq!(d.compression_prob(1, 0, 1, 2, 0), 0.0);
    }
}
