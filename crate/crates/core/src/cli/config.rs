//! JSON network and distribution files.
//!
//! Node labels are one-based. Tensors over several nodes are flattened
//! mixed-radix with the rightmost (highest-numbered) node varying fastest.
//! Probability rows that miss 1 by at most [`ROW_RENORM_TOL`] are rescaled;
//! anything further off is rejected with the row's index.

use std::path::Path;

use serde::Deserialize;

use crate::dm_bounds::{DeterministicNetwork, ErasureNetwork, NoiselessEdge, NoiselessNetwork};
use crate::infocalc::{CodingDistribution, InputLayer, ProductInput};
use crate::{DestSelector, DmNetwork, Error, GaussianNetwork, NodeSet, Result};

pub const ROW_RENORM_TOL: f64 = 1e-9;

/// Destination sets: one multicast set, or one set per node.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Dests {
    Multicast(Vec<usize>),
    PerNode(Vec<Vec<usize>>),
}

impl Dests {
    fn check_len(&self, n: usize) -> Result<()> {
        match self {
            Dests::PerNode(v) if v.len() != n => Err(Error::Invalid(format!(
                "\"dests\" lists {} per-node sets for a {n}-node network",
                v.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Per-node sets; a multicast set is shared by every node.
    pub fn per_node(&self, n: usize) -> Result<Vec<NodeSet>> {
        self.check_len(n)?;
        let all = NodeSet::full(n);
        let sets = match self {
            Dests::Multicast(d) => vec![NodeSet::from_labels(d.iter().copied())?; n],
            Dests::PerNode(v) => v
                .iter()
                .map(|d| NodeSet::from_labels(d.iter().copied()))
                .collect::<Result<Vec<_>>>()?,
        };
        if sets.iter().any(|s| !s.is_subset(all)) {
            return Err(Error::Invalid(format!(
                "\"dests\" names a node outside 1..={n}"
            )));
        }
        Ok(sets)
    }

    /// The multicast set, or the union of per-node sets.
    pub fn multicast(&self, n: usize) -> Result<NodeSet> {
        Ok(self
            .per_node(n)?
            .into_iter()
            .fold(NodeSet::EMPTY, NodeSet::union))
    }

    pub fn selector(&self, n: usize) -> Result<DestSelector> {
        Ok(match self {
            Dests::Multicast(_) => DestSelector::Multicast(self.multicast(n)?),
            Dests::PerNode(_) => DestSelector::PerCut(self.per_node(n)?),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: usize,
    pub to: usize,
    pub capacity: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NetworkFile {
    Gaussian {
        /// `gains[j][k]`: sender `j+1` into receiver `k+1`.
        gains: Vec<Vec<f64>>,
        power: f64,
        dests: Dests,
    },
    Dm {
        x_sizes: Vec<usize>,
        y_sizes: Vec<usize>,
        /// One row per input tuple, each a pmf over output tuples.
        channel: Vec<Vec<f64>>,
        dests: Dests,
    },
    Noiseless {
        n_nodes: usize,
        edges: Vec<EdgeSpec>,
        dests: Dests,
    },
    Erasure {
        x_sizes: Vec<usize>,
        /// Independent link erasure probabilities `erasure[j][k]`.
        #[serde(default)]
        erasure: Option<Vec<Vec<f64>>>,
        /// `all_erased[j][mask]`: probability that sender `j+1` is erased at
        /// every node of the receiver set with bitmask `mask`.
        #[serde(default)]
        all_erased: Option<Vec<Vec<f64>>>,
        dests: Dests,
    },
    Deterministic {
        x_sizes: Vec<usize>,
        #[serde(default)]
        y_sizes: Option<Vec<usize>>,
        /// `tables[k][x_index]` is node `k+1`'s output.
        #[serde(default)]
        tables: Option<Vec<Vec<usize>>>,
        /// Binary linear network, `gf2[j][k] ∈ {0,1}`.
        #[serde(default)]
        gf2: Option<Vec<Vec<u8>>>,
        dests: Dests,
    },
}

/// A parsed network of any kind.
#[derive(Debug, Clone)]
pub enum Network {
    Gaussian(GaussianNetwork, Dests),
    Dm(DmNetwork, Dests),
    Noiseless(NoiselessNetwork, Dests),
    Erasure(ErasureNetwork, Dests),
    Deterministic(DeterministicNetwork, Dests),
}

impl Network {
    pub fn kind(&self) -> &'static str {
        match self {
            Network::Gaussian(..) => "gaussian",
            Network::Dm(..) => "dm",
            Network::Noiseless(..) => "noiseless",
            Network::Erasure(..) => "erasure",
            Network::Deterministic(..) => "deterministic",
        }
    }

    pub fn n_nodes(&self) -> usize {
        match self {
            Network::Gaussian(g, _) => g.n_nodes(),
            Network::Dm(d, _) => d.n_nodes(),
            Network::Noiseless(g, _) => g.n_nodes(),
            Network::Erasure(e, _) => e.n_nodes(),
            Network::Deterministic(d, _) => d.n_nodes(),
        }
    }

    pub fn dests(&self) -> &Dests {
        match self {
            Network::Gaussian(_, d)
            | Network::Dm(_, d)
            | Network::Noiseless(_, d)
            | Network::Erasure(_, d)
            | Network::Deterministic(_, d) => d,
        }
    }

    /// Dense DM form, where one exists.
    pub fn to_dm(&self) -> Result<DmNetwork> {
        let n = self.n_nodes();
        match self {
            Network::Dm(d, _) => Ok(d.clone()),
            Network::Noiseless(g, d) => g.to_dm(d.per_node(n)?),
            Network::Deterministic(g, _) => g.to_dm(),
            other => Err(Error::Usage(format!(
                "a {} network has no discrete memoryless form",
                other.kind()
            ))),
        }
    }
}

/// Rescale a row that sums to 1 within tolerance; reject otherwise.
pub fn normalize_row(row: &mut [f64], what: &dyn Fn() -> String) -> Result<()> {
    if row.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
        return Err(Error::Invalid(format!(
            "{} has a negative or non-finite entry",
            what()
        )));
    }
    let s: f64 = row.iter().sum();
    if (s - 1.0).abs() > ROW_RENORM_TOL {
        return Err(Error::Normalization(format!("{} sums to {s}", what())));
    }
    row.iter_mut().for_each(|p| *p /= s);
    Ok(())
}

fn product(sizes: &[usize]) -> Result<usize> {
    sizes
        .iter()
        .try_fold(1usize, |a, &b| a.checked_mul(b))
        .ok_or_else(|| Error::Invalid("alphabet product overflows".into()))
}

pub fn parse_network(text: &str) -> Result<Network> {
    let file: NetworkFile =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("network file: {e}")))?;
    Ok(match file {
        NetworkFile::Gaussian {
            gains,
            power,
            dests,
        } => {
            let n = gains.len();
            let net = GaussianNetwork::new(gains, power, dests.per_node(n)?)?;
            Network::Gaussian(net, dests)
        }
        NetworkFile::Dm {
            x_sizes,
            y_sizes,
            mut channel,
            dests,
        } => {
            let n = x_sizes.len();
            let (nx, ny) = (product(&x_sizes)?, product(&y_sizes)?);
            if channel.len() != nx {
                return Err(Error::Invalid(format!(
                    "channel has {} rows, expected {nx}",
                    channel.len()
                )));
            }
            for (i, row) in channel.iter_mut().enumerate() {
                if row.len() != ny {
                    return Err(Error::Invalid(format!(
                        "channel row {i} has {} entries, expected {ny}",
                        row.len()
                    )));
                }
                normalize_row(row, &|| format!("channel row {i}"))?;
            }
            let net = DmNetwork::new(x_sizes, y_sizes, channel.concat(), dests.per_node(n)?)?;
            Network::Dm(net, dests)
        }
        NetworkFile::Noiseless {
            n_nodes,
            edges,
            dests,
        } => {
            let mut out = Vec::with_capacity(edges.len());
            for (i, e) in edges.iter().enumerate() {
                if e.from == 0 || e.to == 0 {
                    return Err(Error::Invalid(format!("edge {i}: node labels start at 1")));
                }
                out.push(NoiselessEdge {
                    from: e.from - 1,
                    to: e.to - 1,
                    capacity: e.capacity,
                });
            }
            let net = NoiselessNetwork::new(n_nodes, out)?;
            dests.per_node(n_nodes)?;
            Network::Noiseless(net, dests)
        }
        NetworkFile::Erasure {
            x_sizes,
            erasure,
            all_erased,
            dests,
        } => {
            let n = x_sizes.len();
            let net = match (erasure, all_erased) {
                (Some(e), None) => ErasureNetwork::independent(x_sizes, &e)?,
                (None, Some(t)) => ErasureNetwork::from_table(x_sizes, t)?,
                _ => {
                    return Err(Error::Invalid(
                        "erasure network needs exactly one of \"erasure\" or \"all_erased\"".into(),
                    ))
                }
            };
            dests.per_node(n)?;
            Network::Erasure(net, dests)
        }
        NetworkFile::Deterministic {
            x_sizes,
            y_sizes,
            tables,
            gf2,
            dests,
        } => {
            let n = x_sizes.len();
            let per_node = dests.per_node(n)?;
            let net = match (tables, gf2) {
                (Some(t), None) => {
                    let y = y_sizes
                        .ok_or_else(|| Error::Invalid("lookup tables need \"y_sizes\"".into()))?;
                    DeterministicNetwork::new(x_sizes, y, t, per_node)?
                }
                (None, Some(g)) => {
                    if x_sizes.iter().any(|&s| s != 2) || g.len() != n {
                        return Err(Error::Invalid(
                            "a GF(2) network has binary inputs and an N×N matrix".into(),
                        ));
                    }
                    DeterministicNetwork::linear_gf2(&g, per_node)?
                }
                _ => {
                    return Err(Error::Invalid(
                        "deterministic network needs exactly one of \"tables\" or \"gf2\"".into(),
                    ))
                }
            };
            Network::Deterministic(net, dests)
        }
    })
}

pub fn load_network(path: &Path) -> Result<Network> {
    parse_network(&read(path)?)
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum InputsSpec {
    Shortcut(String),
    Plain(Vec<Vec<Vec<f64>>>),
    Superposition {
        u_sizes: Vec<usize>,
        joint: Vec<Vec<Vec<f64>>>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum CompressionSpec {
    Shortcut(String),
    Rows(Vec<Vec<Vec<Vec<f64>>>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    #[serde(default)]
    q_pmf: Option<Vec<f64>>,
    #[serde(default)]
    mode: Option<String>,
    inputs: InputsSpec,
    compression: CompressionSpec,
    #[serde(default)]
    input_pmf: Option<Vec<f64>>,
    #[serde(default)]
    input_family: Option<Vec<Vec<f64>>>,
}

/// A coding distribution plus optional correlated input pmfs for the cutset bound.
#[derive(Debug, Clone)]
pub struct Distribution {
    pub coding: CodingDistribution,
    /// Joint pmf family over `X^N`; empty means the coding distribution's
    /// product input.
    pub input_family: Vec<Vec<f64>>,
}

impl Distribution {
    /// Uniform inputs, `Ŷ = Y`, no time sharing.
    pub fn default_for(net: &DmNetwork) -> Self {
        Distribution {
            coding: CodingDistribution::uniform_identity(net),
            input_family: Vec::new(),
        }
    }

    /// Input pmfs for the cutset bound.
    pub fn cutset_inputs(&self, net: &DmNetwork) -> Result<Vec<Vec<f64>>> {
        if !self.input_family.is_empty() {
            return Ok(self.input_family.clone());
        }
        let product = self.coding.product_input().ok_or_else(|| {
            Error::Usage(
                "the cutset bound needs plain-mode inputs or an explicit \"input_pmf\"".into(),
            )
        })?;
        Ok(vec![product.joint_pmf(net.x_sizes())?])
    }
}

fn normalize_all(rows: &mut [Vec<f64>], what: &str) -> Result<()> {
    for (i, r) in rows.iter_mut().enumerate() {
        normalize_row(r, &|| format!("{what} row {i}"))?;
    }
    Ok(())
}

/// Parse a distribution file against the network it will be used with.
pub fn parse_distribution(text: &str, net: &DmNetwork) -> Result<Distribution> {
    let file: DistributionFile = serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("distribution file: {e}")))?;
    let n = net.n_nodes();
    let mut q_pmf = file.q_pmf.unwrap_or_else(|| vec![1.0]);
    normalize_row(&mut q_pmf, &|| "q_pmf".into())?;
    let nq = q_pmf.len();
    let superposition = match file.mode.as_deref() {
        None | Some("plain") => false,
        Some("superposition") => true,
        Some(other) => {
            return Err(Error::Invalid(format!(
                "unknown mode \"{other}\" (plain or superposition)"
            )))
        }
    };

    let layer = match file.inputs {
        InputsSpec::Shortcut(s) if s == "uniform" => {
            let u = ProductInput::uniform(net.x_sizes());
            let marginals = u.marginals.iter().map(|m| vec![m[0].clone(); nq]).collect();
            InputLayer::Plain(marginals)
        }
        InputsSpec::Shortcut(s) => {
            return Err(Error::Invalid(format!(
                "unknown inputs shortcut \"{s}\" (uniform)"
            )))
        }
        InputsSpec::Plain(mut m) => {
            for (k, per_q) in m.iter_mut().enumerate() {
                normalize_all(per_q, &format!("inputs of node {}", k + 1))?;
            }
            InputLayer::Plain(m)
        }
        InputsSpec::Superposition { u_sizes, mut joint } => {
            if !superposition {
                return Err(Error::Invalid(
                    "auxiliary inputs need \"mode\": \"superposition\"".into(),
                ));
            }
            for (k, per_q) in joint.iter_mut().enumerate() {
                normalize_all(per_q, &format!("joint inputs of node {}", k + 1))?;
            }
            InputLayer::Superposition { u_sizes, joint }
        }
    };
    // superposition with plain inputs means U_k = X_k
    let (layer, lift) = match (layer, superposition) {
        (InputLayer::Plain(m), true) => (InputLayer::Plain(m), true),
        (l, _) => (l, false),
    };
    let cond_sizes: Vec<usize> = match &layer {
        InputLayer::Plain(_) => net.x_sizes().to_vec(),
        InputLayer::Superposition { u_sizes, .. } => u_sizes.clone(),
    };
    if cond_sizes.len() != n {
        return Err(Error::Invalid(format!(
            "inputs describe {} nodes, network has {n}",
            cond_sizes.len()
        )));
    }

    let (compression, yhat_sizes) = match file.compression {
        CompressionSpec::Shortcut(s) if s == "identity" => {
            let rows = (0..n)
                .map(|k| {
                    let (ny, nc) = (net.y_sizes()[k], cond_sizes[k]);
                    let r: Vec<Vec<f64>> = (0..ny * nc)
                        .map(|i| {
                            let mut row = vec![0.0; ny];
                            row[i / nc] = 1.0;
                            row
                        })
                        .collect();
                    vec![r; nq]
                })
                .collect();
            (rows, net.y_sizes().to_vec())
        }
        CompressionSpec::Shortcut(s) if s == "constant" => {
            let rows = (0..n)
                .map(|k| vec![vec![vec![1.0]; net.y_sizes()[k] * cond_sizes[k]]; nq])
                .collect();
            (rows, vec![1; n])
        }
        CompressionSpec::Shortcut(s) => {
            return Err(Error::Invalid(format!(
                "unknown compression shortcut \"{s}\" (identity or constant)"
            )))
        }
        CompressionSpec::Rows(mut c) => {
            let mut sizes = Vec::with_capacity(c.len());
            for (k, per_q) in c.iter_mut().enumerate() {
                let size = per_q.first().and_then(|r| r.first()).map_or(0, Vec::len);
                for (q, rows) in per_q.iter_mut().enumerate() {
                    normalize_all(rows, &format!("compression of node {} at q={q}", k + 1))?;
                }
                sizes.push(size);
            }
            (c, sizes)
        }
    };

    let coding = CodingDistribution::new(q_pmf, layer, compression, yhat_sizes)?;
    let coding = if lift {
        coding.lift_to_superposition()?
    } else {
        coding
    };
    coding.check_against(net)?;

    let mut input_family = match (file.input_pmf, file.input_family) {
        (Some(p), None) => vec![p],
        (None, Some(f)) => f,
        (None, None) => Vec::new(),
        (Some(_), Some(_)) => {
            return Err(Error::Invalid(
                "give \"input_pmf\" or \"input_family\", not both".into(),
            ))
        }
    };
    for (i, p) in input_family.iter_mut().enumerate() {
        normalize_row(p, &|| format!("input pmf {i}"))?;
    }
    Ok(Distribution {
        coding,
        input_family,
    })
}

pub fn load_distribution(path: &Path, net: &DmNetwork) -> Result<Distribution> {
    parse_distribution(&read(path)?, net)
}

#[cfg(test)]
mod tests {
    use super::*;

    const RELAY: &str = r#"{
        "kind": "dm",
        "x_sizes": [2, 2, 1],
        "y_sizes": [1, 2, 2],
        "channel": [[0.9, 0.1, 0, 0], [0, 0, 0.1, 0.9], [0.45, 0.45, 0.05, 0.05], [0.05, 0.05, 0.45, 0.45]],
        "dests": [3]
    }"#;

    #[test]
    fn parses_dm_network() {
        let net = parse_network(RELAY).unwrap();
        assert_eq!(net.kind(), "dm");
        assert_eq!(net.dests().multicast(3).unwrap(), NodeSet::singleton(2));
        let dm = net.to_dm().unwrap();
        assert_eq!(dm.channel_row(1), &[0.0, 0.0, 0.1, 0.9]);
    }

    #[test]
    fn renormalizes_within_tolerance_and_names_bad_rows() {
        let near = RELAY.replace("[0.9, 0.1, 0, 0]", "[0.9000000001, 0.1, 0, 0]");
        assert!(parse_network(&near).is_ok());
        let bad = RELAY.replace("[0, 0, 0.1, 0.9]", "[0, 0, 0.2, 0.9]");
        let err = parse_network(&bad).unwrap_err().to_string();
        assert!(err.contains("channel row 1"), "{err}");
    }

    #[test]
    fn per_node_dests() {
        let d: Dests = serde_json::from_str("[[4], [5], [], [], []]").unwrap();
        assert_eq!(d.per_node(5).unwrap()[1], NodeSet::singleton(4));
        assert!(matches!(d.selector(5).unwrap(), DestSelector::PerCut(_)));
        assert!(d.per_node(4).is_err());
        let m: Dests = serde_json::from_str("[2, 3]").unwrap();
        assert_eq!(m.multicast(3).unwrap(), NodeSet::from_mask(0b110));
    }

    #[test]
    fn distribution_shortcuts() {
        let dm = parse_network(RELAY).unwrap().to_dm().unwrap();
        let d =
            parse_distribution(r#"{"inputs": "uniform", "compression": "identity"}"#, &dm).unwrap();
        assert_eq!(d.coding, CodingDistribution::uniform_identity(&dm));
        let c =
            parse_distribution(r#"{"inputs": "uniform", "compression": "constant"}"#, &dm).unwrap();
        assert_eq!(c.coding.yhat_sizes(), &[1, 1, 1]);
        let s = parse_distribution(
            r#"{"mode": "superposition", "inputs": "uniform", "compression": "identity"}"#,
            &dm,
        )
        .unwrap();
        assert_eq!(s.coding.mode(), crate::infocalc::Mode::Superposition);
        assert!(
            parse_distribution(r#"{"inputs": "gaussian", "compression": "identity"}"#, &dm)
                .is_err()
        );
    }

    #[test]
    fn explicit_distribution_rows_checked() {
        let dm = parse_network(RELAY).unwrap().to_dm().unwrap();
        let text = r#"{
            "inputs": [[[0.3, 0.7]], [[0.5, 0.5]], [[1.0]]],
            "compression": [
                [[[1.0], [1.0]]],
                [[[1, 0], [1, 0], [0.2, 0.8], [0, 1]]],
                [[[1.0], [1.0]]]
            ]
        }"#;
        let d = parse_distribution(text, &dm).unwrap();
        assert_eq!(d.coding.yhat_sizes(), &[1, 2, 1]);
        let bad = text.replace("[0.2, 0.8]", "[0.2, 0.7]");
        let err = parse_distribution(&bad, &dm).unwrap_err().to_string();
        assert!(err.contains("compression of node 2 at q=0 row 2"), "{err}");
    }

    #[test]
    fn other_kinds() {
        let g = parse_network(
            r#"{"kind": "gaussian", "gains": [[0, 1], [1, 0]], "power": 2, "dests": [1, 2]}"#,
        )
        .unwrap();
        assert_eq!(g.n_nodes(), 2);
        assert!(g.to_dm().is_err());
        let nl = parse_network(
            r#"{"kind": "noiseless", "n_nodes": 3, "edges": [{"from": 1, "to": 2, "capacity": 1}], "dests": [3]}"#,
        )
        .unwrap();
        assert_eq!(nl.to_dm().unwrap().x_sizes(), &[2, 1, 1]);
        let e = parse_network(r#"{"kind": "erasure", "x_sizes": [2, 1], "erasure": [[0, 0.5], [0, 0]], "dests": [2]}"#)
            .unwrap();
        assert_eq!(e.kind(), "erasure");
        let det = parse_network(r#"{"kind": "deterministic", "x_sizes": [2, 2], "gf2": [[0, 1], [1, 0]], "dests": [1, 2]}"#)
            .unwrap();
        assert_eq!(det.to_dm().unwrap().y_sizes(), &[2, 2]);
        assert!(parse_network(r#"{"kind": "cloud"}"#).is_err());
    }
}
