use crate::infocalc::{assemble_joint, vars, CodingDistribution, Mode, Var};
use crate::{DmNetwork, Error, NodeSet, Result};

/// Slack allowed when comparing the two sides of a feasibility constraint.
pub const CF_FEASIBILITY_TOL: f64 = 1e-12;

/// One feasibility constraint of the pure compress-forward scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct CfConstraint {
    /// Relay subset `T ⊆ [2:N]`, nonempty.
    pub t: NodeSet,
    /// Zero-based destination index.
    pub d: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl CfConstraint {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + CF_FEASIBILITY_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CfExtension {
    pub feasible: bool,
    /// `min_d I(X₁; Ŷ₂^N, Y_d | X₂^N)`; meaningful only when `feasible`.
    pub r_star: f64,
    pub constraints: Vec<CfConstraint>,
}

/// Single-source (node 1) compress-forward rate without compression-index
/// decoding, together with its feasibility constraints
/// `I(Y(T); Ŷ(T) | X₂^N, Ŷ(Tᶜ), Y_d) + Σ_{k∈T} I(X₂^N; Ŷ_k | X_k) ≤ I(X(T); Y_d | X(Tᶜ), X_d)`
/// for every nonempty `T ⊆ [2:N]` (`Tᶜ = [2:N] \ T`) and every `d ∈ D`.
pub fn cf_extension_bound(
    net: &DmNetwork,
    dist: &CodingDistribution,
    d_set: NodeSet,
) -> Result<CfExtension> {
    let n = net.n_nodes();
    if n < 2 {
        return Err(Error::Invalid("need at least 2 nodes".into()));
    }
    let relays = NodeSet::full(n).without(0);
    if d_set.is_empty() || !d_set.is_subset(relays) {
        return Err(Error::Invalid(
            "destinations must be a nonempty subset of nodes 2..N".into(),
        ));
    }
    if dist.q_pmf().len() != 1 {
        return Err(Error::Invalid(
            "the compress-forward comparator takes no time sharing (|Q| = 1)".into(),
        ));
    }
    let joint = assemble_joint(net, dist, Mode::Plain)?;
    let x_rel = vars::x(relays);

    let mut r_star = f64::INFINITY;
    for d in d_set.iter() {
        let b = vars::join(&[&vars::yhat(relays), &[Var::Y(d)]]);
        r_star = r_star.min(joint.conditional_mi(&[Var::X(0)], &b, &x_rel)?);
    }

    let mut constraints = Vec::new();
    for t in relays.subsets().filter(|t| !t.is_empty()) {
        let tc = relays.difference(t);
        let mut side = 0.0;
        for k in t.iter() {
            let others: Vec<Var> = x_rel.iter().copied().filter(|v| *v != Var::X(k)).collect();
            side += joint.conditional_mi(&others, &[Var::Yhat(k)], &[Var::X(k)])?;
        }
        for d in d_set.iter() {
            let c = vars::join(&[&x_rel, &vars::yhat(tc), &[Var::Y(d)]]);
            // Y_d and X_d are conditioned on, so they drop from the left arguments
            let lhs = side + joint.conditional_mi(&vars::y(t.without(d)), &vars::yhat(t), &c)?;
            let rhs =
                joint.conditional_mi(&vars::x(t.without(d)), &[Var::Y(d)], &vars::x(tc.with(d)))?;
            constraints.push(CfConstraint { t, d, lhs, rhs });
        }
    }
    let feasible = constraints.iter().all(CfConstraint::holds);
    Ok(CfExtension {
        feasible,
        r_star,
        constraints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dm_bounds::{nnc_multicast_bound, single_source_value};
    use crate::infocalc::ProductInput;

    fn set(labels: &[usize]) -> NodeSet {
        NodeSet::from_labels(labels.iter().copied()).unwrap()
    }

    fn line_network() -> DmNetwork {
        DmNetwork::deterministic(
            vec![2, 2, 2, 1],
            vec![1, 2, 2, 2],
            vec![set(&[4]); 4],
            |x| vec![0, x[0], x[1], x[2]],
        )
        .unwrap()
    }

    #[test]
    fn constant_compression_is_feasible() {
        let net = line_network();
        let dist = CodingDistribution::with_constant_compression(
            &net,
            &ProductInput::uniform(net.x_sizes()),
        );
        let cf = cf_extension_bound(&net, &dist, set(&[4])).unwrap();
        assert!(cf.feasible);
        assert_eq!(cf.constraints.len(), 7);
        assert!(cf.constraints.iter().all(|c| c.lhs == 0.0));
        // X₁ reaches node 4 only through the relays
        assert_eq!(cf.r_star, 0.0);
    }

    #[test]
    fn informative_first_relay_is_infeasible_on_line() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        let cf = cf_extension_bound(&net, &dist, set(&[4])).unwrap();
        assert!(!cf.feasible);
        let c = cf.constraints.iter().find(|c| c.t == set(&[2])).unwrap();
        assert_eq!(c.rhs, 0.0);
        assert!(c.lhs > 0.5);
        // noisy network coding reaches capacity on the same distribution
        let nnc = nnc_multicast_bound(&net, &dist, set(&[4])).unwrap();
        assert_eq!(single_source_value(&nnc).unwrap(), 1.0);
    }

    #[test]
    fn rejects_time_sharing_and_bad_destinations() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        assert!(cf_extension_bound(&net, &dist, set(&[1])).is_err());
        assert!(cf_extension_bound(&net, &dist, NodeSet::EMPTY).is_err());
        let two_q = ProductInput {
            q_pmf: vec![0.5, 0.5],
            marginals: (0..4)
                .map(|k| vec![vec![1.0 / net.x_sizes()[k] as f64; net.x_sizes()[k]]; 2])
                .collect(),
        };
        let dist = CodingDistribution::with_identity_compression(&net, &two_q);
        assert!(cf_extension_bound(&net, &dist, set(&[4])).is_err());
    }
}
