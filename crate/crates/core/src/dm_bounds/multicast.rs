use crate::infocalc::{assemble_joint, vars, CodingDistribution, JointDistribution, Mode, Var};
use crate::netmodel::{enumerate_cutsets, region_from_report, DestSelector, Reduce};
use crate::{CutsetReport, DmNetwork, Error, NodeSet, ReportEntry, Result};

/// Noisy network coding constraint for cut `S` at destination `d`:
/// `I(X(S); Ŷ(Sᶜ), Y_d | X(Sᶜ), Q) − I(Y(S); Ŷ(S) | X^N, Ŷ(Sᶜ), Y_d, Q)`.
pub(crate) fn nnc_entry(
    joint: &JointDistribution,
    n: usize,
    s: NodeSet,
    d: usize,
) -> Result<ReportEntry> {
    let sc = s.complement(n);
    let all = NodeSet::full(n);
    let positive = joint.conditional_mi(
        &vars::x(s),
        &vars::join(&[&vars::yhat(sc), &[Var::Y(d)]]),
        &vars::join(&[&vars::x(sc), &[Var::Q]]),
    )?;
    let penalty = joint.conditional_mi(
        &vars::y(s),
        &vars::yhat(s),
        &vars::join(&[&vars::x(all), &vars::yhat(sc), &[Var::Y(d)], &[Var::Q]]),
    )?;
    Ok(ReportEntry::new(s, Some(d), positive, penalty))
}

fn evaluate(
    net: &DmNetwork,
    dist: &CodingDistribution,
    selector: DestSelector,
    name: &str,
) -> Result<CutsetReport> {
    let n = net.n_nodes();
    let cuts = enumerate_cutsets(n, &selector)?;
    let joint = assemble_joint(net, dist, Mode::Plain)?;
    let mut report = CutsetReport::new(name, n);
    for (s, eligible) in cuts {
        for d in eligible.iter() {
            report.entries.push(nnc_entry(&joint, n, s, d)?);
        }
    }
    Ok(report)
}

/// Multicast inner bound: every cut `S` with `Sᶜ ∩ D ≠ ∅`, every `d ∈ Sᶜ ∩ D`.
pub fn nnc_multicast_bound(
    net: &DmNetwork,
    dist: &CodingDistribution,
    d: NodeSet,
) -> Result<CutsetReport> {
    if d.is_empty() {
        return Err(Error::Invalid("multicast destination set is empty".into()));
    }
    evaluate(net, dist, DestSelector::Multicast(d), "thm1")
}

/// Inner bound with per-cut destinations `D(S) = ⋃_{k∈S} D_k`.
pub fn nnc_per_cut_bound(net: &DmNetwork, dist: &CodingDistribution) -> Result<CutsetReport> {
    evaluate(
        net,
        dist,
        DestSelector::PerCut(net.dests().to_vec()),
        "thm2",
    )
}

/// Compress–forward rate for the relay channel (node 1 source, node 2
/// relay, node 3 destination):
/// `min{ I(X₁; Ŷ₂, Y₃ | X₂), I(X₁, X₂; Y₃) − I(Y₂; Ŷ₂ | X₁, X₂, Y₃) }`,
/// conditioned on `Q` when time sharing is present.
pub fn relay_cf_emz(net: &DmNetwork, dist: &CodingDistribution) -> Result<f64> {
    if net.n_nodes() != 3 {
        return Err(Error::Invalid(format!(
            "relay channel needs 3 nodes, got {}",
            net.n_nodes()
        )));
    }
    if net.x_sizes()[2] != 1 || net.y_sizes()[0] != 1 {
        return Err(Error::Invalid(
            "relay channel model requires a silent destination (|X3| = 1) and a deaf source (|Y1| = 1)".into(),
        ));
    }
    let joint = assemble_joint(net, dist, Mode::Plain)?;
    let (x1, x2, y2, y3, yh2) = (Var::X(0), Var::X(1), Var::Y(1), Var::Y(2), Var::Yhat(1));
    let direct = joint.conditional_mi(&[x1], &[yh2, y3], &[x2, Var::Q])?;
    let mac = joint.conditional_mi(&[x1, x2], &[y3], &[Var::Q])?;
    let penalty = joint.conditional_mi(&[y2], &[yh2], &[x1, x2, y3, Var::Q])?;
    Ok(direct.min(mac - penalty))
}

/// Largest rate of node 1 alone (all other rates zero) permitted by a report.
pub fn single_source_value(report: &CutsetReport) -> Result<f64> {
    let region = region_from_report(report, Reduce::MinOverDestinations);
    let mut w = vec![0.0; report.n_nodes];
    w[0] = 1.0;
    region.max_weighted_sum(&w, NodeSet::singleton(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infocalc::ProductInput;

    fn set(labels: &[usize]) -> NodeSet {
        NodeSet::from_labels(labels.iter().copied()).unwrap()
    }

    fn line_network() -> DmNetwork {
        // Y2 = X1, Y3 = X2, Y4 = X3, all binary; X4 and Y1 trivial
        DmNetwork::deterministic(
            vec![2, 2, 2, 1],
            vec![1, 2, 2, 2],
            vec![set(&[4]); 4],
            |x| vec![0, x[0], x[1], x[2]],
        )
        .unwrap()
    }

    #[test]
    fn line_network_capacity_is_one() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        let report = nnc_multicast_bound(&net, &dist, set(&[4])).unwrap();
        assert_eq!(single_source_value(&report).unwrap(), 1.0);
        for cut in [set(&[1]), set(&[1, 2]), set(&[1, 2, 3])] {
            assert!((report.entry(cut, 3).unwrap().raw - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_compression_leaves_direct_term() {
        let net = line_network();
        let dist = CodingDistribution::with_constant_compression(
            &net,
            &ProductInput::uniform(net.x_sizes()),
        );
        let report = nnc_multicast_bound(&net, &dist, set(&[4])).unwrap();
        // Sᶜ = {4}: raw = I(X1,X2,X3; Y4 | X4) = 1, no penalty
        let e = report.entry(set(&[1, 2, 3]), 3).unwrap();
        assert!((e.raw - 1.0).abs() < 1e-12);
        assert_eq!(e.penalty_term, 0.0);
        // cut {1}: nothing reaches node 4 without the relays' descriptions
        assert_eq!(report.entry(set(&[1]), 3).unwrap().raw, 0.0);
    }

    #[test]
    fn empty_destination_set_rejected() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        assert!(nnc_multicast_bound(&net, &dist, NodeSet::EMPTY).is_err());
    }

    #[test]
    fn per_cut_equals_multicast_for_common_destinations() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        let t1 = nnc_multicast_bound(&net, &dist, set(&[4])).unwrap();
        let t2 = nnc_per_cut_bound(&net, &dist).unwrap();
        assert_eq!(t1.entries, t2.entries);
    }

    #[test]
    fn relay_that_only_hears_itself() {
        // Y2 = X2 carries nothing about X1 and is known given X2; Y3 = X1 AND X2
        let net = DmNetwork::deterministic(vec![2, 2, 1], vec![1, 2, 2], vec![set(&[3]); 3], |x| {
            vec![0, x[1], x[0] & x[1]]
        })
        .unwrap();
        let uniform = ProductInput::uniform(net.x_sizes());
        let expected = 0.5f64.min(crate::infocalc::binary_entropy(0.25));
        for dist in [
            CodingDistribution::with_identity_compression(&net, &uniform),
            CodingDistribution::with_constant_compression(&net, &uniform),
        ] {
            let joint = assemble_joint(&net, &dist, Mode::Plain).unwrap();
            let a = joint
                .conditional_mi(&[Var::X(0)], &[Var::Y(2)], &[Var::X(1)])
                .unwrap();
            let b = joint
                .conditional_mi(&[Var::X(0), Var::X(1)], &[Var::Y(2)], &[])
                .unwrap();
            let r = relay_cf_emz(&net, &dist).unwrap();
            assert!((r - a.min(b)).abs() < 1e-12);
            assert!((r - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn relay_shape_enforced() {
        let net = line_network();
        let dist = CodingDistribution::uniform_identity(&net);
        assert!(relay_cf_emz(&net, &dist).is_err());
    }
}
