use crate::infocalc::{assemble_input_output, vars};
use crate::netmodel::{enumerate_cutsets, DestSelector};
use crate::{CutsetReport, DmNetwork, Error, ReportEntry, Result};

/// Cutset outer bound `I(X(S); Y(Sᶜ) | X(Sᶜ))` under an arbitrary input pmf
/// over `X^N` (mixed-radix, last node fastest). One entry per eligible
/// `(S, d)` pair; the value does not depend on `d`.
pub fn cutset_outer_bound(
    net: &DmNetwork,
    input_pmf: &[f64],
    selector: &DestSelector,
) -> Result<CutsetReport> {
    let n = net.n_nodes();
    let cuts = enumerate_cutsets(n, selector)?;
    let joint = assemble_input_output(net, input_pmf)?;
    let mut report = CutsetReport::new("cutset", n);
    for (s, eligible) in cuts {
        let sc = s.complement(n);
        let value = joint.conditional_mi(&vars::x(s), &vars::y(sc), &vars::x(sc))?;
        for d in eligible.iter() {
            report
                .entries
                .push(ReportEntry::new(s, Some(d), value, 0.0));
        }
    }
    Ok(report)
}

/// Cutset bound maximized per cut over a finite family of input pmfs.
pub fn cutset_outer_bound_max(
    net: &DmNetwork,
    family: &[Vec<f64>],
    selector: &DestSelector,
) -> Result<CutsetReport> {
    let mut reports = family
        .iter()
        .map(|pmf| cutset_outer_bound(net, pmf, selector));
    let mut best = reports
        .next()
        .ok_or_else(|| Error::Invalid("input pmf family is empty".into()))??;
    for r in reports {
        let r = r?;
        for (b, e) in best.entries.iter_mut().zip(r.entries) {
            if e.raw > b.raw {
                *b = e;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::NodeSet;

    #[test]
    fn independent_outputs_give_zero() {
        // Y2 is pure noise
        let net = DmNetwork::from_transition(
            vec![2, 1],
            vec![1, 2],
            vec![NodeSet::from_mask(2); 2],
            |_, _| 0.5,
        )
        .unwrap();
        let r = cutset_outer_bound(
            &net,
            &[0.5, 0.5],
            &DestSelector::Multicast(NodeSet::from_mask(2)),
        )
        .unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].raw, 0.0);
    }

    #[test]
    fn deterministic_gives_output_entropy() {
        // Y2 = X1 with a biased input
        let net = DmNetwork::deterministic(
            vec![2, 1],
            vec![1, 2],
            vec![NodeSet::from_mask(2); 2],
            |x| vec![0, x[0]],
        )
        .unwrap();
        let r = cutset_outer_bound(
            &net,
            &[0.25, 0.75],
            &DestSelector::Multicast(NodeSet::from_mask(2)),
        )
        .unwrap();
        assert!((r.entries[0].raw - crate::infocalc::binary_entropy(0.25)).abs() < 1e-12);
    }

    #[test]
    fn family_maximum() {
        let net = DmNetwork::deterministic(
            vec![2, 1],
            vec![1, 2],
            vec![NodeSet::from_mask(2); 2],
            |x| vec![0, x[0]],
        )
        .unwrap();
        let sel = DestSelector::Multicast(NodeSet::from_mask(2));
        let fam = vec![vec![0.9, 0.1], vec![0.5, 0.5], vec![1.0, 0.0]];
        let r = cutset_outer_bound_max(&net, &fam, &sel).unwrap();
        assert!((r.entries[0].raw - 1.0).abs() < 1e-12);
        assert!(cutset_outer_bound_max(&net, &[], &sel).is_err());
    }
}
