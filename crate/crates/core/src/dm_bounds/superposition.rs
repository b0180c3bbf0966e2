use crate::infocalc::{assemble_joint, vars, CodingDistribution, Mode, Var};
use crate::{CutsetReport, DmNetwork, Error, NodeSet, ReportEntry, Result};

/// Inner bound where each destination treats interference as noise.
///
/// For every cut `S` with `Sᶜ ∩ D(S) ≠ ∅`, every `d ∈ Sᶜ ∩ D(S)`, and every
/// `T` with `S ∩ S_d ⊆ T ⊆ S_d`, `d ∉ T`, the entry constrains `R(T)` by
/// `I(X(T), U(S); Ŷ(Sᶜ), Y_d | X(Tᶜ), U(Sᶜ), Q) − I(Y(S); Ŷ(S) | X(S_d), U^N, Ŷ(Sᶜ), Y_d, Q)`,
/// with `S_d = {k : d ∈ D_k} ∪ {d}` and `Tᶜ = S_d \ T`.
///
/// Entries are stored unreduced; `region_from_report` takes the minimum per `T`.
pub fn nnc_noise_interference_bound(
    net: &DmNetwork,
    dist: &CodingDistribution,
) -> Result<CutsetReport> {
    if dist.mode() != Mode::Superposition {
        return Err(Error::Usage(
            "the interference-as-noise bound needs a superposition-mode distribution".into(),
        ));
    }
    let n = net.n_nodes();
    if n < 2 {
        return Err(Error::Invalid("need at least 2 nodes".into()));
    }
    let joint = assemble_joint(net, dist, Mode::Superposition)?;
    let all = NodeSet::full(n);
    let dests = net.dests();
    let mut report = CutsetReport::new("thm3", n);
    for s in all.subsets().filter(|s| !s.is_empty()) {
        let sc = s.complement(n);
        let reach = s.iter().fold(NodeSet::EMPTY, |a, k| a.union(dests[k]));
        for d in sc.intersection(reach).iter() {
            let senders = (0..n)
                .filter(|&k| dests[k].contains(d))
                .fold(NodeSet::singleton(d), NodeSet::with);
            let lower = s.intersection(senders);
            let upper = senders.without(d);
            let penalty = joint.conditional_mi(
                &vars::y(s),
                &vars::yhat(s),
                &vars::join(&[
                    &vars::x(senders),
                    &vars::u(all),
                    &vars::yhat(sc),
                    &[Var::Y(d)],
                    &[Var::Q],
                ]),
            )?;
            for t in upper.subsets().filter(|t| lower.is_subset(*t)) {
                let tc = senders.difference(t);
                let positive = joint.conditional_mi(
                    &vars::join(&[&vars::x(t), &vars::u(s)]),
                    &vars::join(&[&vars::yhat(sc), &[Var::Y(d)]]),
                    &vars::join(&[&vars::x(tc), &vars::u(sc), &[Var::Q]]),
                )?;
                report
                    .entries
                    .push(ReportEntry::new(s, Some(d), positive, penalty).with_target(t));
            }
        }
    }
    Ok(report)
}
