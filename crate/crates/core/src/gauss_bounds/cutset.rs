use crate::infocalc::gauss_cut_rate;
use crate::netmodel::{enumerate_cutsets, DestSelector};
use crate::{CutsetReport, Error, GaussianNetwork, NodeSet, ReportEntry, Result};

/// Slack on the per-cut gap check.
pub const GAP_TOL: f64 = 1e-9;

fn check_cut(net: &GaussianNetwork, s: NodeSet) -> Result<(usize, usize)> {
    let n = net.n_nodes();
    if s.is_empty() || s == NodeSet::full(n) || !s.is_subset(NodeSet::full(n)) {
        return Err(Error::Invalid(format!(
            "{s} is not a proper nonempty cut of {n} nodes"
        )));
    }
    Ok((s.len(), n - s.len()))
}

/// `|S|/2 + ½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
pub fn gap_budget(s_len: usize, sc_len: usize) -> f64 {
    s_len as f64 / 2.0 + loosening(s_len, sc_len)
}

fn loosening(s_len: usize, sc_len: usize) -> f64 {
    0.5 * s_len.min(sc_len) as f64 * (2.0 * s_len as f64).log2()
}

/// Cutset bound loosened to independent inputs:
/// `½ log|I + (P/2) G(S)G(S)ᵀ| + ½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
pub fn gauss_cutset_outer(net: &GaussianNetwork, s: NodeSet) -> Result<f64> {
    let (a, b) = check_cut(net, s)?;
    Ok(gauss_cut_rate(net, s)? + loosening(a, b))
}

/// Noisy network coding value with unit-variance quantization noise:
/// `½ log|I + (P/2) G(S)G(S)ᵀ| − |S|/2`, unclamped.
pub fn gauss_nnc_inner(net: &GaussianNetwork, s: NodeSet) -> Result<f64> {
    check_cut(net, s)?;
    Ok(gauss_cut_rate(net, s)? - s.len() as f64 / 2.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub cut: NodeSet,
    pub outer: f64,
    pub inner_raw: f64,
    /// `outer − inner_raw`.
    pub gap: f64,
    /// `outer − max(inner_raw, 0)`.
    pub gap_clamped: f64,
    pub budget: f64,
    /// `gap ≤ budget + GAP_TOL`.
    pub ok: bool,
}

/// Outer, inner and gap for every cut with a destination in `Sᶜ ∩ D`.
pub fn gap_certificate(net: &GaussianNetwork, d: NodeSet) -> Result<Vec<GapRow>> {
    let n = net.n_nodes();
    enumerate_cutsets(n, &DestSelector::Multicast(d))?
        .into_iter()
        .map(|(s, _)| {
            let rate = gauss_cut_rate(net, s)?;
            let (a, b) = (s.len(), n - s.len());
            let outer = rate + loosening(a, b);
            let inner_raw = rate - a as f64 / 2.0;
            let gap = outer - inner_raw;
            let budget = gap_budget(a, b);
            Ok(GapRow {
                cut: s,
                outer,
                inner_raw,
                gap,
                gap_clamped: outer - inner_raw.max(0.0),
                budget,
                ok: gap <= budget + GAP_TOL,
            })
        })
        .collect()
}

fn report(
    net: &GaussianNetwork,
    selector: &DestSelector,
    name: &str,
    outer: bool,
) -> Result<CutsetReport> {
    let n = net.n_nodes();
    let mut out = CutsetReport::new(name, n);
    for (s, eligible) in enumerate_cutsets(n, selector)? {
        let rate = gauss_cut_rate(net, s)?;
        let (pos, pen) = if outer {
            (rate + loosening(s.len(), n - s.len()), 0.0)
        } else {
            (rate, s.len() as f64 / 2.0)
        };
        for d in eligible.iter() {
            out.entries.push(ReportEntry::new(s, Some(d), pos, pen));
        }
    }
    Ok(out)
}

/// Inner-bound report; the penalty term is `|S|/2`.
pub fn gauss_inner_report(net: &GaussianNetwork, selector: &DestSelector) -> Result<CutsetReport> {
    report(net, selector, "gauss_inner", false)
}

/// Loosened outer-bound report; the penalty term is zero.
pub fn gauss_outer_report(net: &GaussianNetwork, selector: &DestSelector) -> Result<CutsetReport> {
    report(net, selector, "gauss_outer", true)
}
