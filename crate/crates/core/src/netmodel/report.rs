use std::collections::BTreeMap;

use super::{NodeSet, RateRegion};

/// One evaluated constraint of a cutset-type bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub cut: NodeSet,
    /// Zero-based destination index, when the constraint is tied to one.
    pub dest: Option<usize>,
    /// Rate subset `T` constrained by a superposition-mode entry; the
    /// constrained subset is `cut` when absent.
    pub target: Option<NodeSet>,
    pub raw: f64,
    pub clamped: f64,
    pub positive_term: f64,
    pub penalty_term: f64,
}

impl ReportEntry {
    pub fn new(cut: NodeSet, dest: Option<usize>, positive_term: f64, penalty_term: f64) -> Self {
        let raw = positive_term - penalty_term;
        ReportEntry {
            cut,
            dest,
            target: None,
            raw,
            clamped: raw.max(0.0),
            positive_term,
            penalty_term,
        }
    }

    pub fn with_target(mut self, target: NodeSet) -> Self {
        self.target = Some(target);
        self
    }

    /// The node subset whose rate sum this entry bounds.
    pub fn constrained_set(&self) -> NodeSet {
        self.target.unwrap_or(self.cut)
    }
}

/// Per-cutset, per-destination constraint values of a named bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CutsetReport {
    pub bound: String,
    pub n_nodes: usize,
    pub entries: Vec<ReportEntry>,
}

impl CutsetReport {
    pub fn new(bound: impl Into<String>, n_nodes: usize) -> Self {
        CutsetReport {
            bound: bound.into(),
            n_nodes,
            entries: Vec::new(),
        }
    }

    pub fn entry(&self, cut: NodeSet, dest: usize) -> Option<&ReportEntry> {
        self.entries
            .iter()
            .find(|e| e.cut == cut && e.dest == Some(dest) && e.target.is_none())
    }

    /// Smallest raw value over all entries; `+∞` for an empty report.
    pub fn min_raw(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.raw)
            .fold(f64::INFINITY, f64::min)
    }
}

/// How entries sharing a constrained subset are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduce {
    /// Minimum over destinations (and over cuts for superposition entries).
    MinOverDestinations,
    /// Keep the first entry per subset; for reports with one entry per subset.
    Identity,
}

/// Collapse a report into a rate region, clamping negative values to zero.
///
/// Entries constraining the empty set are vacuous (`R(∅) = 0`) and dropped.
pub fn region_from_report(report: &CutsetReport, reduce: Reduce) -> RateRegion {
    let mut merged: BTreeMap<NodeSet, f64> = BTreeMap::new();
    for e in &report.entries {
        let key = e.constrained_set();
        if key.is_empty() {
            continue;
        }
        match reduce {
            Reduce::MinOverDestinations => {
                let v = merged.entry(key).or_insert(f64::INFINITY);
                *v = v.min(e.raw);
            }
            Reduce::Identity => {
                merged.entry(key).or_insert(e.raw);
            }
        }
    }
    let mut region = RateRegion::new(report.n_nodes);
    for (s, v) in merged {
        region.insert(s, v);
    }
    region
}
