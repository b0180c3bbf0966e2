//! Network descriptions, cutset enumeration and rate-region representation.

mod network;
mod nodeset;
mod radix;
mod region;
mod report;

pub use network::{DmNetwork, GaussianNetwork, MAX_JOINT_STATES};
pub use nodeset::{NodeSet, MAX_NODES};
pub use radix::MixedRadix;
pub use region::RateRegion;
pub use report::{region_from_report, CutsetReport, Reduce, ReportEntry};

use crate::{Error, Result};

/// How eligible destinations are chosen for a cutset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DestSelector {
    /// A fixed multicast destination set: eligible = `Sᶜ ∩ D`.
    Multicast(NodeSet),
    /// Per-node destination sets `D_k`: eligible = `Sᶜ ∩ ⋃_{k∈S} D_k`.
    PerCut(Vec<NodeSet>),
}

impl DestSelector {
    /// Destinations eligible for cut `s` in an `n`-node network.
    pub fn eligible(&self, s: NodeSet, n: usize) -> NodeSet {
        let sc = s.complement(n);
        match self {
            DestSelector::Multicast(d) => sc.intersection(*d),
            DestSelector::PerCut(dests) => {
                let reach = s.iter().fold(NodeSet::EMPTY, |acc, k| acc.union(dests[k]));
                sc.intersection(reach)
            }
        }
    }
}

/// Every nonempty cutset `S ⊆ [1:n]` with a nonempty eligible destination set,
/// in ascending mask order, paired with those destinations.
pub fn enumerate_cutsets(n: usize, selector: &DestSelector) -> Result<Vec<(NodeSet, NodeSet)>> {
    if n > MAX_NODES {
        return Err(Error::TooManyNodes(n));
    }
    if n < 2 {
        return Err(Error::Invalid(format!(
            "cutset enumeration needs at least 2 nodes, got {n}"
        )));
    }
    if let DestSelector::PerCut(dests) = selector {
        if dests.len() != n {
            return Err(Error::Invalid(format!(
                "expected {n} per-node destination sets, got {}",
                dests.len()
            )));
        }
    }
    let full = NodeSet::full(n);
    Ok(full
        .subsets()
        .filter(|s| !s.is_empty())
        .filter_map(|s| {
            let eligible = selector.eligible(s, n);
            (!eligible.is_empty()).then_some((s, eligible))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_labels(nodes.iter().copied()).unwrap()
    }

    #[test]
    fn three_nodes_single_destination() {
        let cuts = enumerate_cutsets(3, &DestSelector::Multicast(set(&[3]))).unwrap();
        let got: Vec<_> = cuts.iter().map(|(s, d)| (s.mask(), d.mask())).collect();
        assert_eq!(got, vec![(0b001, 0b100), (0b010, 0b100), (0b011, 0b100)]);
    }

    #[test]
    fn two_nodes_full_multicast() {
        let cuts = enumerate_cutsets(2, &DestSelector::Multicast(set(&[1, 2]))).unwrap();
        assert_eq!(cuts, vec![(set(&[1]), set(&[2])), (set(&[2]), set(&[1]))]);
    }

    #[test]
    fn per_cut_destinations_brute_force() {
        let dests = vec![set(&[4]), set(&[3]), NodeSet::EMPTY, NodeSet::EMPTY];
        let sel = DestSelector::PerCut(dests.clone());
        let cuts = enumerate_cutsets(4, &sel).unwrap();
        // brute force over all 15 nonempty subsets straight from the definition
        let mut expected = Vec::new();
        for mask in 1u16..16 {
            let mut reach = 0u16;
            for k in 0..4 {
                if mask & (1 << k) != 0 {
                    reach |= dests[k].mask();
                }
            }
            let elig = reach & !mask & 0xF;
            if elig != 0 {
                expected.push((mask, elig));
            }
        }
        let got: Vec<_> = cuts.iter().map(|(s, d)| (s.mask(), d.mask())).collect();
        assert_eq!(got, expected);
        let lookup = |s: NodeSet| cuts.iter().find(|(c, _)| *c == s).map(|(_, d)| *d);
        assert_eq!(lookup(set(&[1])), Some(set(&[4])));
        assert_eq!(lookup(set(&[1, 2])), Some(set(&[3, 4])));
    }

    #[test]
    fn size_errors() {
        assert_eq!(
            enumerate_cutsets(17, &DestSelector::Multicast(NodeSet::EMPTY)),
            Err(Error::TooManyNodes(17))
        );
        assert!(enumerate_cutsets(1, &DestSelector::Multicast(NodeSet::EMPTY)).is_err());
    }

    #[test]
    fn multicast_count_matches_brute_force() {
        for n in 2..=6usize {
            for dmask in 1u16..(1 << n) {
                let d = NodeSet::from_mask(dmask);
                let count = enumerate_cutsets(n, &DestSelector::Multicast(d))
                    .unwrap()
                    .len();
                let brute = (1u16..(1 << n))
                    .filter(|s| {
                        let inter = s & dmask;
                        inter != dmask || (dmask & !s) != 0
                    })
                    .count();
                assert_eq!(count, brute, "n={n} D={dmask:b}");
            }
        }
    }
}
