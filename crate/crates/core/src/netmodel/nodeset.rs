use std::fmt;

use crate::{Error, Result};

/// Largest supported network size; cutsets are 16-bit masks.
pub const MAX_NODES: usize = 16;

/// A set of node indices stored as a bitmask.
///
/// Bit `k` stands for the node with zero-based index `k`, which is node
/// `k + 1` in the one-based labels used for display and file formats.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub const fn from_mask(mask: u16) -> Self {
        NodeSet(mask)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    /// The set `[1:n]`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n >= MAX_NODES {
            NodeSet(u16::MAX)
        } else {
            NodeSet(((1u32 << n) - 1) as u16)
        }
    }

    /// Set holding the single zero-based index `k`.
    pub fn singleton(k: usize) -> Self {
        debug_assert!(k < MAX_NODES);
        NodeSet(1 << k)
    }

    /// Build from zero-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(NodeSet::EMPTY, |acc, k| acc.with(k))
    }

    /// Build from one-based node labels, rejecting 0 and labels above 16.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        let mut set = NodeSet::EMPTY;
        for label in labels {
            if label == 0 || label > MAX_NODES {
                return Err(Error::Invalid(format!(
                    "node label {label} out of range 1..=16"
                )));
            }
            set = set.with(label - 1);
        }
        Ok(set)
    }

    pub fn contains(self, k: usize) -> bool {
        k < MAX_NODES && self.0 & (1 << k) != 0
    }

    pub fn with(self, k: usize) -> Self {
        NodeSet(self.0 | (1 << k))
    }

    pub fn without(self, k: usize) -> Self {
        NodeSet(self.0 & !(1 << k))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement within `[1:n]`.
    pub fn complement(self, n: usize) -> Self {
        NodeSet(!self.0 & NodeSet::full(n).0)
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Zero-based members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(k)
        })
    }

    /// All subsets of `self` (including the empty set and `self`) in
    /// ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut next = Some(0u16);
        std::iter::from_fn(move || {
            let cur = next?;
            // next submask above `cur` in increasing numeric order
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(NodeSet(cur))
        })
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeSet{self}")
    }
}

/// One-based set notation, e.g. `{1,3}`.
impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        f.write_str("}")
    }
}
