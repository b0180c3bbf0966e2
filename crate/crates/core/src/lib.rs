//! Capacity inner and outer bounds for noisy networks.
//!
//! The crate evaluates noisy network coding inner bounds and cutset outer
//! bounds for discrete memoryless networks given an explicit coding
//! distribution, closed-form special cases (noiseless graphs, erasure
//! networks, deterministic networks), and Gaussian closed forms including
//! the per-cut gap between the two bounds and the two-way relay and
//! interference relay scheme comparisons.
//!
//! All information quantities are in bits.

pub mod cli;
pub mod dm_bounds;
pub mod error;
pub mod gauss_bounds;
pub mod infocalc;
pub mod netmodel;

pub use error::{Error, Result};
pub use netmodel::{
    CutsetReport, DestSelector, DmNetwork, GaussianNetwork, NodeSet, RateRegion, Reduce,
    ReportEntry,
};

/// AWGN rate function, `½ log₂(1 + x)`.
#[inline]
pub fn awgn_capacity(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}
