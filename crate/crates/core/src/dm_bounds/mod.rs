//! Discrete memoryless bound evaluators and closed-form special cases.

mod cf_extension;
mod cutset;
mod multicast;
mod special;
mod superposition;

pub use cf_extension::{cf_extension_bound, CfConstraint, CfExtension};
pub use cutset::{cutset_outer_bound, cutset_outer_bound_max};
pub use multicast::{nnc_multicast_bound, nnc_per_cut_bound, relay_cf_emz, single_source_value};
pub use special::{
    deterministic_region, erasure_region, noiseless_region, DeterministicNetwork, ErasureNetwork,
    NoiselessEdge, NoiselessNetwork,
};
pub use superposition::nnc_noise_interference_bound;
