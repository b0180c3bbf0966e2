//! Gaussian closed forms: per-cut outer and inner bounds with their gap,
//! the two-way relay and interference relay scheme comparisons, and the
//! scalar optimizer used for their free parameters.

mod cutset;
mod irc;
mod search;
mod twrc;

pub use cutset::{
    gap_budget, gap_certificate, gauss_cutset_outer, gauss_inner_report, gauss_nnc_inner,
    gauss_outer_report, GapRow, GAP_TOL,
};
pub use irc::{irc_rates, IrcConfig, IrcConstraint, IrcRates, IrcScheme};
pub use search::{scalar_maximize, scalar_maximize_seeded, SweepGrid};
pub use twrc::{twrc_rates, TwrcConfig, TwrcGains, TwrcRates, TwrcScheme, GAIN_CAP};
