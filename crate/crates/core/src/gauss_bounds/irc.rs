//! Interference relay channel: senders 1 and 2 reach receivers 4 and 5
//! (1→4 and 2→5 intended), and relay 3 forwards over a noiseless link of
//! rate `R₀` to both receivers. Outputs are `Y_j = g_1j X₁ + g_2j X₂ + Z_j`.

use super::search::{scalar_maximize_seeded, SweepGrid};
use crate::{awgn_capacity as cap, Error, NodeSet, RateRegion, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrcConfig {
    pub g13: f64,
    pub g23: f64,
    pub g14: f64,
    pub g24: f64,
    pub g15: f64,
    pub g25: f64,
    /// Relay link rate in bits per use.
    pub r0: f64,
    pub power: f64,
}

impl IrcConfig {
    pub fn validate(&self) -> Result<()> {
        let gains = [self.g13, self.g23, self.g14, self.g24, self.g15, self.g25];
        if gains.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(Error::Invalid(
                "gains must be finite and nonnegative".into(),
            ));
        }
        if !(self.r0.is_finite() && self.r0 >= 0.0) {
            return Err(Error::Invalid(format!(
                "relay link rate {} must be finite and nonnegative",
                self.r0
            )));
        }
        if !(self.power.is_finite() && self.power >= 0.0) {
            return Err(Error::Invalid(format!(
                "power {} must be finite and nonnegative",
                self.power
            )));
        }
        Ok(())
    }

    /// Strong direct links, half-strength cross links, a relay that hears
    /// sender 2 better than sender 1 (`g23 = 0.5`, `g13 = 0.1`), and a 1-bit
    /// relay link.
    pub fn reference(power: f64) -> Self {
        IrcConfig {
            g13: 0.1,
            g23: 0.5,
            g14: 1.0,
            g24: 0.5,
            g15: 0.5,
            g25: 1.0,
            r0: 1.0,
            power,
        }
    }

    /// [`IrcConfig::reference`] with the relay gains swapped (`g13 = 0.5`, `g23 = 0.1`).
    pub fn reference_swapped(power: f64) -> Self {
        IrcConfig {
            g13: 0.5,
            g23: 0.1,
            ..IrcConfig::reference(power)
        }
    }

    /// `1 / (2^{2R₀} − 1)`; infinite at `R₀ = 0`.
    fn link_factor(&self) -> f64 {
        1.0 / ((2.0 * self.r0).exp2() - 1.0)
    }

    fn thresholds(&self) -> (f64, f64) {
        let (g13, g23, g14, g24, g15, g25, p) = (
            self.g13, self.g23, self.g14, self.g24, self.g15, self.g25, self.power,
        );
        let a1 = (g13 * g13 + g14 * g14) * p + (g23 * g23 + g24 * g24) * p + 1.0;
        let a2 = (g13 * g13 + g15 * g15) * p + (g23 * g23 + g25 * g25) * p + 1.0;
        let t1 =
            ((g13 * g24 - g23 * g14).powi(2) * p * p + a1) / (g14 * g14 * p + g24 * g24 * p + 1.0);
        let t2 =
            ((g13 * g25 - g23 * g15).powi(2) * p * p + a2) / (g15 * g15 * p + g25 * g25 * p + 1.0);
        (t1, t2)
    }

    /// Smallest `σ²` at which compress-forward's bin index fits the relay link.
    pub fn cf_min_sigma2(&self) -> f64 {
        let (t1, t2) = self.thresholds();
        self.link_factor() * t1.max(t2)
    }

    /// Largest `σ²` admitted by hash–forward.
    pub fn hf_max_sigma2(&self) -> f64 {
        let (t1, t2) = self.thresholds();
        self.link_factor() * t1.min(t2)
    }

    /// Rate of user 1 when relay 3's quantized signal is decoded jointly with `Y₄`.
    fn relay_aided_1(&self, s2: f64) -> f64 {
        let (g13, g23, g14, g24, p) = (self.g13, self.g23, self.g14, self.g24, self.power);
        let num =
            (g13 * g13 + (1.0 + s2) * g14 * g14) * p + (g23 * g14 - g24 * g13).powi(2) * p * p;
        cap(num / (1.0 + s2 + (g23 * g23 + (1.0 + s2) * g24 * g24) * p))
    }

    fn relay_aided_2(&self, s2: f64) -> f64 {
        let (g13, g23, g15, g25, p) = (self.g13, self.g23, self.g15, self.g25, self.power);
        let num =
            (g23 * g23 + (1.0 + s2) * g25 * g25) * p + (g13 * g25 - g15 * g23).powi(2) * p * p;
        cap(num / (1.0 + s2 + (g13 * g13 + (1.0 + s2) * g15 * g15) * p))
    }

    /// Rate of user 1 from the hashed relay description and `Y₄`, interference as noise.
    fn hashed_1(&self, s2: f64) -> f64 {
        let (g23, g14, g24, p) = (self.g23, self.g14, self.g24, self.power);
        cap(g14 * g14 * p / (g24 * g24 * p + 1.0)) + self.r0
            - cap(((g23 * g23 + g24 * g24) * p + 1.0) / ((g24 * g24 * p + 1.0) * s2))
    }

    fn hashed_2(&self, s2: f64) -> f64 {
        let (g13, g15, g25, p) = (self.g13, self.g15, self.g25, self.power);
        cap(g25 * g25 * p / (g15 * g15 * p + 1.0)) + self.r0
            - cap(((g13 * g13 + g15 * g15) * p + 1.0) / ((g15 * g15 * p + 1.0) * s2))
    }

    fn direct_1(&self) -> f64 {
        cap(self.g14 * self.g14 * self.power / (self.g24 * self.g24 * self.power + 1.0))
    }

    fn direct_2(&self) -> f64 {
        cap(self.g25 * self.g25 * self.power / (self.g15 * self.g15 * self.power + 1.0))
    }

    fn constraints(&self, scheme: IrcScheme, s2: f64) -> Vec<IrcConstraint> {
        let (g13, g23, g14, g24, g15, g25, p, r0) = (
            self.g13, self.g23, self.g14, self.g24, self.g15, self.g25, self.power, self.r0,
        );
        let penalty = cap(1.0 / s2);
        let one = NodeSet::singleton(0);
        let two = NodeSet::singleton(1);
        let both = one.with(1);
        let c = |name: &'static str, set: NodeSet, raw: f64| IrcConstraint {
            name,
            set,
            raw,
            clamped: raw.max(0.0),
        };
        match scheme {
            IrcScheme::Cf => vec![
                c("r1_relay_aided", one, self.relay_aided_1(s2)),
                c("r2_relay_aided", two, self.relay_aided_2(s2)),
            ],
            IrcScheme::Hf => vec![
                c("r1_hashed", one, self.hashed_1(s2)),
                c("r2_hashed", two, self.hashed_2(s2)),
            ],
            IrcScheme::NncT3 => vec![
                c("r1_hashed", one, self.hashed_1(s2)),
                c("r1_relay_aided", one, self.relay_aided_1(s2)),
                c("r2_hashed", two, self.hashed_2(s2)),
                c("r2_relay_aided", two, self.relay_aided_2(s2)),
            ],
            IrcScheme::NncT2 => vec![
                c("r1_link", one, cap(g14 * g14 * p) + r0 - penalty),
                c(
                    "r1_quantized",
                    one,
                    cap((g13 * g13 + (1.0 + s2) * g14 * g14) * p / (1.0 + s2)),
                ),
                c("r2_link", two, cap(g25 * g25 * p) + r0 - penalty),
                c(
                    "r2_quantized",
                    two,
                    cap((g23 * g23 + (1.0 + s2) * g25 * g25) * p / (1.0 + s2)),
                ),
                c(
                    "sum_link_at_4",
                    both,
                    cap((g14 * g14 + g24 * g24) * p) + r0 - penalty,
                ),
                c(
                    "sum_quantized_at_4",
                    both,
                    cap(((g13 * g13 + g23 * g23) * p
                        + (1.0 + s2) * (g14 * g14 + g24 * g24) * p
                        + (g13 * g24 - g23 * g14).powi(2) * p * p)
                        / (1.0 + s2)),
                ),
                c(
                    "sum_link_at_5",
                    both,
                    cap((g15 * g15 + g25 * g25) * p) + r0 - penalty,
                ),
                c(
                    "sum_quantized_at_5",
                    both,
                    cap(((g13 * g13 + g23 * g23) * p
                        + (1.0 + s2) * (g25 * g25 + g15 * g15) * p
                        + (g23 * g15 - g13 * g25).powi(2) * p * p)
                        / (1.0 + s2)),
                ),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcScheme {
    /// Noisy network coding with both receivers decoding both messages.
    NncT2,
    /// Noisy network coding with interference treated as noise.
    NncT3,
    /// Compress–forward with Wyner–Ziv binning.
    Cf,
    /// Hash–forward with list decoding.
    Hf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrcConstraint {
    pub name: &'static str,
    /// Rate subset bounded: `{1}`, `{2}` or `{1,2}` (zero-based internally).
    pub set: NodeSet,
    pub raw: f64,
    pub clamped: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrcRates {
    pub sum: f64,
    /// Optimal `σ²`; infinite when the scheme is evaluated in its `R₀ → 0` limit.
    pub sigma2: f64,
    pub constraints: Vec<IrcConstraint>,
    /// Set when `R₀ = 0` forces a limiting evaluation.
    pub flagged: bool,
}

fn sum_of(constraints: &[IrcConstraint]) -> f64 {
    let mut region = RateRegion::new(2);
    for c in constraints {
        region.insert(c.set, c.clamped);
    }
    region
        .max_weighted_sum(&[1.0, 1.0], NodeSet::full(2))
        .unwrap_or(f64::NEG_INFINITY)
}

/// Sum rate of `scheme` with `σ²` chosen to maximize it.
///
/// Compress–forward searches `σ² ∈ [σ²_min, σ²_min·1e8]` and hash–forward
/// `σ² ∈ [σ²_max·1e-8, σ²_max]`. The noisy network coding searches run over
/// `grid`, widened by a decade past both competitor thresholds, and also try
/// those thresholds directly. At `R₀ = 0` the competitors are evaluated in
/// their `σ² → ∞` limits and flagged.
pub fn irc_rates(cfg: &IrcConfig, scheme: IrcScheme, grid: &SweepGrid) -> Result<IrcRates> {
    cfg.validate()?;
    grid.validate()?;
    let cf_min = cfg.cf_min_sigma2();
    let hf_max = cfg.hf_max_sigma2();
    let limit = !cf_min.is_finite();
    let finish = |s2: f64, flagged: bool| {
        let constraints = cfg.constraints(scheme, s2);
        IrcRates {
            sum: sum_of(&constraints),
            sigma2: s2,
            constraints,
            flagged,
        }
    };
    match scheme {
        IrcScheme::Cf | IrcScheme::Hf if limit => {
            let one = NodeSet::singleton(0);
            let two = NodeSet::singleton(1);
            let (d1, d2) = (cfg.direct_1(), cfg.direct_2());
            let (n1, n2) = match scheme {
                IrcScheme::Cf => ("r1_relay_aided", "r2_relay_aided"),
                _ => ("r1_hashed", "r2_hashed"),
            };
            let constraints = vec![
                IrcConstraint {
                    name: n1,
                    set: one,
                    raw: d1,
                    clamped: d1,
                },
                IrcConstraint {
                    name: n2,
                    set: two,
                    raw: d2,
                    clamped: d2,
                },
            ];
            Ok(IrcRates {
                sum: d1 + d2,
                sigma2: f64::INFINITY,
                constraints,
                flagged: true,
            })
        }
        IrcScheme::Cf => {
            let g = grid.with_bounds(cf_min, cf_min * 1e8);
            let (s2, _) = scalar_maximize_seeded(|s| sum_of(&cfg.constraints(scheme, s)), &g, &[])?;
            Ok(finish(s2, false))
        }
        IrcScheme::Hf => {
            let g = grid.with_bounds(hf_max * 1e-8, hf_max);
            let (s2, _) = scalar_maximize_seeded(|s| sum_of(&cfg.constraints(scheme, s)), &g, &[])?;
            Ok(finish(s2, false))
        }
        IrcScheme::NncT2 | IrcScheme::NncT3 => {
            let mut seeds = Vec::new();
            let (mut lo, mut hi) = (grid.lo, grid.hi);
            if !limit {
                for (other, t) in [(IrcScheme::Cf, cf_min), (IrcScheme::Hf, hf_max)] {
                    lo = lo.min(t / 10.0);
                    hi = hi.max(t * 10.0);
                    seeds.push(t);
                    seeds.push(irc_rates(cfg, other, grid)?.sigma2);
                }
            }
            let g = grid.with_bounds(lo, hi);
            let (s2, _) =
                scalar_maximize_seeded(|s| sum_of(&cfg.constraints(scheme, s)), &g, &seeds)?;
            Ok(finish(s2, false))
        }
    }
}
