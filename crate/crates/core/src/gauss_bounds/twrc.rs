//! Two-way relay channel: nodes 1 and 2 exchange messages through relay 3,
//! which sits at normalized distance `d` from node 1 on the line between them.

use super::search::{scalar_maximize, scalar_maximize_seeded, SweepGrid};
use crate::{awgn_capacity as cap, Error, Result};

/// Largest gain used when the relay coincides with an end node.
pub const GAIN_CAP: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwrcConfig {
    pub d: f64,
    pub gamma: f64,
    pub power: f64,
}

/// Link gains derived from a [`TwrcConfig`]; `g_jk` is sender `j` into receiver `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwrcGains {
    pub g12: f64,
    pub g21: f64,
    pub g13: f64,
    pub g31: f64,
    pub g23: f64,
    pub g32: f64,
    /// Some gain hit [`GAIN_CAP`].
    pub capped: bool,
}

impl TwrcConfig {
    pub fn new(d: f64, gamma: f64, power: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::Invalid(format!("relay position {d} outside [0, 1]")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::Invalid(format!(
                "path-loss exponent {gamma} must be finite and nonnegative"
            )));
        }
        if !(power.is_finite() && power >= 0.0) {
            return Err(Error::Invalid(format!(
                "power {power} must be finite and nonnegative"
            )));
        }
        Ok(TwrcConfig { d, gamma, power })
    }

    /// `g12 = g21 = 1`, `g13 = g31 = d^{−γ/2}`, `g23 = g32 = (1−d)^{−γ/2}`.
    pub fn gains(&self) -> TwrcGains {
        let path = |dist: f64| dist.powf(-self.gamma / 2.0);
        let (a, b) = (path(self.d), path(1.0 - self.d));
        let capped = !(a <= GAIN_CAP && b <= GAIN_CAP);
        let (a, b) = (a.min(GAIN_CAP), b.min(GAIN_CAP));
        TwrcGains {
            g12: 1.0,
            g21: 1.0,
            g13: a,
            g31: a,
            g23: b,
            g32: b,
            capped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwrcScheme {
    Nnc,
    Af,
    Cf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwrcRates {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    /// σ² for the compression schemes, α for amplify–forward.
    pub param: f64,
    pub flagged: bool,
}

/// Per-user caps of noisy network coding at quantization noise `s2`, unclamped.
pub fn nnc_caps(g: &TwrcGains, p: f64, s2: f64) -> (f64, f64) {
    let (c1, c2) = cf_caps(g, p, s2);
    let penalty = cap(1.0 / s2);
    let r1 = c1.min(cap(g.g12 * g.g12 * p + g.g32 * g.g32 * p) - penalty);
    // the second power symbol is read as the common power P
    let r2 = c2.min(cap(g.g21 * g.g21 * p + g.g31 * g.g31 * p) - penalty);
    (r1, r2)
}

/// Per-user caps of compress-forward with Wyner–Ziv binning at `s2`.
pub fn cf_caps(g: &TwrcGains, p: f64, s2: f64) -> (f64, f64) {
    let r1 = cap((g.g13 * g.g13 * p + (1.0 + s2) * g.g12 * g.g12 * p) / (1.0 + s2));
    let r2 = cap((g.g23 * g.g23 * p + (1.0 + s2) * g.g21 * g.g21 * p) / (1.0 + s2));
    (r1, r2)
}

/// Smallest quantization noise for which the relay's bin index is decodable
/// at both end nodes.
pub fn cf_min_sigma2(g: &TwrcGains, p: f64) -> f64 {
    let den = (g.g32 * g.g32).min(g.g31 * g.g31) * p;
    let t1 = (1.0 + g.g12 * g.g12 * p) * (1.0 + g.g13 * g.g13 * p) - (g.g12 * g.g13 * p).powi(2);
    let t2 = (1.0 + g.g21 * g.g21 * p) * (1.0 + g.g23 * g.g23 * p) - (g.g21 * g.g23 * p).powi(2);
    t1.max(t2) / den
}

/// Largest relay amplification meeting the relay power constraint.
pub fn af_alpha_max(g: &TwrcGains, p: f64) -> f64 {
    (p / (g.g13 * g.g13 * p + g.g23 * g.g23 * p + 1.0)).sqrt()
}

/// Per-user amplify–forward rates at amplification `alpha`.
pub fn af_caps(g: &TwrcGains, p: f64, alpha: f64) -> (f64, f64) {
    let rate = |a: f64, b: f64| 0.5 * ((a + (a * a - b * b).max(0.0).sqrt()) / 2.0).log2();
    let a2 = alpha * alpha;
    let den1 = g.g32 * g.g32 * a2 + 1.0;
    let den2 = g.g31 * g.g31 * a2 + 1.0;
    let a_1 = 1.0 + p * (g.g12 * g.g12 + a2 * g.g32 * g.g32 * g.g13 * g.g13) / den1;
    let a_2 = 1.0 + p * (g.g21 * g.g21 + a2 * g.g31 * g.g31 * g.g23 * g.g23) / den2;
    let b_1 = 2.0 * p * alpha * g.g32 * g.g13 * g.g12 / den1;
    let b_2 = 2.0 * p * alpha * g.g31 * g.g23 * g.g21 / den2;
    (rate(a_1, b_1), rate(a_2, b_2))
}

fn clamped_sum((r1, r2): (f64, f64)) -> f64 {
    r1.max(0.0) + r2.max(0.0)
}

/// Per-user rates and sum rate of `scheme`, with its free parameter chosen
/// to maximize the sum.
///
/// Noisy network coding searches `σ²` over `grid` (plus the compress-forward
/// threshold as a seed); amplify–forward searches `α` over
/// `[α_max·1e-6, α_max]` at the grid's resolution; compress-forward is
/// evaluated at its smallest feasible `σ²`, where its caps are largest.
pub fn twrc_rates(cfg: &TwrcConfig, scheme: TwrcScheme, grid: &SweepGrid) -> Result<TwrcRates> {
    let g = cfg.gains();
    let p = cfg.power;
    if p == 0.0 {
        return Ok(TwrcRates {
            r1: 0.0,
            r2: 0.0,
            sum: 0.0,
            param: 0.0,
            flagged: g.capped,
        });
    }
    let (param, (r1, r2)) = match scheme {
        TwrcScheme::Cf => {
            let s2 = cf_min_sigma2(&g, p);
            (s2, cf_caps(&g, p, s2))
        }
        TwrcScheme::Nnc => {
            let seed = cf_min_sigma2(&g, p);
            let (s2, _) =
                scalar_maximize_seeded(|s2| clamped_sum(nnc_caps(&g, p, s2)), grid, &[seed])?;
            (s2, nnc_caps(&g, p, s2))
        }
        TwrcScheme::Af => {
            let hi = af_alpha_max(&g, p);
            let (alpha, _) = scalar_maximize(
                |a| clamped_sum(af_caps(&g, p, a)),
                &grid.with_bounds(hi * 1e-6, hi),
            )?;
            (alpha, af_caps(&g, p, alpha))
        }
    };
    let (r1, r2) = (r1.max(0.0), r2.max(0.0));
    Ok(TwrcRates {
        r1,
        r2,
        sum: r1 + r2,
        param,
        flagged: g.capped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: f64) -> TwrcConfig {
        TwrcConfig::new(d, 3.0, 10.0).unwrap()
    }

    #[test]
    fn gains_follow_path_loss() {
        let g = cfg(0.25).gains();
        assert_eq!((g.g12, g.g21), (1.0, 1.0));
        assert!((g.g13 - 0.25f64.powf(-1.5)).abs() < 1e-12);
        assert_eq!(g.g13, g.g31);
        assert!((g.g23 - 0.75f64.powf(-1.5)).abs() < 1e-12);
        assert!(!g.capped);
    }

    #[test]
    fn endpoint_relay_is_capped_and_flagged() {
        let g = cfg(0.0).gains();
        assert_eq!(g.g13, GAIN_CAP);
        assert!(g.capped);
        let r = twrc_rates(&cfg(1.0), TwrcScheme::Nnc, &SweepGrid::default_sigma2()).unwrap();
        assert!(r.flagged && r.sum.is_finite());
    }

    #[test]
    fn large_noise_limit_is_direct_link() {
        let g = cfg(0.3).gains();
        let (r1, r2) = nnc_caps(&g, 10.0, 1e12);
        assert!((r1 - cap(10.0)).abs() < 1e-9);
        assert!((r2 - cap(10.0)).abs() < 1e-9);
    }

    #[test]
    fn mirrored_position_swaps_rates() {
        let grid = SweepGrid::default_sigma2();
        for scheme in [TwrcScheme::Nnc, TwrcScheme::Af, TwrcScheme::Cf] {
            for d in [0.05, 0.2, 0.35] {
                let a = twrc_rates(&cfg(d), scheme, &grid).unwrap();
                let b = twrc_rates(&cfg(1.0 - d), scheme, &grid).unwrap();
                assert!(
                    (a.r1 - b.r2).abs() < 1e-9 && (a.r2 - b.r1).abs() < 1e-9,
                    "{scheme:?} at {d}"
                );
            }
        }
    }

    #[test]
    fn nnc_caps_dominate_cf_caps_at_cf_threshold() {
        for i in 1..20 {
            let g = cfg(i as f64 / 20.0).gains();
            let s2 = cf_min_sigma2(&g, 10.0);
            let (n1, n2) = nnc_caps(&g, 10.0, s2);
            let (c1, c2) = cf_caps(&g, 10.0, s2);
            assert!(n1 >= c1 - 1e-12 && n2 >= c2 - 1e-12);
        }
    }

    #[test]
    fn af_alpha_respects_power_constraint() {
        let grid = SweepGrid::default_sigma2();
        let c = cfg(0.3);
        let r = twrc_rates(&c, TwrcScheme::Af, &grid).unwrap();
        assert!(r.param <= af_alpha_max(&c.gains(), 10.0));
    }

    #[test]
    fn zero_power_gives_zero_rates() {
        let c = TwrcConfig::new(0.4, 3.0, 0.0).unwrap();
        for s in [TwrcScheme::Nnc, TwrcScheme::Af, TwrcScheme::Cf] {
            assert_eq!(
                twrc_rates(&c, s, &SweepGrid::default_sigma2()).unwrap().sum,
                0.0
            );
        }
    }

    #[test]
    fn config_validation() {
        assert!(TwrcConfig::new(1.5, 3.0, 1.0).is_err());
        assert!(TwrcConfig::new(0.5, -1.0, 1.0).is_err());
        assert!(TwrcConfig::new(0.5, 3.0, f64::NAN).is_err());
    }
}
