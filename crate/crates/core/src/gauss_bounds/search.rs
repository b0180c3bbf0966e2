use crate::{Error, Result};

/// Log-spaced grid with golden-section refinement around the best point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub refine_iters: usize,
}

impl SweepGrid {
    pub fn new(lo: f64, hi: f64, points: usize, refine_iters: usize) -> Result<Self> {
        let grid = SweepGrid {
            lo,
            hi,
            points,
            refine_iters,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// 400 points on `[1e-4, 1e4]`, 60 refinement iterations.
    pub fn default_sigma2() -> Self {
        SweepGrid {
            lo: 1e-4,
            hi: 1e4,
            points: 400,
            refine_iters: 60,
        }
    }

    /// Same resolution over different bounds.
    pub fn with_bounds(&self, lo: f64, hi: f64) -> Self {
        SweepGrid { lo, hi, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo > 0.0 && self.lo.is_finite() && self.hi.is_finite() && self.hi >= self.lo) {
            return Err(Error::Invalid(format!(
                "grid bounds [{}, {}] must be positive, finite and ordered",
                self.lo, self.hi
            )));
        }
        if self.points < 2 {
            return Err(Error::Invalid(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// Grid nodes in ascending order; both endpoints are hit exactly.
    pub fn nodes(&self) -> Vec<f64> {
        let (a, b) = (self.lo.ln(), self.hi.ln());
        let last = self.points - 1;
        (0..self.points)
            .map(|i| match i {
                0 => self.lo,
                i if i == last => self.hi,
                i => (a + (b - a) * i as f64 / last as f64).exp(),
            })
            .collect()
    }
}

struct Best {
    x: f64,
    v: f64,
}

impl Best {
    /// Strictly better value, or an equal value at a smaller parameter.
    fn offer(&mut self, x: f64, v: f64) {
        if v > self.v || (v == self.v && x < self.x) {
            self.x = x;
            self.v = v;
        }
    }
}

fn finite_or_neg_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::NEG_INFINITY
    }
}

/// Maximize `f` over `[grid.lo, grid.hi]`; see [`scalar_maximize_seeded`].
pub fn scalar_maximize<F: FnMut(f64) -> f64>(f: F, grid: &SweepGrid) -> Result<(f64, f64)> {
    scalar_maximize_seeded(f, grid, &[])
}

/// Maximize `f` on the grid, then run golden-section search in log space on
/// the bracket formed by the best node's neighbours. Finite `seeds` are
/// evaluated as extra candidates. Non-finite values count as `−∞`; ties go
/// to the smaller parameter. The result is never below the best grid node.
///
/// Returns `(argmax, max)`.
pub fn scalar_maximize_seeded<F: FnMut(f64) -> f64>(
    mut f: F,
    grid: &SweepGrid,
    seeds: &[f64],
) -> Result<(f64, f64)> {
    grid.validate()?;
    let mut f = |x: f64| finite_or_neg_inf(f(x));
    let nodes = grid.nodes();
    let mut best = Best {
        x: f64::INFINITY,
        v: f64::NEG_INFINITY,
    };
    let mut best_i = 0;
    for (i, &x) in nodes.iter().enumerate() {
        let v = f(x);
        if v > best.v {
            best = Best { x, v };
            best_i = i;
        }
    }
    if best.v > f64::NEG_INFINITY && grid.refine_iters > 0 {
        let lo = nodes[best_i.saturating_sub(1)].ln();
        let hi = nodes[(best_i + 1).min(nodes.len() - 1)].ln();
        let (x, v) = golden(|t| f(t.exp()), lo, hi, grid.refine_iters);
        best.offer(x.exp(), v);
    }
    for &s in seeds.iter().filter(|s| s.is_finite() && **s > 0.0) {
        let v = f(s);
        best.offer(s, v);
    }
    if best.v == f64::NEG_INFINITY {
        return Err(Error::NoFeasiblePoint(format!(
            "objective is not finite anywhere on [{}, {}]",
            grid.lo, grid.hi
        )));
    }
    Ok((best.x, best.v))
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn golden<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_parabola_peaks_at_one() {
        let (x, v) =
            scalar_maximize(|x: f64| -x.ln().powi(2), &SweepGrid::default_sigma2()).unwrap();
        assert!((x - 1.0).abs() < 1e-6, "{x}");
        assert!(v <= 0.0 && v > -1e-12);
    }

    #[test]
    fn constant_prefers_smallest_node() {
        let grid = SweepGrid::default_sigma2();
        assert_eq!(scalar_maximize(|_| 3.0, &grid).unwrap(), (1e-4, 3.0));
    }

    #[test]
    fn all_infeasible_is_an_error() {
        let r = scalar_maximize(|_| f64::NAN, &SweepGrid::default_sigma2());
        assert!(matches!(r, Err(Error::NoFeasiblePoint(_))));
    }

    #[test]
    fn endpoints_exact() {
        let g = SweepGrid::new(0.3, 7.0, 5, 0).unwrap();
        let n = g.nodes();
        assert_eq!((n[0], n[4]), (0.3, 7.0));
        assert!(n.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn increasing_function_hits_upper_end() {
        let g = SweepGrid::new(0.5, 2.0, 3, 40).unwrap();
        assert_eq!(scalar_maximize(|x| x, &g).unwrap(), (2.0, 2.0));
    }

    #[test]
    fn seeds_compete() {
        let g = SweepGrid::new(1.0, 10.0, 2, 0).unwrap();
        let (x, v) =
            scalar_maximize_seeded(|x| -(x - 3.0).abs(), &g, &[3.0, f64::INFINITY]).unwrap();
        assert_eq!((x, v), (3.0, 0.0));
    }

    #[test]
    fn invalid_grids() {
        assert!(SweepGrid::new(0.0, 1.0, 10, 1).is_err());
        assert!(SweepGrid::new(2.0, 1.0, 10, 1).is_err());
        assert!(SweepGrid::new(1.0, 2.0, 1, 1).is_err());
    }

    #[test]
    fn min_of_monotone_curves_matches_dense_grid() {
        // crossing of a decreasing and an increasing rate curve
        let f = |s: f64| {
            let a = 0.5 * (1.0 + 4.0 / (1.0 + s)).log2() + 0.3;
            let b = 0.5 * (1.0 + 9.0f64).log2() - 0.5 * (1.0 + 1.0 / s).log2();
            a.min(b)
        };
        let (_, v) = scalar_maximize(f, &SweepGrid::default_sigma2()).unwrap();
        let oracle = (0..1_000_000)
            .map(|i| f((1e-4f64.ln() + (1e8f64.ln()) * i as f64 / 999_999.0).exp()))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(v >= oracle - 1e-4 * oracle.abs(), "{v} vs {oracle}");
        assert!(v <= oracle + 1e-4 * oracle.abs());
    }
}
