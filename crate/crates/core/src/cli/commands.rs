//! Subcommand bodies. Each returns the CSV text it would write.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, StandardNormal};

use super::config::{load_distribution, Distribution, Network};
use crate::dm_bounds::{
    cf_extension_bound, cutset_outer_bound_max, deterministic_region, erasure_region,
    nnc_multicast_bound, nnc_noise_interference_bound, nnc_per_cut_bound, noiseless_region,
};
use crate::gauss_bounds::{
    gap_certificate, gauss_inner_report, gauss_outer_report, irc_rates, twrc_rates, IrcConfig,
    IrcScheme, SweepGrid, TwrcConfig, TwrcScheme,
};
use crate::infocalc::{Mode, ProductInput};
use crate::{CutsetReport, Error, GaussianNetwork, NodeSet, RateRegion, Result};

/// CSV writer with LF line endings.
pub struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    pub fn new(header: &[&str]) -> Result<Self> {
        let mut w = Csv(csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new()));
        w.row(header.iter().map(|s| s.to_string()))?;
        Ok(w)
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        self.0
            .write_record(fields.into_iter().collect::<Vec<_>>())
            .map_err(|e| Error::Usage(format!("csv: {e}")))
    }

    pub fn finish(self) -> Result<String> {
        let bytes = self
            .0
            .into_inner()
            .map_err(|e| Error::Usage(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Inconsistent(e.to_string()))
    }
}

/// Shortest round-trip decimal form.
pub fn num(v: f64) -> String {
    format!("{v}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwrcSchemes {
    pub nnc: bool,
    pub af: bool,
    pub cf: bool,
}

impl TwrcSchemes {
    pub const ALL: TwrcSchemes = TwrcSchemes {
        nnc: true,
        af: true,
        cf: true,
    };
}

#[derive(Debug, Clone, Copy)]
pub struct TwrcSweep {
    pub gamma: f64,
    pub power: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub steps: usize,
    pub schemes: TwrcSchemes,
}

/// `i`-th of `steps` evenly spaced points on `[lo, hi]`, snapped to 12
/// decimals so that axis labels print cleanly; endpoints are exact.
fn linspace(lo: f64, hi: f64, steps: usize, i: usize) -> f64 {
    if steps == 1 || i == 0 {
        return lo;
    }
    if i == steps - 1 {
        return hi;
    }
    let last = (steps - 1) as f64;
    let x = (lo * (last - i as f64) + hi * i as f64) / last;
    format!("{x:.12}").parse().unwrap_or(x)
}

pub fn twrc_sweep(args: &TwrcSweep, grid: &SweepGrid) -> Result<String> {
    if !(args.d_min > 0.0 && args.d_min <= args.d_max && args.d_max < 1.0) {
        return Err(Error::Usage(format!(
            "relay positions need 0 < d-min <= d-max < 1, got [{}, {}]",
            args.d_min, args.d_max
        )));
    }
    if args.steps == 0 {
        return Err(Error::Usage("--steps must be at least 1".into()));
    }
    grid.validate().map_err(|e| Error::Usage(e.to_string()))?;
    let mut out = Csv::new(&[
        "d",
        "sum_NNC",
        "sum_AF",
        "sum_CF",
        "sigma2_NNC",
        "alpha_AF",
        "sigma2_CF",
    ])?;
    for i in 0..args.steps {
        let d = linspace(args.d_min, args.d_max, args.steps, i);
        let cfg =
            TwrcConfig::new(d, args.gamma, args.power).map_err(|e| Error::Usage(e.to_string()))?;
        let run = |on: bool, s: TwrcScheme| -> Result<Option<(f64, f64)>> {
            if !on {
                return Ok(None);
            }
            let r = twrc_rates(&cfg, s, grid)?;
            Ok(Some((r.sum, r.param)))
        };
        let nnc = run(args.schemes.nnc, TwrcScheme::Nnc)?;
        let af = run(args.schemes.af, TwrcScheme::Af)?;
        let cf = run(args.schemes.cf, TwrcScheme::Cf)?;
        out.row([
            num(d),
            opt(nnc.map(|r| r.0)),
            opt(af.map(|r| r.0)),
            opt(cf.map(|r| r.0)),
            opt(nnc.map(|r| r.1)),
            opt(af.map(|r| r.1)),
            opt(cf.map(|r| r.1)),
        ])?;
    }
    out.finish()
}

#[derive(Debug, Clone, Copy)]
pub struct IrcSweep {
    /// Gains, relay link rate and power (the power is replaced per row).
    pub base: IrcConfig,
    pub p_db_min: f64,
    pub p_db_max: f64,
    pub steps: usize,
}

pub fn irc_sweep(args: &IrcSweep, grid: &SweepGrid) -> Result<String> {
    if args.steps < 2 {
        return Err(Error::Usage("--steps must be at least 2".into()));
    }
    if !(args.p_db_min.is_finite() && args.p_db_max.is_finite() && args.p_db_min <= args.p_db_max) {
        return Err(Error::Usage(format!(
            "invalid power range [{}, {}] dB",
            args.p_db_min, args.p_db_max
        )));
    }
    args.base
        .validate()
        .map_err(|e| Error::Usage(e.to_string()))?;
    grid.validate().map_err(|e| Error::Usage(e.to_string()))?;
    let mut out = Csv::new(&[
        "P_dB",
        "sum_NNC_T2",
        "sum_NNC_T3",
        "sum_NNC_best",
        "sum_CF",
        "sum_HF",
        "sigma2_NNC_T2",
        "sigma2_NNC_T3",
        "sigma2_CF",
        "sigma2_HF",
    ])?;
    for i in 0..args.steps {
        let db = linspace(args.p_db_min, args.p_db_max, args.steps, i);
        let cfg = IrcConfig {
            power: 10f64.powf(db / 10.0),
            ..args.base
        };
        let t2 = irc_rates(&cfg, IrcScheme::NncT2, grid)?;
        let t3 = irc_rates(&cfg, IrcScheme::NncT3, grid)?;
        let cf = irc_rates(&cfg, IrcScheme::Cf, grid)?;
        let hf = irc_rates(&cfg, IrcScheme::Hf, grid)?;
        out.row([
            num(db),
            num(t2.sum),
            num(t3.sum),
            num(t2.sum.max(t3.sum)),
            num(cf.sum),
            num(hf.sum),
            num(t2.sigma2),
            num(t3.sigma2),
            num(cf.sigma2),
            num(hf.sigma2),
        ])?;
    }
    out.finish()
}

pub enum GapSource {
    Config(Network),
    Random {
        nodes: usize,
        trials: usize,
        power: f64,
        seed: u64,
    },
}

/// Networks with iid standard normal gains, all nodes as destinations.
pub fn random_gaussian_networks(
    nodes: usize,
    trials: usize,
    power: f64,
    seed: u64,
) -> Result<Vec<GaussianNetwork>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let gains = (0..nodes)
                .map(|_| {
                    (0..nodes)
                        .map(|_| StandardNormal.sample(&mut rng))
                        .collect()
                })
                .collect();
            GaussianNetwork::multicast(gains, power, NodeSet::full(nodes))
        })
        .collect()
}

/// Per-cut certificate rows plus a summary row. The second value is false
/// when some cut exceeds its budget.
pub fn gap_check(source: GapSource) -> Result<(String, bool)> {
    let (nets, dests) = match source {
        GapSource::Config(Network::Gaussian(net, d)) => {
            let set = d.multicast(net.n_nodes())?;
            (vec![net], set)
        }
        GapSource::Config(other) => {
            return Err(Error::Usage(format!(
                "gap-check needs a gaussian network, got {}",
                other.kind()
            )))
        }
        GapSource::Random {
            nodes,
            trials,
            power,
            seed,
        } => {
            if !(2..=16).contains(&nodes) {
                return Err(Error::Usage(format!(
                    "--nodes must be in 2..=16, got {nodes}"
                )));
            }
            if !(power.is_finite() && power >= 0.0) {
                return Err(Error::Usage(format!(
                    "--power must be finite and nonnegative, got {power}"
                )));
            }
            (
                random_gaussian_networks(nodes, trials, power, seed)?,
                NodeSet::full(nodes),
            )
        }
    };
    let mut out = Csv::new(&[
        "trial",
        "cut_mask",
        "cut",
        "outer",
        "inner_raw",
        "gap",
        "gap_clamped",
        "budget",
        "aggregate",
        "ok",
    ])?;
    let (mut max_gap, mut max_budget, mut all_ok) = (f64::NEG_INFINITY, f64::NEG_INFINITY, true);
    let mut aggregate = 0.0;
    for (t, net) in nets.iter().enumerate() {
        let n = net.n_nodes() as f64;
        aggregate = n / 4.0 * (2.0 * n).log2();
        for row in gap_certificate(net, dests)? {
            max_gap = max_gap.max(row.gap);
            max_budget = max_budget.max(row.budget);
            all_ok &= row.ok;
            out.row([
                t.to_string(),
                row.cut.mask().to_string(),
                row.cut.to_string(),
                num(row.outer),
                num(row.inner_raw),
                num(row.gap),
                num(row.gap_clamped),
                num(row.budget),
                num(aggregate),
                row.ok.to_string(),
            ])?;
        }
    }
    out.row([
        "max".into(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        num(max_gap),
        String::new(),
        num(max_budget),
        num(aggregate),
        all_ok.to_string(),
    ])?;
    Ok((out.finish()?, all_ok))
}

pub const BOUNDS: [&str; 10] = [
    "thm1",
    "thm2",
    "thm3",
    "cutset",
    "cf_ext",
    "noiseless",
    "erasure",
    "deterministic",
    "gauss_inner",
    "gauss_outer",
];

const REPORT_HEADER: [&str; 8] = [
    "cut_mask", "cut", "dest", "target", "raw", "clamped", "positive", "penalty",
];

fn report_csv(report: &CutsetReport) -> Result<String> {
    let mut out = Csv::new(&REPORT_HEADER)?;
    for e in &report.entries {
        out.row([
            e.cut.mask().to_string(),
            e.cut.to_string(),
            e.dest.map(|d| (d + 1).to_string()).unwrap_or_default(),
            e.target.map(|t| t.to_string()).unwrap_or_default(),
            num(e.raw),
            num(e.clamped),
            num(e.positive_term),
            num(e.penalty_term),
        ])?;
    }
    out.finish()
}

fn region_csv(region: &RateRegion) -> Result<String> {
    let mut out = Csv::new(&REPORT_HEADER)?;
    for (s, v) in region.constraints() {
        out.row([
            s.mask().to_string(),
            s.to_string(),
            String::new(),
            String::new(),
            num(*v),
            num(*v),
            num(*v),
            num(0.0),
        ])?;
    }
    out.finish()
}

fn mismatch(bound: &str, net: &Network) -> Error {
    Error::Usage(format!(
        "bound {bound} does not apply to a {} network",
        net.kind()
    ))
}

/// Evaluate `bound` on `net`; `dist_path` defaults to uniform inputs with `Ŷ = Y`.
pub fn eval(bound: &str, net: &Network, dist_path: Option<&std::path::Path>) -> Result<String> {
    if !BOUNDS.contains(&bound) {
        return Err(Error::Usage(format!(
            "unknown bound {bound}; expected one of {}",
            BOUNDS.join(", ")
        )));
    }
    let n = net.n_nodes();
    let dests = net.dests();
    match (bound, net) {
        ("gauss_inner", Network::Gaussian(g, _)) => {
            report_csv(&gauss_inner_report(g, &dests.selector(n)?)?)
        }
        ("gauss_outer", Network::Gaussian(g, _)) => {
            report_csv(&gauss_outer_report(g, &dests.selector(n)?)?)
        }
        ("noiseless", Network::Noiseless(g, _)) => {
            region_csv(&noiseless_region(g, &dests.selector(n)?)?)
        }
        ("erasure", Network::Erasure(e, _)) => region_csv(&erasure_region(e, &dests.selector(n)?)?),
        ("deterministic", Network::Deterministic(d, _)) => {
            let inputs = match dist_path {
                Some(p) => load_distribution(p, &d.to_dm()?)?
                    .coding
                    .product_input()
                    .ok_or_else(|| {
                        Error::Usage("deterministic region needs plain-mode inputs".into())
                    })?,
                None => ProductInput::uniform(d.x_sizes()),
            };
            region_csv(&deterministic_region(d, &inputs, &dests.selector(n)?)?)
        }
        (
            "thm1" | "thm2" | "thm3" | "cutset" | "cf_ext",
            Network::Dm(..) | Network::Noiseless(..) | Network::Deterministic(..),
        ) => {
            let dm = net.to_dm()?;
            let dist = match dist_path {
                Some(p) => load_distribution(p, &dm)?,
                None => Distribution::default_for(&dm),
            };
            let plain = |d: &Distribution| {
                if d.coding.mode() == Mode::Plain {
                    Ok(())
                } else {
                    Err(Error::Usage(format!(
                        "bound {bound} needs a plain-mode distribution"
                    )))
                }
            };
            match bound {
                "thm1" => {
                    plain(&dist)?;
                    report_csv(&nnc_multicast_bound(
                        &dm,
                        &dist.coding,
                        dests.multicast(n)?,
                    )?)
                }
                "thm2" => {
                    plain(&dist)?;
                    report_csv(&nnc_per_cut_bound(&dm, &dist.coding)?)
                }
                "thm3" => {
                    // plain inputs are read as U_k = X_k
                    let coding = match dist.coding.mode() {
                        Mode::Plain => dist.coding.lift_to_superposition()?,
                        Mode::Superposition => dist.coding.clone(),
                    };
                    report_csv(&nnc_noise_interference_bound(&dm, &coding)?)
                }
                "cutset" => {
                    let family = dist.cutset_inputs(&dm)?;
                    report_csv(&cutset_outer_bound_max(&dm, &family, &dests.selector(n)?)?)
                }
                _ => {
                    plain(&dist)?;
                    let cf = cf_extension_bound(&dm, &dist.coding, dests.multicast(n)?)?;
                    let mut out =
                        Csv::new(&["kind", "t_mask", "t", "dest", "lhs", "rhs", "holds"])?;
                    for c in &cf.constraints {
                        out.row([
                            "constraint".into(),
                            c.t.mask().to_string(),
                            c.t.to_string(),
                            (c.d + 1).to_string(),
                            num(c.lhs),
                            num(c.rhs),
                            c.holds().to_string(),
                        ])?;
                    }
                    out.row([
                        "r_star".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        num(cf.r_star),
                        String::new(),
                        cf.feasible.to_string(),
                    ])?;
                    out.finish()
                }
            }
        }
        _ => Err(mismatch(bound, net)),
    }
}
