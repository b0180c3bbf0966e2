//! Command-line front end: `nncbound twrc-sweep|irc-sweep|gap-check|eval`.
//!
//! Exit status is 0 on success, 2 for usage, schema and input errors, and
//! 3 for numerical failures (no feasible point, non-positive-definite
//! matrices, failed consistency or gap checks).

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::gauss_bounds::{IrcConfig, SweepGrid};
use crate::Error;
use commands::{GapSource, IrcSweep, TwrcSchemes, TwrcSweep};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nncbound",
    version,
    about = "Capacity inner and outer bounds for noisy networks"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Log-spaced grid points for each scalar parameter search.
    #[arg(long, global = true, default_value_t = 400)]
    pub grid_points: usize,
    /// Golden-section iterations around the best grid point.
    #[arg(long, global = true, default_value_t = 60)]
    pub refine_iters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwrcSchemeArg {
    Nnc,
    Af,
    Cf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GainReading {
    /// g13 = 0.1, g23 = 0.5
    Default,
    /// g13 = 0.5, g23 = 0.1
    Swapped,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-way relay channel sum rates as the relay moves between the end nodes.
    #[command(
        long_about = "Two-way relay channel sum rates as the relay moves between the end nodes.\n\n\
        Nodes 1 and 2 exchange messages; relay 3 sits at distance d from node 1, with gains \
        g13 = d^(-gamma/2), g23 = (1-d)^(-gamma/2) and a unit direct link.\n\n\
        NNC: noisy network coding with Gaussian quantization noise sigma2, per-user rate \
        min{C((g13^2 P + (1+sigma2) g12^2 P)/(1+sigma2)), C(g12^2 P + g32^2 P) - C(1/sigma2)}, \
        sigma2 searched on the grid.\n\
        AF: amplify-forward, R_k = 1/2 log((a_k + sqrt(a_k^2 - b_k^2))/2), amplification alpha \
        searched up to the relay power limit.\n\
        CF: compress-forward with Wyner-Ziv binning, evaluated at the smallest sigma2 for which \
        the bin index is decodable.\n\n\
        Columns: d, sum_NNC, sum_AF, sum_CF, sigma2_NNC, alpha_AF, sigma2_CF."
    )]
    TwrcSweep {
        /// Path-loss exponent.
        #[arg(long, default_value_t = 3.0)]
        gamma: f64,
        /// Transmit power of every node (linear).
        #[arg(long, default_value_t = 10.0)]
        power: f64,
        #[arg(long, default_value_t = 0.05)]
        d_min: f64,
        #[arg(long, default_value_t = 0.5)]
        d_max: f64,
        /// Number of evenly spaced relay positions.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Schemes to evaluate; omitted schemes leave empty cells.
        #[arg(long, value_delimiter = ',', default_value = "nnc,af,cf")]
        schemes: Vec<TwrcSchemeArg>,
    },
    /// Interference relay channel sum rates over a power sweep.
    #[command(
        long_about = "Interference relay channel sum rates over a power sweep.\n\n\
        Senders 1 and 2 target receivers 4 and 5; relay 3 forwards over a noiseless link of \
        rate r0 to both receivers. Y_j = g1j X1 + g2j X2 + Z_j.\n\n\
        NNC_T2: noisy network coding with both receivers decoding both messages \
        (two per-user caps and four sum-rate caps, solved as a linear program per sigma2).\n\
        NNC_T3: noisy network coding treating interference as noise (per-user minimum of the \
        hashed and relay-aided forms).\n\
        CF: compress-forward with binning; sigma2 bounded below by the relay link rate.\n\
        HF: hash-forward with list decoding; sigma2 bounded above by the relay link rate.\n\n\
        Columns: P_dB, sum_NNC_T2, sum_NNC_T3, sum_NNC_best, sum_CF, sum_HF, then the optimal \
        sigma2 of each scheme."
    )]
    IrcSweep {
        /// Preset relay gains; individual --gXY flags override.
        #[arg(long, value_enum, default_value_t = GainReading::Default)]
        gain_reading: GainReading,
        #[arg(long)]
        g13: Option<f64>,
        #[arg(long)]
        g23: Option<f64>,
        #[arg(long)]
        g14: Option<f64>,
        #[arg(long)]
        g24: Option<f64>,
        #[arg(long)]
        g15: Option<f64>,
        #[arg(long)]
        g25: Option<f64>,
        /// Relay link rate in bits per channel use.
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 0.0)]
        p_db_min: f64,
        #[arg(long, default_value_t = 30.0)]
        p_db_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Per-cut gap between the Gaussian cutset bound and the noisy network coding inner bound.
    #[command(
        long_about = "Per-cut gap between the Gaussian cutset bound and the noisy network coding inner bound.\n\n\
        outer = 1/2 log|I + (P/2) G(S)G(S)^T| + 1/2 min{|S|,|S^c|} log(2|S|)\n\
        inner = 1/2 log|I + (P/2) G(S)G(S)^T| - |S|/2\n\
        budget = |S|/2 + 1/2 min{|S|,|S^c|} log(2|S|)\n\n\
        Each row reports outer, inner, gap = outer - inner, gap with the inner value clamped at 0, \
        the per-cut budget, the aggregate (N/4) log(2N) for reference, and whether gap <= budget. \
        A final row holds the maxima. Networks come from --config or are drawn with iid standard \
        normal gains from --seed."
    )]
    GapCheck {
        /// Gaussian network file; random networks are drawn when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        nodes: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        power: f64,
    },
    /// Evaluate one bound on a network file.
    #[command(long_about = "Evaluate one bound on a network file.\n\n\
        thm1: noisy network coding, multicast to the union of destination sets.\n\
        thm2: noisy network coding with per-cut destinations D(S).\n\
        thm3: noisy network coding treating interference as noise; plain distributions are read as U = X.\n\
        cutset: I(X(S); Y(S^c) | X(S^c)), maximized over the input family when one is given.\n\
        cf_ext: single-source compress-forward without compression-index decoding.\n\
        noiseless, erasure, deterministic: closed-form cut values.\n\
        gauss_inner, gauss_outer: Gaussian per-cut inner and loosened outer values.\n\n\
        The distribution file defaults to uniform inputs with Yhat = Y.")]
    Eval {
        #[arg(long)]
        bound: String,
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        dist: Option<PathBuf>,
    },
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        EXIT_USAGE
    } else {
        EXIT_NUMERICAL
    }
}

fn grid(common: &Common) -> Result<SweepGrid, Error> {
    let g = SweepGrid::default_sigma2();
    SweepGrid::new(g.lo, g.hi, common.grid_points, common.refine_iters)
        .map_err(|e| Error::Usage(e.to_string()))
}

/// Run a parsed command; returns the CSV text and whether it certifies success.
pub fn execute(cli: &Cli) -> Result<(String, bool), Error> {
    let grid = grid(&cli.common)?;
    match &cli.command {
        Command::TwrcSweep {
            gamma,
            power,
            d_min,
            d_max,
            steps,
            schemes,
        } => {
            let schemes = TwrcSchemes {
                nnc: schemes.contains(&TwrcSchemeArg::Nnc),
                af: schemes.contains(&TwrcSchemeArg::Af),
                cf: schemes.contains(&TwrcSchemeArg::Cf),
            };
            let args = TwrcSweep {
                gamma: *gamma,
                power: *power,
                d_min: *d_min,
                d_max: *d_max,
                steps: *steps,
                schemes,
            };
            Ok((commands::twrc_sweep(&args, &grid)?, true))
        }
        Command::IrcSweep {
            gain_reading,
            g13,
            g23,
            g14,
            g24,
            g15,
            g25,
            r0,
            p_db_min,
            p_db_max,
            steps,
        } => {
            let preset = match gain_reading {
                GainReading::Default => IrcConfig::reference(1.0),
                GainReading::Swapped => IrcConfig::reference_swapped(1.0),
            };
            let base = IrcConfig {
                g13: g13.unwrap_or(preset.g13),
                g23: g23.unwrap_or(preset.g23),
                g14: g14.unwrap_or(preset.g14),
                g24: g24.unwrap_or(preset.g24),
                g15: g15.unwrap_or(preset.g15),
                g25: g25.unwrap_or(preset.g25),
                r0: *r0,
                power: 1.0,
            };
            let args = IrcSweep {
                base,
                p_db_min: *p_db_min,
                p_db_max: *p_db_max,
                steps: *steps,
            };
            Ok((commands::irc_sweep(&args, &grid)?, true))
        }
        Command::GapCheck {
            config,
            nodes,
            trials,
            power,
        } => {
            let source = match config {
                Some(path) => GapSource::Config(config::load_network(path)?),
                None => GapSource::Random {
                    nodes: *nodes,
                    trials: *trials,
                    power: *power,
                    seed: cli.common.seed,
                },
            };
            commands::gap_check(source)
        }
        Command::Eval {
            bound,
            network,
            dist,
        } => {
            let net = config::load_network(network)?;
            Ok((commands::eval(bound, &net, dist.as_deref())?, true))
        }
    }
}

/// Parse arguments, run, write output and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (text, certified) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.common.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if !certified {
        eprintln!("error: some cut exceeds its gap budget");
        return EXIT_NUMERICAL;
    }
    0
}
