//! C ABI over the `nncbound` library.
//!
//! Objects are opaque heap handles created by `*_new` functions and released
//! with the matching `*_free`. Every fallible call returns an [`NncStatus`];
//! on failure, [`nnc_last_error`] describes the most recent error on the
//! calling thread. Node sets are bitmasks with bit `k` standing for node
//! `k + 1`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nncbound::cli::config::parse_distribution;
use nncbound::dm_bounds::{
    cutset_outer_bound, nnc_multicast_bound, nnc_noise_interference_bound, nnc_per_cut_bound,
    relay_cf_emz,
};
use nncbound::gauss_bounds::{
    gap_budget, gauss_cutset_outer, gauss_nnc_inner, irc_rates, twrc_rates, IrcConfig, IrcScheme,
    SweepGrid, TwrcConfig, TwrcScheme,
};
use nncbound::infocalc::{gauss_cut_rate, CodingDistribution, Mode, ProductInput};
use nncbound::netmodel::{region_from_report, DestSelector, MAX_NODES};
use nncbound::{CutsetReport, DmNetwork, Error, GaussianNetwork, NodeSet, Reduce};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Normalization = 3,
    TooLarge = 4,
    NotPositiveDefinite = 5,
    NoFeasiblePoint = 6,
    Inconsistent = 7,
    Usage = 8,
    Panic = 9,
}

impl From<&Error> for NncStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::TooManyNodes(_) | Error::StateOverflow { .. } => NncStatus::TooLarge,
            Error::Invalid(_) => NncStatus::InvalidInput,
            Error::Normalization(_) => NncStatus::Normalization,
            Error::NotPositiveDefinite => NncStatus::NotPositiveDefinite,
            Error::NoFeasiblePoint(_) => NncStatus::NoFeasiblePoint,
            Error::Inconsistent(_) => NncStatus::Inconsistent,
            Error::Usage(_) => NncStatus::Usage,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Run `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), (NncStatus, String)>>(f: F) -> NncStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NncStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NncStatus::Panic
        }
    }
}

fn lib<T>(r: nncbound::Result<T>) -> Result<T, (NncStatus, String)> {
    r.map_err(|e| (NncStatus::from(&e), e.to_string()))
}

fn null(what: &str) -> (NncStatus, String) {
    (NncStatus::NullPointer, format!("{what} is NULL"))
}

/// # Safety
/// `p` must be NULL or point to a live `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (NncStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `p` must be NULL or point to `len` readable elements.
unsafe fn slice<'a, T>(
    p: *const T,
    len: usize,
    what: &str,
) -> Result<&'a [T], (NncStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// # Safety
/// `out` must be NULL or writable.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), (NncStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn check_nodes(n: usize) -> Result<(), (NncStatus, String)> {
    if n > MAX_NODES {
        return Err((
            NncStatus::TooLarge,
            format!("{n} nodes; at most {MAX_NODES} are supported"),
        ));
    }
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nnc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nnc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `|S|/2 + ½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
#[no_mangle]
pub extern "C" fn nnc_gap_budget(s_len: usize, sc_len: usize) -> f64 {
    gap_budget(s_len, sc_len)
}

pub struct NncGaussianNetwork(GaussianNetwork);
pub struct NncDmNetwork(DmNetwork);
pub struct NncDistribution(CodingDistribution);
pub struct NncReport(CutsetReport);

/// Create a Gaussian network from an `n×n` row-major gain matrix
/// (`gains[j*n + k]` is sender `j+1` into receiver `k+1`), a per-sender
/// power, and a multicast destination mask.
///
/// # Safety
/// `gains` must point to `n*n` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_gaussian_new(
    n: usize,
    gains: *const f64,
    power: f64,
    dest_mask: u16,
    out: *mut *mut NncGaussianNetwork,
) -> NncStatus {
    guard(|| {
        check_nodes(n)?;
        let flat = slice(gains, n * n, "gains")?;
        let rows = flat.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        let net = lib(GaussianNetwork::multicast(
            rows,
            power,
            NodeSet::from_mask(dest_mask),
        ))?;
        put(out, Box::into_raw(Box::new(NncGaussianNetwork(net))), "out")
    })
}

/// # Safety
/// `net` must be NULL or a handle from [`nnc_gaussian_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nnc_gaussian_free(net: *mut NncGaussianNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Which Gaussian per-cut quantity to compute.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncGaussQuantity {
    /// `½ log|I + (P/2) G(S)G(S)ᵀ|`
    CutRate = 0,
    /// Cut rate plus `½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
    Outer = 1,
    /// Cut rate minus `|S|/2`.
    Inner = 2,
}

/// # Safety
/// `net` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_gaussian_cut(
    net: *const NncGaussianNetwork,
    quantity: NncGaussQuantity,
    cut_mask: u16,
    out: *mut f64,
) -> NncStatus {
    guard(|| {
        let net = &borrow(net, "net")?.0;
        let s = NodeSet::from_mask(cut_mask);
        let v = lib(match quantity {
            NncGaussQuantity::CutRate => gauss_cut_rate(net, s),
            NncGaussQuantity::Outer => gauss_cutset_outer(net, s),
            NncGaussQuantity::Inner => gauss_nnc_inner(net, s),
        })?;
        put(out, v, "out")
    })
}

/// Create a DM network. `channel` holds `Π|X_k| · Π|Y_k|` probabilities,
/// input index major, both indices mixed-radix with node `n` fastest.
/// `dest_masks[k]` is node `k+1`'s destination set.
///
/// # Safety
/// Array arguments must hold the stated number of elements; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_dm_new(
    n: usize,
    x_sizes: *const usize,
    y_sizes: *const usize,
    channel: *const f64,
    channel_len: usize,
    dest_masks: *const u16,
    out: *mut *mut NncDmNetwork,
) -> NncStatus {
    guard(|| {
        check_nodes(n)?;
        let x = slice(x_sizes, n, "x_sizes")?.to_vec();
        let y = slice(y_sizes, n, "y_sizes")?.to_vec();
        let ch = slice(channel, channel_len, "channel")?.to_vec();
        let d = slice(dest_masks, n, "dest_masks")?
            .iter()
            .map(|&m| NodeSet::from_mask(m))
            .collect();
        let net = lib(DmNetwork::new(x, y, ch, d))?;
        put(out, Box::into_raw(Box::new(NncDmNetwork(net))), "out")
    })
}

/// # Safety
/// `net` must be NULL or a handle from [`nnc_dm_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nnc_dm_free(net: *mut NncDmNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Built-in coding distributions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncDistributionPreset {
    /// Uniform inputs, `Ŷ_k = Y_k`.
    UniformIdentity = 0,
    /// Uniform inputs, constant `Ŷ_k`.
    UniformConstant = 1,
}

/// # Safety
/// `net` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_distribution_preset(
    net: *const NncDmNetwork,
    preset: NncDistributionPreset,
    out: *mut *mut NncDistribution,
) -> NncStatus {
    guard(|| {
        let net = &borrow(net, "net")?.0;
        let d = match preset {
            NncDistributionPreset::UniformIdentity => CodingDistribution::uniform_identity(net),
            NncDistributionPreset::UniformConstant => {
                CodingDistribution::with_constant_compression(
                    net,
                    &ProductInput::uniform(net.x_sizes()),
                )
            }
        };
        put(out, Box::into_raw(Box::new(NncDistribution(d))), "out")
    })
}

/// Parse a distribution in the JSON file format, checked against `net`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `net` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_distribution_from_json(
    net: *const NncDmNetwork,
    json: *const c_char,
    out: *mut *mut NncDistribution,
) -> NncStatus {
    guard(|| {
        let net = &borrow(net, "net")?.0;
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (NncStatus::InvalidInput, format!("json is not UTF-8: {e}")))?;
        let d = lib(parse_distribution(text, net))?;
        put(
            out,
            Box::into_raw(Box::new(NncDistribution(d.coding))),
            "out",
        )
    })
}

/// # Safety
/// `dist` must be NULL or a live distribution handle.
#[no_mangle]
pub unsafe extern "C" fn nnc_distribution_free(dist: *mut NncDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Discrete memoryless bounds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncBound {
    /// Noisy network coding, multicast to `dest_mask`.
    Multicast = 0,
    /// Noisy network coding with per-cut destinations from the network.
    PerCut = 1,
    /// Noisy network coding treating interference as noise; plain
    /// distributions are read as `U = X`.
    InterferenceAsNoise = 2,
    /// Cutset bound under the distribution's product input, multicast to `dest_mask`.
    Cutset = 3,
}

/// # Safety
/// `net` and `dist` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_bound_evaluate(
    net: *const NncDmNetwork,
    dist: *const NncDistribution,
    bound: NncBound,
    dest_mask: u16,
    out: *mut *mut NncReport,
) -> NncStatus {
    guard(|| {
        let net = &borrow(net, "net")?.0;
        let dist = &borrow(dist, "dist")?.0;
        let d = NodeSet::from_mask(dest_mask);
        let report = lib(match bound {
            NncBound::Multicast => nnc_multicast_bound(net, dist, d),
            NncBound::PerCut => nnc_per_cut_bound(net, dist),
            NncBound::InterferenceAsNoise => match dist.mode() {
                Mode::Plain => dist
                    .lift_to_superposition()
                    .and_then(|s| nnc_noise_interference_bound(net, &s)),
                Mode::Superposition => nnc_noise_interference_bound(net, dist),
            },
            NncBound::Cutset => dist
                .product_input()
                .ok_or_else(|| Error::Usage("cutset bound needs plain-mode inputs".into()))
                .and_then(|p| p.joint_pmf(net.x_sizes()))
                .and_then(|pmf| cutset_outer_bound(net, &pmf, &DestSelector::Multicast(d))),
        })?;
        put(out, Box::into_raw(Box::new(NncReport(report))), "out")
    })
}

/// Three-node relay channel compress-forward rate.
///
/// # Safety
/// `net` and `dist` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_relay_cf(
    net: *const NncDmNetwork,
    dist: *const NncDistribution,
    out: *mut f64,
) -> NncStatus {
    guard(|| {
        let v = lib(relay_cf_emz(
            &borrow(net, "net")?.0,
            &borrow(dist, "dist")?.0,
        ))?;
        put(out, v, "out")
    })
}

/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn nnc_report_free(report: *mut NncReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn nnc_report_len(report: *const NncReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.entries.len())
}

/// One report entry.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NncReportEntry {
    pub cut_mask: u16,
    /// One-based destination label, 0 when absent.
    pub dest: u16,
    /// Constrained rate subset; equals `cut_mask` unless the bound targets subsets.
    pub target_mask: u16,
    pub raw: f64,
    pub clamped: f64,
    pub positive: f64,
    pub penalty: f64,
}

/// # Safety
/// `report` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_report_entry(
    report: *const NncReport,
    index: usize,
    out: *mut NncReportEntry,
) -> NncStatus {
    guard(|| {
        let r = &borrow(report, "report")?.0;
        let e = r.entries.get(index).ok_or_else(|| {
            (
                NncStatus::InvalidInput,
                format!("index {index} out of range"),
            )
        })?;
        let entry = NncReportEntry {
            cut_mask: e.cut.mask(),
            dest: e.dest.map_or(0, |d| d as u16 + 1),
            target_mask: e.constrained_set().mask(),
            raw: e.raw,
            clamped: e.clamped,
            positive: e.positive_term,
            penalty: e.penalty_term,
        };
        put(out, entry, "out")
    })
}

/// Maximize `Σ w_k R_k` over the region of a report (minimum over
/// destinations, negatives clamped), with rates outside `active_mask` at 0.
/// Writes `+inf` when an active weighted rate is unconstrained.
///
/// # Safety
/// `weights` must hold one double per node; `report` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_report_max_weighted_sum(
    report: *const NncReport,
    weights: *const f64,
    n_weights: usize,
    active_mask: u16,
    out: *mut f64,
) -> NncStatus {
    guard(|| {
        let r = &borrow(report, "report")?.0;
        let w = slice(weights, n_weights, "weights")?;
        let region = region_from_report(r, Reduce::MinOverDestinations);
        let v = lib(region.max_weighted_sum(w, NodeSet::from_mask(active_mask)))?;
        put(out, v, "out")
    })
}

/// Scalar search resolution; zero fields take the defaults (400 points, 60 iterations).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NncGrid {
    pub points: usize,
    pub refine_iters: usize,
}

fn grid(g: NncGrid) -> SweepGrid {
    let d = SweepGrid::default_sigma2();
    SweepGrid {
        points: if g.points == 0 { d.points } else { g.points },
        refine_iters: if g.refine_iters == 0 {
            d.refine_iters
        } else {
            g.refine_iters
        },
        ..d
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncTwrcScheme {
    Nnc = 0,
    AmplifyForward = 1,
    CompressForward = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NncTwrcRates {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    /// `σ²` or `α` at the optimum.
    pub param: f64,
    /// A relay at an end node forced gain capping.
    pub flagged: bool,
}

/// Two-way relay channel rates with the relay at normalized distance `d` from node 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_twrc_rates(
    d: f64,
    gamma: f64,
    power: f64,
    scheme: NncTwrcScheme,
    resolution: NncGrid,
    out: *mut NncTwrcRates,
) -> NncStatus {
    guard(|| {
        let cfg = lib(TwrcConfig::new(d, gamma, power))?;
        let s = match scheme {
            NncTwrcScheme::Nnc => TwrcScheme::Nnc,
            NncTwrcScheme::AmplifyForward => TwrcScheme::Af,
            NncTwrcScheme::CompressForward => TwrcScheme::Cf,
        };
        let r = lib(twrc_rates(&cfg, s, &grid(resolution)))?;
        put(
            out,
            NncTwrcRates {
                r1: r.r1,
                r2: r.r2,
                sum: r.sum,
                param: r.param,
                flagged: r.flagged,
            },
            "out",
        )
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NncIrcConfig {
    pub g13: f64,
    pub g23: f64,
    pub g14: f64,
    pub g24: f64,
    pub g15: f64,
    pub g25: f64,
    pub r0: f64,
    pub power: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NncIrcScheme {
    /// Noisy network coding, both receivers decode both messages.
    NncDecodeBoth = 0,
    /// Noisy network coding, interference treated as noise.
    NncInterferenceAsNoise = 1,
    CompressForward = 2,
    HashForward = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NncIrcRates {
    pub sum: f64,
    pub sigma2: f64,
    /// Evaluated in the zero relay-rate limit.
    pub flagged: bool,
}

/// Interference relay channel sum rate.
///
/// # Safety
/// `cfg` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnc_irc_rates(
    cfg: *const NncIrcConfig,
    scheme: NncIrcScheme,
    resolution: NncGrid,
    out: *mut NncIrcRates,
) -> NncStatus {
    guard(|| {
        let c = borrow(cfg, "cfg")?;
        let cfg = IrcConfig {
            g13: c.g13,
            g23: c.g23,
            g14: c.g14,
            g24: c.g24,
            g15: c.g15,
            g25: c.g25,
            r0: c.r0,
            power: c.power,
        };
        let s = match scheme {
            NncIrcScheme::NncDecodeBoth => IrcScheme::NncT2,
            NncIrcScheme::NncInterferenceAsNoise => IrcScheme::NncT3,
            NncIrcScheme::CompressForward => IrcScheme::Cf,
            NncIrcScheme::HashForward => IrcScheme::Hf,
        };
        let r = lib(irc_rates(&cfg, s, &grid(resolution)))?;
        put(
            out,
            NncIrcRates {
                sum: r.sum,
                sigma2: r.sigma2,
                flagged: r.flagged,
            },
            "out",
        )
    })
}
