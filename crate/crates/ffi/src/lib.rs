//! C ABI for the mmshare simulator.
//!
//! Configs and scenario results cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! function returns an [`MmsStatus`]; on failure a message is available from
//! [`mms_last_error`] on the same thread until the next call into the
//! library. Strings handed out by the library are freed with
//! [`mms_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mmshare::allocation::user_rate;
use mmshare::analytic::{bandwidth_per_ue, outage_fraction};
use mmshare::channel::{noise_power_dbm, path_loss_db, LinkState};
use mmshare::config::ExperimentConfig;
use mmshare::experiment::{run_gap, run_scenario, run_sweep, ScenarioOutcome};
use mmshare::geometry::avg_cell_radius;
use mmshare::scenario::ScenarioKind;
use mmshare::Error;

/// Result of every fallible call. The simulation codes match the CLI exit
/// codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmsStatus {
    Ok = 0,
    ConfigError = 2,
    RuntimeError = 3,
    InstanceSize = 4,
    NullArgument = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// Values accepted wherever a function takes a scenario `kind`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmsScenario {
    NoSharing = 0,
    Spectrum = 1,
    SpectrumInfra = 2,
    SpectrumAccess = 3,
}

/// Values accepted by [`mms_path_loss_db`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmsLinkState {
    Los = 0,
    Nlos = 1,
}

/// Opaque experiment configuration.
pub struct MmsConfig(ExperimentConfig);

/// Opaque per-user results of one scenario run.
pub struct MmsResults(ScenarioOutcome);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MmsSummary {
    pub users: usize,
    pub median_sinr_db: f64,
    pub median_rate_bps: f64,
    pub p05_rate_bps: f64,
    pub mean_rate_bps: f64,
    pub outage_fraction: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MmsSweepRow {
    pub density_bs_km2: f64,
    pub median_rate_bps: f64,
    pub p05_rate_bps: f64,
    pub mean_rate_bps: f64,
    pub outage_fraction: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MmsGapRow {
    pub instance_id: u64,
    pub blind_sum_rate_bps: f64,
    pub ub_sum_rate_bps: f64,
    pub gap_percent: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Null(&'static str),
    Invalid(String),
    Sim(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Sim(e)
    }
}

fn record(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MmsStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MmsStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            record(format!("{name} must not be null"));
            MmsStatus::NullArgument
        }
        Ok(Err(Failure::Invalid(msg))) => {
            record(msg);
            MmsStatus::InvalidArgument
        }
        Ok(Err(Failure::Sim(e))) => {
            record(e.to_string());
            match e.exit_code() {
                2 => MmsStatus::ConfigError,
                4 => MmsStatus::InstanceSize,
                _ => MmsStatus::RuntimeError,
            }
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            record(format!("internal panic: {what}"));
            MmsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn borrow_mut<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

fn scenario_kind(kind: i32) -> Result<ScenarioKind, Failure> {
    usize::try_from(kind)
        .ok()
        .and_then(|i| ScenarioKind::ALL.get(i).copied())
        .ok_or_else(|| Failure::Invalid(format!("unknown scenario kind {kind}")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Invalid("string contains an interior NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn mms_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_config_default(out: *mut *mut MmsConfig) -> MmsStatus {
    guard(|| write(out, Box::into_raw(Box::new(MmsConfig(ExperimentConfig::default()))), "out"))
}

/// Parses and validates a JSON config. Missing keys take their defaults.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_config_from_json(json: *const c_char, out: *mut *mut MmsConfig) -> MmsStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure::Invalid(format!("config is not UTF-8: {e}")))?;
        let cfg = ExperimentConfig::from_json_str(text)?;
        write(out, Box::into_raw(Box::new(MmsConfig(cfg))), "out")
    })
}

/// Pretty JSON of the full config; free with [`mms_string_free`].
///
/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_config_to_json(cfg: *const MmsConfig, out: *mut *mut c_char) -> MmsStatus {
    guard(|| {
        let cfg = borrow(cfg, "cfg")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        write(out, into_c_string(cfg.0.to_json_pretty())?, "out")
    })
}

/// Hex SHA-256 written into artifact headers; free with [`mms_string_free`].
///
/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_config_hash(cfg: *const MmsConfig, out: *mut *mut c_char) -> MmsStatus {
    guard(|| {
        let cfg = borrow(cfg, "cfg")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        write(out, into_c_string(cfg.0.config_hash())?, "out")
    })
}

/// # Safety
/// `cfg` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mms_config_free(cfg: *mut MmsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mms_config_set_seed(cfg: *mut MmsConfig, seed: u64) -> MmsStatus {
    guard(|| {
        borrow_mut(cfg, "cfg")?.0.master_seed = seed;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mms_config_set_drops(cfg: *mut MmsConfig, drops: usize) -> MmsStatus {
    guard(|| {
        if drops == 0 {
            return Err(Failure::Invalid("drops must be >= 1".into()));
        }
        borrow_mut(cfg, "cfg")?.0.drops = drops;
        Ok(())
    })
}

/// `kind` is an [`MmsScenario`] value.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mms_config_set_scenario(cfg: *mut MmsConfig, kind: i32) -> MmsStatus {
    guard(|| {
        let kind = scenario_kind(kind)?;
        borrow_mut(cfg, "cfg")?.0.scenario.kind = kind;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mms_config_set_interference(cfg: *mut MmsConfig, enabled: bool) -> MmsStatus {
    guard(|| {
        borrow_mut(cfg, "cfg")?.0.interference = enabled;
        Ok(())
    })
}

/// Runs `drops` drops of the config's scenario at its base-station density.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_run_scenario(cfg: *const MmsConfig, out: *mut *mut MmsResults) -> MmsStatus {
    guard(|| {
        let cfg = &borrow(cfg, "cfg")?.0;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let outcome = run_scenario(cfg, cfg.scenario.kind)?;
        write(out, Box::into_raw(Box::new(MmsResults(outcome))), "out")
    })
}

/// Number of users pooled in `res`, or 0 for NULL.
///
/// # Safety
/// `res` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mms_results_len(res: *const MmsResults) -> usize {
    res.as_ref().map_or(0, |r| r.0.users.rate_bps.len())
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, capacity: usize) -> Result<(), Failure> {
    if buf.is_null() {
        return Err(Failure::Null("buf"));
    }
    if capacity < values.len() {
        return Err(Failure::Invalid(format!("buffer holds {capacity} values, {} needed", values.len())));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Copies per-user rates (bps) in drop and user order.
///
/// # Safety
/// `res` must be a live handle; `buf` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn mms_results_rates(res: *const MmsResults, buf: *mut f64, capacity: usize) -> MmsStatus {
    guard(|| copy_out(&borrow(res, "res")?.0.users.rate_bps, buf, capacity))
}

/// Copies per-user SINR in dB; unserved users are `-inf`.
///
/// # Safety
/// `res` must be a live handle; `buf` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn mms_results_sinr_db(res: *const MmsResults, buf: *mut f64, capacity: usize) -> MmsStatus {
    guard(|| copy_out(&borrow(res, "res")?.0.users.sinr_db, buf, capacity))
}

/// # Safety
/// `res` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_results_summary(res: *const MmsResults, out: *mut MmsSummary) -> MmsStatus {
    guard(|| {
        let s = &borrow(res, "res")?.0.summary;
        let summary = MmsSummary {
            users: s.users,
            median_sinr_db: s.median_sinr_db,
            median_rate_bps: s.median_rate_bps,
            p05_rate_bps: s.p05_rate_bps,
            mean_rate_bps: s.mean_rate_bps,
            outage_fraction: s.outage_fraction,
        };
        write(out, summary, "out")
    })
}

/// Nearest-rank percentile of the pooled rates, `p` in [0, 1].
///
/// # Safety
/// `res` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_results_rate_percentile(res: *const MmsResults, p: f64, out: *mut f64) -> MmsStatus {
    guard(|| {
        let v = borrow(res, "res")?.0.rate_cdf.percentile(p)?;
        write(out, v, "out")
    })
}

/// # Safety
/// `res` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mms_results_free(res: *mut MmsResults) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Sweeps the config's scenario over `n` densities, writing one row per
/// density into `rows`. `fitted_exponent` may be NULL; otherwise it receives
/// the log-log slope of the mean rate, or NaN with fewer than three points.
///
/// # Safety
/// `cfg` must be a live handle; `densities` must hold `n` doubles and `rows`
/// `n` rows.
#[no_mangle]
pub unsafe extern "C" fn mms_run_sweep(
    cfg: *const MmsConfig,
    densities: *const f64,
    n: usize,
    rows: *mut MmsSweepRow,
    fitted_exponent: *mut f64,
) -> MmsStatus {
    guard(|| {
        let cfg = &borrow(cfg, "cfg")?.0;
        if densities.is_null() {
            return Err(Failure::Null("densities"));
        }
        if rows.is_null() {
            return Err(Failure::Null("rows"));
        }
        let densities = std::slice::from_raw_parts(densities, n);
        let run = run_sweep(cfg, densities, cfg.drops)?;
        let r = &run.result;
        for i in 0..n {
            rows.add(i).write(MmsSweepRow {
                density_bs_km2: r.densities[i],
                median_rate_bps: r.median_rate[i],
                p05_rate_bps: r.p05_rate[i],
                mean_rate_bps: r.mean_rate[i],
                outage_fraction: r.outage_fraction[i],
            });
        }
        if !fitted_exponent.is_null() {
            fitted_exponent.write(r.fitted_exponent.unwrap_or(f64::NAN));
        }
        Ok(())
    })
}

/// Blind versus exhaustive association on `gap.instances` small instances
/// of the config's scenario. `count` always receives the instance count; the
/// call fails with `INVALID_ARGUMENT` before running when `capacity` is
/// smaller, so `rows` may be NULL to query the size.
///
/// # Safety
/// `cfg` must be a live handle; `rows` must hold `capacity` rows;
/// `count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_run_gap(
    cfg: *const MmsConfig,
    rows: *mut MmsGapRow,
    capacity: usize,
    count: *mut usize,
) -> MmsStatus {
    guard(|| {
        let cfg = &borrow(cfg, "cfg")?.0;
        let needed = cfg.gap.instances;
        write(count, needed, "count")?;
        if capacity < needed {
            return Err(Failure::Invalid(format!("{needed} rows needed, capacity {capacity}")));
        }
        if rows.is_null() {
            return Err(Failure::Null("rows"));
        }
        for (i, rec) in run_gap(cfg)?.into_iter().enumerate() {
            rows.add(i).write(MmsGapRow {
                instance_id: rec.instance_id,
                blind_sum_rate_bps: rec.blind_sum_rate_bps,
                ub_sum_rate_bps: rec.ub_sum_rate_bps,
                gap_percent: rec.gap_percent,
            });
        }
        Ok(())
    })
}

/// Mean cell radius in metres for a density per km².
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_avg_cell_radius(density: f64, out: *mut f64) -> MmsStatus {
    guard(|| write(out, avg_cell_radius(density)?, "out"))
}

/// Rate in bps for a linear SINR over `bandwidth_hz`, using the rate
/// parameters of `cfg`, or the defaults when `cfg` is NULL.
///
/// # Safety
/// `cfg` must be NULL or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_user_rate(cfg: *const MmsConfig, gamma: f64, bandwidth_hz: f64, out: *mut f64) -> MmsStatus {
    guard(|| {
        let defaults = ExperimentConfig::default();
        let params = &cfg.as_ref().map_or(&defaults, |c| &c.0).rate;
        write(out, user_rate(gamma, bandwidth_hz, params)?, "out")
    })
}

/// `max(1 - A_c * rho, 0)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_outage_fraction(coverage_area_km2: f64, rho: f64, out: *mut f64) -> MmsStatus {
    guard(|| write(out, outage_fraction(coverage_area_km2, rho)?, "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_bandwidth_per_ue(
    total_bandwidth_hz: f64,
    num_bs: usize,
    num_ue: usize,
    num_operators: usize,
    sharing: bool,
    out: *mut f64,
) -> MmsStatus {
    guard(|| write(out, bandwidth_per_ue(total_bandwidth_hz, num_bs, num_ue, num_operators, sharing)?, "out"))
}

/// Thermal noise plus noise figure over `bandwidth_hz`, in dBm.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64, out: *mut f64) -> MmsStatus {
    guard(|| write(out, noise_power_dbm(bandwidth_hz, noise_figure_db)?, "out"))
}

/// Path loss in dB at `distance_m` for an [`MmsLinkState`] value, with the
/// channel parameters of `cfg`, or the defaults when `cfg` is NULL.
///
/// # Safety
/// `cfg` must be NULL or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mms_path_loss_db(cfg: *const MmsConfig, distance_m: f64, state: i32, out: *mut f64) -> MmsStatus {
    guard(|| {
        let state = match state {
            0 => LinkState::Los,
            1 => LinkState::Nlos,
            other => return Err(Failure::Invalid(format!("unknown link state {other}"))),
        };
        let defaults = ExperimentConfig::default();
        let params = &cfg.as_ref().map_or(&defaults, |c| &c.0).channel;
        write(out, path_loss_db(distance_m, state, params)?, "out")
    })
}
