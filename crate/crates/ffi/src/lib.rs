//! C ABI for the `isomin` library.
//!
//! Results live behind opaque handles that the caller releases with the
//! matching `*_free` function. Every entry point returns an [`IsominStatus`]
//! (or a sentinel value for accessors); the message of the most recent
//! failure on the calling thread is available from [`isomin_last_error`].
//! Strings returned by accessors are owned by the handle and stay valid
//! until it is freed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isomin::cli::build_pair;
use isomin::cli::config::{ConfigMap, RunConfig};
use isomin::geometry::{check_dual_pair, principal_curvatures, FundamentalForms, GeometryError, PairSettings};
use isomin::verify::context::Context;
use isomin::verify::engine::{Status, DEFAULT_SEED};
use isomin::verify::run::{run_all, VerificationReport};

/// Result codes. The first four match the exit codes of the command line.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IsominStatus {
    Ok = 0,
    /// A certificate or numerical check failed; the handle is still filled.
    Failed = 1,
    /// Bad configuration or arguments.
    Config = 2,
    /// The requested construction cannot exist for these parameters.
    Obstruction = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Outcome of a single certificate.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IsominCertificateStatus {
    ProvedEqual = 0,
    Counterexample = 1,
    Invalid = 2,
    EngineDivergence = 3,
}

/// Opaque result of [`isomin_verify`].
pub struct IsominVerifyReport {
    report: VerificationReport,
    names: Vec<CString>,
    json: CString,
}

/// Opaque result of [`isomin_pair_check`].
pub struct IsominPairReport {
    names: Vec<CString>,
    max: Vec<f64>,
    tol: Vec<f64>,
    pass: Vec<bool>,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn cstring(s: impl Into<String>) -> CString {
    CString::new(s.into().replace('\0', " ")).expect("nul bytes removed")
}

/// Runs `f`, turning panics into [`IsominStatus::Panic`] and recording the
/// message of every non-`Ok` status.
fn guard(f: impl FnOnce() -> Result<IsominStatus, (IsominStatus, String)>) -> IsominStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            IsominStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (IsominStatus, String)> {
    if p.is_null() {
        return Err((IsominStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (IsominStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn geometry_status(e: &GeometryError) -> IsominStatus {
    match e {
        GeometryError::Obstruction { .. } => IsominStatus::Obstruction,
        GeometryError::NotImmersion { .. } | GeometryError::NotPositiveDefinite => IsominStatus::Failed,
        _ => IsominStatus::Config,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn isomin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last non-`Ok` status on this thread, or an empty string.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn isomin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Runs the identity certificates whose names match the glob `filter`
/// (`"*"` for all) with the built-in fixtures. `seed == 0` selects the
/// default seed. Returns `Ok` when every certificate is proved, `Failed`
/// otherwise; in both cases `*out` receives a report.
///
/// # Safety
/// `filter` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isomin_verify(
    filter: *const c_char,
    seed: u64,
    out: *mut *mut IsominVerifyReport,
) -> IsominStatus {
    guard(|| {
        if out.is_null() {
            return Err((IsominStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let filter = str_arg(filter, "filter")?;
        let seed = if seed == 0 { DEFAULT_SEED } else { seed };
        let report = run_all(&Context::embedded(), filter, seed)
            .map_err(|e| (IsominStatus::Config, format!("bad filter `{filter}`: {e}")))?;
        let status = if report.all_passed() { IsominStatus::Ok } else { IsominStatus::Failed };
        if status != IsominStatus::Ok {
            set_error(format!("{} of {} certificates failed", report.failed, report.certificates.len()));
        }
        let names = report.certificates.iter().map(|c| cstring(c.name.clone())).collect();
        let json = cstring(report.to_json());
        *out = Box::into_raw(Box::new(IsominVerifyReport { report, names, json }));
        Ok(status)
    })
}

/// Number of certificates in the report (0 for a null handle).
///
/// # Safety
/// `r` must be null or a live handle from [`isomin_verify`].
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_count(r: *const IsominVerifyReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.certificates.len())
}

/// Number of proved certificates.
///
/// # Safety
/// As for [`isomin_verify_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_passed(r: *const IsominVerifyReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.passed)
}

/// Name of certificate `i` (sorted by name), or null when out of range.
///
/// # Safety
/// As for [`isomin_verify_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_name(r: *const IsominVerifyReport, i: usize) -> *const c_char {
    r.as_ref().and_then(|r| r.names.get(i)).map_or(ptr::null(), |s| s.as_ptr())
}

/// Status of certificate `i`. Returns `Invalid` when out of range.
///
/// # Safety
/// As for [`isomin_verify_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_status(r: *const IsominVerifyReport, i: usize) -> IsominCertificateStatus {
    match r.as_ref().and_then(|r| r.report.certificates.get(i)).map(|c| &c.status) {
        Some(Status::ProvedEqual) => IsominCertificateStatus::ProvedEqual,
        Some(Status::Counterexample { .. }) => IsominCertificateStatus::Counterexample,
        Some(Status::EngineDivergence { .. }) => IsominCertificateStatus::EngineDivergence,
        Some(Status::Invalid { .. }) | None => IsominCertificateStatus::Invalid,
    }
}

/// The full report as JSON.
///
/// # Safety
/// As for [`isomin_verify_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_json(r: *const IsominVerifyReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Releases a verification report. Null is ignored.
///
/// # Safety
/// `r` must be null or a handle from [`isomin_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isomin_verify_free(r: *mut IsominVerifyReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Builds and checks a pair of hypersurfaces. `config` holds `key = value`
/// lines in the format of the command line's `--config` files (the
/// `isomin schema` command lists the keys); unset keys keep their defaults.
/// Returns `Ok` or `Failed` with `*out` set, `Obstruction` when the pair
/// cannot exist, `Config` for bad input.
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check(config: *const c_char, out: *mut *mut IsominPairReport) -> IsominStatus {
    guard(|| {
        if out.is_null() {
            return Err((IsominStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let text = str_arg(config, "config")?;
        let mut map = ConfigMap::defaults();
        map.apply_text(text).map_err(|e| (IsominStatus::Config, e.to_string()))?;
        let cfg = RunConfig::from_map(map).map_err(|e| (IsominStatus::Config, e.to_string()))?;
        let geo = |e: GeometryError| (geometry_status(&e), e.to_string());
        let b = build_pair(&cfg).map_err(geo)?;
        let settings =
            PairSettings { grid: cfg.grid, derivatives: cfg.derivatives, gauss_step: cfg.gauss_step, tol: cfg.tol };
        let report = check_dual_pair(&b.f, &b.ft, b.kind, &settings).map_err(geo)?;
        let json = serde_json::json!({
            "kind": report.kind,
            "c": report.c,
            "ct": report.ct,
            "settings": report.settings,
            "checks": report.checks,
        });
        let status = if report.pass() { IsominStatus::Ok } else { IsominStatus::Failed };
        if status != IsominStatus::Ok {
            let bad: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            set_error(format!("failed checks: {}", bad.join(", ")));
        }
        let c = &report.checks;
        *out = Box::into_raw(Box::new(IsominPairReport {
            names: c.iter().map(|c| cstring(c.name.clone())).collect(),
            max: c.iter().map(|c| c.max).collect(),
            tol: c.iter().map(|c| c.tol).collect(),
            pass: c.iter().map(|c| c.pass).collect(),
            json: cstring(json.to_string()),
        }));
        Ok(status)
    })
}

/// Number of checks in the pair report.
///
/// # Safety
/// `r` must be null or a live handle from [`isomin_pair_check`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_count(r: *const IsominPairReport) -> usize {
    r.as_ref().map_or(0, |r| r.names.len())
}

/// Name of check `i`, or null when out of range.
///
/// # Safety
/// As for [`isomin_pair_check_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_name(r: *const IsominPairReport, i: usize) -> *const c_char {
    r.as_ref().and_then(|r| r.names.get(i)).map_or(ptr::null(), |s| s.as_ptr())
}

/// Worst residual of check `i` over the grid, NaN when out of range.
///
/// # Safety
/// As for [`isomin_pair_check_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_max(r: *const IsominPairReport, i: usize) -> f64 {
    r.as_ref().and_then(|r| r.max.get(i)).copied().unwrap_or(f64::NAN)
}

/// Tolerance of check `i`, NaN when out of range.
///
/// # Safety
/// As for [`isomin_pair_check_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_tol(r: *const IsominPairReport, i: usize) -> f64 {
    r.as_ref().and_then(|r| r.tol.get(i)).copied().unwrap_or(f64::NAN)
}

/// Whether check `i` is within tolerance (false when out of range).
///
/// # Safety
/// As for [`isomin_pair_check_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_pass(r: *const IsominPairReport, i: usize) -> bool {
    r.as_ref().and_then(|r| r.pass.get(i)).copied().unwrap_or(false)
}

/// Check summary as JSON (samples are not included).
///
/// # Safety
/// As for [`isomin_pair_check_count`].
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_json(r: *const IsominPairReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Releases a pair report. Null is ignored.
///
/// # Safety
/// `r` must be null or a handle from [`isomin_pair_check`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isomin_pair_check_free(r: *mut IsominPairReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Principal curvatures (ascending) of the shape operator `I^{-1} II`, from
/// row-major 3x3 first and second fundamental forms. `Config` when `first`
/// is not positive definite.
///
/// # Safety
/// `first` and `second` must point to 9 doubles, `out` to 3.
#[no_mangle]
pub unsafe extern "C" fn isomin_principal_curvatures(
    first: *const f64,
    second: *const f64,
    out: *mut f64,
) -> IsominStatus {
    guard(|| {
        if first.is_null() || second.is_null() || out.is_null() {
            return Err((IsominStatus::NullPointer, "null matrix pointer".into()));
        }
        let a = std::slice::from_raw_parts(first, 9);
        let b = std::slice::from_raw_parts(second, 9);
        let sym = |m: &[f64]| std::array::from_fn(|i| std::array::from_fn(|j| 0.5 * (m[3 * i + j] + m[3 * j + i])));
        let ff = FundamentalForms { first: sym(a), second: sym(b), normal: Vec::new(), point: Vec::new() };
        let p = principal_curvatures(&ff).map_err(|e| (IsominStatus::Config, e.to_string()))?;
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&p.lambda);
        Ok(IsominStatus::Ok)
    })
}
