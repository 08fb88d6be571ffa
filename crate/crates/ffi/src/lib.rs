//! C ABI over the `trinomia` library.
//!
//! Conventions:
//! * Every fallible function returns a [`TrinomiaStatus`]; on failure a
//!   message is available from [`trinomia_last_error`] on the same thread.
//! * Results live behind opaque handles created by `trinomia_*_new`-style
//!   functions and released with the matching `*_free`.
//! * Strings returned through `char **` out-parameters are owned by the
//!   caller and released with [`trinomia_string_free`].
//! * Complex parameters are passed as literals: `"0.1"`, `"1/4"`,
//!   `"0.3+0.1i"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trinomia::hyper::HyperError;
use trinomia::numeric::ComplexLiteral;
use trinomia::TrinomialError;

mod roots;
mod series;
mod solve;

pub use roots::*;
pub use series::*;
pub use solve::*;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrinomiaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Input outside the domain of the requested method.
    Domain = 3,
    BudgetExceeded = 4,
    NoConvergence = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) struct Failure {
    status: TrinomiaStatus,
    message: String,
}

impl Failure {
    pub(crate) fn new(status: TrinomiaStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }

    pub(crate) fn null(what: &str) -> Self {
        Failure::new(TrinomiaStatus::NullPointer, format!("{what} is null"))
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Failure::new(TrinomiaStatus::InvalidArgument, message)
    }
}

impl From<TrinomialError> for Failure {
    fn from(e: TrinomialError) -> Self {
        let status = match &e {
            TrinomialError::InvalidDegree(_) => TrinomiaStatus::InvalidArgument,
            TrinomialError::NonContraction { .. } | TrinomialError::NonConvergence { .. } => TrinomiaStatus::NoConvergence,
            TrinomialError::Hyper(HyperError::BudgetExceeded { .. }) => TrinomiaStatus::BudgetExceeded,
            _ => TrinomiaStatus::Domain,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into a status.
pub(crate) fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TrinomiaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrinomiaStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal panic".into());
            set_last_error(&msg);
            TrinomiaStatus::Panic
        }
    }
}

pub(crate) unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

pub(crate) unsafe fn read_literal(p: *const c_char) -> Result<ComplexLiteral, Failure> {
    read_str(p, "t")?.parse().map_err(|e: trinomia::numeric::ParseNumberError| Failure::invalid(e.to_string()))
}

/// Stores `value` through `out`, which must not be null.
pub(crate) unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

pub(crate) unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::invalid("string contains NUL"))?;
    write_out(out, c.into_raw(), "out")
}

pub(crate) unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    h.as_ref().ok_or_else(|| Failure::null(what))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn trinomia_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trinomia_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn trinomia_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Prime factorization of a positive decimal integer in the form
/// `2^2·3·11` (UTF-8), or `1` for one.
///
/// # Safety
/// `value` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_factorize(value: *const c_char, out: *mut *mut c_char) -> TrinomiaStatus {
    guard(|| {
        let s = read_str(value, "value")?;
        let v: rug::Integer = s.trim().parse().map_err(|_| Failure::invalid(format!("not an integer: {s:?}")))?;
        let f = trinomia::exact::factorize(&v).map_err(|e| Failure::invalid(e.to_string()))?;
        write_string(out, f.to_string())
    })
}

/// Runs a verification suite (`all`, `theorem1`, `powers`, `lemma3`,
/// `lemma4`, `lemma5`, `appendix`, `branches`, `properties`) over degrees
/// `n_min..=n_max` at truncation order `order`, reporting check counts.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `passed` and `failed` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_verify(
    suite: *const c_char,
    n_min: u32,
    n_max: u32,
    order: usize,
    passed: *mut usize,
    failed: *mut usize,
) -> TrinomiaStatus {
    guard(|| {
        let suite: trinomia::verify::Suite = read_str(suite, "suite")?.parse().map_err(Failure::invalid)?;
        if n_min < 2 || n_min > n_max {
            return Err(Failure::invalid(format!("bad degree range {n_min}..={n_max}")));
        }
        let params = trinomia::verify::SuiteParams { degrees: n_min..=n_max, order, ..Default::default() };
        let reports = trinomia::verify::run_suite(suite, &params);
        let ok = reports.iter().filter(|r| r.passed()).count();
        write_out(passed, ok, "passed")?;
        write_out(failed, reports.len() - ok, "failed")
    })
}
