use std::ffi::c_char;

use rug::{Float, Rational};
use trinomia::trinomial::{x_series, y_series};
use trinomia::TruncatedSeries;

use crate::{guard, handle, write_out, write_string, Failure, TrinomiaStatus};

/// Which family a series belongs to.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrinomiaSeriesKind {
    /// `x(t)^j`, requires `j >= 1`.
    X = 0,
    /// `x(t)^j x'(t)`.
    Y = 1,
}

/// Opaque exact power series in `t`, known through a fixed order.
pub struct TrinomiaSeries {
    inner: TruncatedSeries,
}

/// Builds the series of `kind` for degree `n` and power `j` through `t^order`.
///
/// # Safety
/// `out` must be writable. Release the handle with `trinomia_series_free`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_series_new(
    n: u32,
    kind: TrinomiaSeriesKind,
    j: u32,
    order: usize,
    out: *mut *mut TrinomiaSeries,
) -> TrinomiaStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        if n < 2 {
            return Err(Failure::invalid(format!("degree must be at least 2, got {n}")));
        }
        let inner = match kind {
            TrinomiaSeriesKind::X if j == 0 => return Err(Failure::invalid("x-type series need j >= 1")),
            TrinomiaSeriesKind::X => x_series(n, j, order),
            TrinomiaSeriesKind::Y => y_series(n, j, order),
        };
        write_out(out, Box::into_raw(Box::new(TrinomiaSeries { inner })), "out")
    })
}

fn coeff(s: &TrinomiaSeries, k: usize) -> Result<&Rational, Failure> {
    s.inner
        .coeff(k)
        .ok_or_else(|| Failure::invalid(format!("t^{k} is beyond order {}", s.inner.known_terms().saturating_sub(1))))
}

/// Highest known power of `t`, or `SIZE_MAX` for a NULL handle.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn trinomia_series_order(h: *const TrinomiaSeries) -> usize {
    h.as_ref().map_or(usize::MAX, |s| s.inner.known_terms().saturating_sub(1))
}

/// Coefficient of `t^k` as an exact string `p` or `p/q`.
///
/// # Safety
/// `h` must be a live handle; `out` writable. Free the string with
/// `trinomia_string_free`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_series_coeff(h: *const TrinomiaSeries, k: usize, out: *mut *mut c_char) -> TrinomiaStatus {
    guard(|| {
        let c = coeff(handle(h, "series")?, k)?;
        write_string(out, c.to_string())
    })
}

/// Coefficient of `t^k` rounded to the nearest double.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_series_coeff_f64(h: *const TrinomiaSeries, k: usize, out: *mut f64) -> TrinomiaStatus {
    guard(|| {
        let c = coeff(handle(h, "series")?, k)?;
        write_out(out, Float::with_val(53, c).to_f64(), "out")
    })
}

/// # Safety
/// `h` must be NULL or a handle from `trinomia_series_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trinomia_series_free(h: *mut TrinomiaSeries) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
