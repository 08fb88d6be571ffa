use std::ffi::c_char;

use trinomia::numeric::{default_eps, format_complex, precision_for_digits};
use trinomia::trinomial::{solve, Mode, Solution};
use trinomia::{EvalConfig, Method, SolveConfig, TrinomialProblem};

use crate::{guard, handle, read_literal, write_out, write_string, Failure, TrinomiaStatus};

/// Solution path selection.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrinomiaMode {
    /// Series inside 0.95 r_n, large-|t| iteration beyond 2 r_n, oracle between.
    Auto = 0,
    Series = 1,
    Oracle = 2,
    LargeT = 3,
}

/// Path that produced a root.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrinomiaMethod {
    Series = 0,
    LargeTIteration = 1,
    Oracle = 2,
}

impl From<Method> for TrinomiaMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Series => TrinomiaMethod::Series,
            Method::LargeTIteration => TrinomiaMethod::LargeTIteration,
            Method::Oracle => TrinomiaMethod::Oracle,
        }
    }
}

/// Error bounds and residuals of a solution.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrinomiaBounds {
    pub x_error_bound: f64,
    pub y_error_bound: f64,
    /// `|x^n - x + t|`
    pub f_residual: f64,
    /// `|G_n(y, t)|`
    pub g_residual: f64,
    /// Series terms summed, zero for iterative methods.
    pub terms_used: usize,
}

/// Opaque solution handle.
pub struct TrinomiaSolution {
    inner: Solution,
}

/// Solves `x^n - x + t = 0` for the literal `t`. `digits == 0` means 40;
/// `eps <= 0` means `10^-(digits-10)`.
///
/// # Safety
/// `t` must be a NUL-terminated string; `out` must be writable. The handle
/// is released with `trinomia_solution_free`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solve(
    n: u32,
    t: *const c_char,
    eps: f64,
    digits: u32,
    mode: TrinomiaMode,
    seed: u64,
    out: *mut *mut TrinomiaSolution,
) -> TrinomiaStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let lit = read_literal(t)?;
        let digits = if digits == 0 { 40 } else { digits };
        let eps = if eps > 0.0 { eps } else { default_eps(digits) };
        let mut eval = EvalConfig::from_env();
        let prec = eval.precision_for(eps).max(precision_for_digits(digits));
        eval.precision = Some(prec);
        let config = SolveConfig { eval, seed, ..SolveConfig::default() };
        let p = TrinomialProblem::new(n, lit.to_complex(prec.max(256) + 64))?;
        let mode = match mode {
            TrinomiaMode::Auto => Mode::Auto,
            TrinomiaMode::Series => Mode::Series,
            TrinomiaMode::Oracle => Mode::Oracle,
            TrinomiaMode::LargeT => Mode::LargeT,
        };
        let inner = solve(&p, eps, &config, mode)?;
        write_out(out, Box::into_raw(Box::new(TrinomiaSolution { inner })), "out")
    })
}

/// Real and imaginary parts of `x` rounded to double.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_x(h: *const TrinomiaSolution, re: *mut f64, im: *mut f64) -> TrinomiaStatus {
    guard(|| {
        let s = handle(h, "solution")?;
        write_out(re, s.inner.x.value.real().to_f64(), "re")?;
        write_out(im, s.inner.x.value.imag().to_f64(), "im")
    })
}

/// Real and imaginary parts of `y = x'(t)` rounded to double.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_y(h: *const TrinomiaSolution, re: *mut f64, im: *mut f64) -> TrinomiaStatus {
    guard(|| {
        let s = handle(h, "solution")?;
        write_out(re, s.inner.y.real().to_f64(), "re")?;
        write_out(im, s.inner.y.imag().to_f64(), "im")
    })
}

/// `x` at full working precision as `a+bi` with `digits` significant digits.
///
/// # Safety
/// `h` must be a live handle; `out` writable. Free the string with
/// `trinomia_string_free`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_x_string(
    h: *const TrinomiaSolution,
    digits: u32,
    out: *mut *mut c_char,
) -> TrinomiaStatus {
    guard(|| {
        let s = handle(h, "solution")?;
        let x = &s.inner.x;
        write_string(out, format_complex(&x.value, digits.max(2) as usize, x.error_bound))
    })
}

/// `y` at full working precision, as for `trinomia_solution_x_string`.
///
/// # Safety
/// As for `trinomia_solution_x_string`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_y_string(
    h: *const TrinomiaSolution,
    digits: u32,
    out: *mut *mut c_char,
) -> TrinomiaStatus {
    guard(|| {
        let s = handle(h, "solution")?;
        write_string(out, format_complex(&s.inner.y, digits.max(2) as usize, s.inner.y_error_bound))
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_bounds(h: *const TrinomiaSolution, out: *mut TrinomiaBounds) -> TrinomiaStatus {
    guard(|| {
        let s = &handle(h, "solution")?.inner;
        let b = TrinomiaBounds {
            x_error_bound: s.x.error_bound,
            y_error_bound: s.y_error_bound,
            f_residual: s.x.residual,
            g_residual: s.g_residual,
            terms_used: s.x.terms_used,
        };
        write_out(out, b, "out")
    })
}

/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_method(h: *const TrinomiaSolution, out: *mut TrinomiaMethod) -> TrinomiaStatus {
    guard(|| write_out(out, handle(h, "solution")?.inner.x.method.into(), "out"))
}

/// Number of warnings attached to the solution (for example, a `t` outside
/// the disc of convergence in auto mode).
///
/// # Safety
/// `h` must be a live handle or NULL (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_warning_count(h: *const TrinomiaSolution) -> usize {
    h.as_ref().map_or(0, |s| s.inner.warnings.len())
}

/// # Safety
/// `h` must be NULL or a handle from `trinomia_solve` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trinomia_solution_free(h: *mut TrinomiaSolution) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
