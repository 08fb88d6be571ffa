use std::ffi::c_char;

use trinomia::numeric::default_eps;
use trinomia::trinomial::{g_residual, solve_all_branches, y_from_x};
use trinomia::{EvalConfig, RootResult, SolveConfig, TrinomialProblem};

use crate::{guard, handle, read_literal, write_out, Failure, TrinomiaStatus};

/// One root `x` of `x^n - x + t` with the matching `y = 1/(1 - n x^(n-1))`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrinomiaRoot {
    pub x_re: f64,
    pub x_im: f64,
    pub y_re: f64,
    pub y_im: f64,
    /// `|x^n - x + t|`
    pub f_residual: f64,
    /// `|G_n(y, t)|`
    pub g_residual: f64,
    pub x_error_bound: f64,
}

/// Opaque set of all `n` roots.
pub struct TrinomiaRoots {
    roots: Vec<TrinomiaRoot>,
}

fn convert(n: u32, t: &rug::Complex, r: &RootResult) -> TrinomiaRoot {
    let (y, _) = y_from_x(n, &r.value, r.error_bound);
    let g = g_residual(n, &y, t);
    TrinomiaRoot {
        x_re: r.value.real().to_f64(),
        x_im: r.value.imag().to_f64(),
        y_re: y.real().to_f64(),
        y_im: y.imag().to_f64(),
        f_residual: r.residual,
        g_residual: rug::Float::with_val(64, g.abs_ref()).to_f64(),
        x_error_bound: r.error_bound,
    }
}

/// Computes all `n` roots for the literal `t`. `eps <= 0` means `1e-30`.
///
/// # Safety
/// `t` must be a NUL-terminated string; `out` writable. Release the handle
/// with `trinomia_roots_free`.
#[no_mangle]
pub unsafe extern "C" fn trinomia_branches(
    n: u32,
    t: *const c_char,
    eps: f64,
    seed: u64,
    out: *mut *mut TrinomiaRoots,
) -> TrinomiaStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let lit = read_literal(t)?;
        let eps = if eps > 0.0 { eps } else { default_eps(40) };
        let config = SolveConfig { eval: EvalConfig::from_env(), seed, ..SolveConfig::default() };
        let prec = config.eval.precision_for(eps);
        let p = TrinomialProblem::new(n, lit.to_complex(prec.max(256) + 64))?;
        let found = solve_all_branches(&p, eps, &config)?;
        let t = p.t_at(prec);
        let roots = found.iter().map(|r| convert(n, &t, r)).collect();
        write_out(out, Box::into_raw(Box::new(TrinomiaRoots { roots })), "out")
    })
}

/// Number of roots, 0 for a NULL handle.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn trinomia_roots_len(h: *const TrinomiaRoots) -> usize {
    h.as_ref().map_or(0, |r| r.roots.len())
}

/// Copies root `i` into `out`.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trinomia_roots_get(h: *const TrinomiaRoots, i: usize, out: *mut TrinomiaRoot) -> TrinomiaStatus {
    guard(|| {
        let r = handle(h, "roots")?;
        let root = *r
            .roots
            .get(i)
            .ok_or_else(|| Failure::invalid(format!("index {i} out of range (len {})", r.roots.len())))?;
        write_out(out, root, "out")
    })
}

/// # Safety
/// `h` must be NULL or a handle from `trinomia_branches` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trinomia_roots_free(h: *mut TrinomiaRoots) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
