use rug::float::Round;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::{g_residual, radius, trinomial_derivative, Method, RootResult, SolveConfig, TrinomialError, TrinomialProblem};
use crate::hyper::HyperSpec;
use crate::numeric::{abs_up, cpow, trinomial_value};

/// `y = x'(t)` with its bound and the residuals of `(1 - n x^(n-1)) y = 1` and
/// `G_n(y, t) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct YResult {
    pub value: Complex,
    pub error_bound: f64,
    /// `|(1 - n x^(n-1)) y - 1|` against the principal root.
    pub relation_residual: f64,
    /// `|G_n(y, t)|`.
    pub g_residual: f64,
    pub terms_used: usize,
}

fn check_disc(p: &TrinomialProblem, config: &SolveConfig, prec: u32) -> Result<(), TrinomialError> {
    let r = radius(p.n, prec).r;
    let limit = Float::with_val(prec, &r * config.rho) * (1.0 + super::DISC_SLACK);
    let t_abs = Float::with_val(prec, p.t_at(prec).abs_ref());
    if t_abs > limit {
        return Err(TrinomialError::OutsideDisc {
            t_abs: t_abs.to_f64(),
            limit: limit.to_f64(),
            radius: r.to_f64(),
        });
    }
    Ok(())
}

/// The principal root `x(t) = t · F(γ_n t^(n-1))` with `F` from
/// [`HyperSpec::x_family`]`(n, 1)`, to absolute accuracy `eps`.
///
/// Requires `|t| <= rho · r_n`.
pub fn solve_principal(p: &TrinomialProblem, eps: f64, config: &SolveConfig) -> Result<RootResult, TrinomialError> {
    let prec = config.eval.precision_for(eps);
    let t = p.t_at(prec);
    if t.is_zero() {
        return Ok(RootResult {
            value: Complex::with_val(prec, 0),
            residual: 0.0,
            error_bound: 0.0,
            method: Method::Series,
            terms_used: 1,
            iterations: 0,
        });
    }
    check_disc(p, config, prec)?;
    let t_abs = abs_up(&t);
    let z = cpow(&t, p.n - 1);
    let spec = HyperSpec::x_family(p.n, 1).spec;
    let mut eval = config.eval.clone();
    eval.precision = Some(prec);
    let f = spec.evaluate(&z, eps / t_abs.max(1.0), &eval)?;
    let x = Complex::with_val(prec, &f.value * &t);
    let error_bound = f.tail_bound * t_abs * (1.0 + 1e-12);
    let residual = abs_up(&trinomial_value(p.n, &x, &t));
    Ok(RootResult {
        value: x,
        residual,
        error_bound,
        method: Method::Series,
        terms_used: f.terms_used,
        iterations: 0,
    })
}

/// `y(t) = H_{n,0}(t^(n-1))`, checked against the principal root and against
/// `G_n`.
pub fn y_value(p: &TrinomialProblem, eps: f64, config: &SolveConfig) -> Result<YResult, TrinomialError> {
    let prec = config.eval.precision_for(eps);
    let t = p.t_at(prec);
    check_disc(p, config, prec)?;
    let z = cpow(&t, p.n - 1);
    let mut eval = config.eval.clone();
    eval.precision = Some(prec);
    let h = HyperSpec::h_family(p.n, 0).evaluate(&z, eps, &eval)?;
    let x = solve_principal(p, eps, config)?;
    let mut rel = Complex::with_val(prec, 1u32 - Complex::with_val(prec, cpow(&x.value, p.n - 1) * p.n));
    rel *= &h.value;
    rel -= 1u32;
    let g = g_residual(p.n, &h.value, &t);
    Ok(YResult {
        relation_residual: abs_up(&rel),
        g_residual: abs_up(&g),
        value: h.value,
        error_bound: h.tail_bound,
        terms_used: h.terms_used,
    })
}

/// `y = 1 / (1 - n x^(n-1))` for any root `x`, with a first-order error
/// bound propagated from `x_error`.
pub fn y_from_x(n: u32, x: &Complex, x_error: f64) -> (Complex, f64) {
    let prec = x.prec().0;
    let d = trinomial_derivative(n, x);
    // 1 - n x^(n-1) = -F'(x)
    let y = Complex::with_val(prec, -d).recip();
    let y_abs = Float::with_val(prec, y.abs_ref());
    // dy/dx = n(n-1) x^(n-2) y^2
    let x_abs = Float::with_val(prec, x.abs_ref()) + x_error;
    let slope = Float::with_val(prec, (&x_abs).pow(n.saturating_sub(2))) * (n * (n - 1)) * Float::with_val(prec, y_abs.square_ref());
    let bound = Float::with_val(prec, slope * x_error).to_f64_round(Round::Up) * 2.0;
    (y, bound)
}
