//! The trinomial `F_n(x, t) = x^n - x + t` and its companion
//! `G_n(y, t) = γ_n t^(n-1) y^n - (y - 1)(y + 1/(n-1))^(n-1)`.
//!
//! The principal root `x(t)` (with `x(0) = 0`) and `y(t) = x'(t)` are the
//! hypergeometric series of [`HyperSpec::x_family`] and
//! [`HyperSpec::h_family`] in `z = t^(n-1)`, convergent for `|t| < r_n`
//! where `r_n^(n-1) = (n-1)^(n-1) / n^n`. All `n` roots come from a
//! simultaneous-iteration oracle, and a fixed-point iteration covers large
//! `|t|`.

mod branches;
mod large_t;
mod route;
mod series;
mod solve;

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyper::{gamma_n, EvalConfig, HyperError};
use crate::numeric::cpow;

pub use branches::{principal_index, solve_all_branches};
pub use large_t::{large_t_iterates, solve_large_t, LargeTTrace};
pub use route::{solve, Mode, Solution};
pub use series::{x_series, y_series};
pub use solve::{solve_principal, y_from_x, y_value, YResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrinomialError {
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(u32),
    #[error("|t| = {t_abs:.6} exceeds the series limit {limit:.6} (radius of convergence r_n = {radius:.6})")]
    OutsideDisc { t_abs: f64, limit: f64, radius: f64 },
    #[error("|t| = {t_abs:.6} is below the large-|t| threshold {threshold:.6}")]
    BelowLargeTThreshold { t_abs: f64, threshold: f64 },
    #[error("large-|t| iteration stopped contracting after {iterations} steps; use the series or the oracle")]
    NonContraction { iterations: usize },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("t is too close to a branch point: |1 - z/z0| = {distance:e}")]
    NearBranchPoint { distance: f64 },
    #[error(transparent)]
    Hyper(#[from] HyperError),
}

/// Relative slack on the series limit `rho · r_n`, so that a `t` given as an
/// exact fraction of `r_n` is not rejected by rounding of `rho`.
pub const DISC_SLACK: f64 = 1e-12;

/// An instance of `x^n - x + t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrinomialProblem {
    pub n: u32,
    pub t: Complex,
}

impl TrinomialProblem {
    pub fn new(n: u32, t: Complex) -> Result<Self, TrinomialError> {
        if n < 2 {
            return Err(TrinomialError::InvalidDegree(n));
        }
        Ok(TrinomialProblem { n, t })
    }

    /// Real parameter given exactly.
    pub fn real(n: u32, t: &Rational) -> Result<Self, TrinomialError> {
        Self::new(n, Complex::with_val(256, t))
    }

    /// `|t|` as a double.
    pub fn t_abs(&self) -> f64 {
        Float::with_val(64, self.t.abs_ref()).to_f64()
    }

    /// `t` rounded to the given precision.
    pub fn t_at(&self, prec: u32) -> Complex {
        Complex::with_val(prec, &self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    LargeTIteration,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::LargeTIteration => "large_t_iteration",
            Method::Oracle => "oracle",
        }
    }
}

/// A root of `F_n` with its residual `|F_n(value, t)|`, recomputed from
/// `value` at working precision, and a bound on `|value - root|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootResult {
    pub value: Complex,
    pub residual: f64,
    pub error_bound: f64,
    pub method: Method,
    /// Series terms summed, zero for iterative methods.
    pub terms_used: usize,
    /// Iterations performed, zero for the series.
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    /// Fraction of `r_n` up to which the series is used.
    pub rho: f64,
    /// Multiple of `r_n` from which the large-`|t|` iteration is used.
    pub large_t_factor: f64,
    pub eval: EvalConfig,
    /// Seed of the oracle's starting-point perturbation.
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            rho: 0.95,
            large_t_factor: 2.0,
            eval: EvalConfig::default(),
            seed: 0x7269_6e6f,
            max_iterations: 2000,
        }
    }
}

/// The radius of convergence of the principal branch: `z0 = r_n^(n-1)` exactly
/// and `r_n` itself at the requested precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Radius {
    pub z0: Rational,
    pub r: Float,
}

/// `z0 = (n-1)^(n-1) / n^n = 1/γ_n` and `r_n = z0^(1/(n-1))`.
pub fn radius(n: u32, prec: u32) -> Radius {
    let z0 = Rational::from(gamma_n(n).recip_ref());
    let r = if n == 2 { Float::with_val(prec, &z0) } else { Float::with_val(prec, &z0).root(n - 1) };
    Radius { z0, r }
}

/// `G_n(y, t) = γ_n t^(n-1) y^n - (y - 1)(y + 1/(n-1))^(n-1)` at the precision
/// of `y`.
pub fn g_residual(n: u32, y: &Complex, t: &Complex) -> Complex {
    assert!(n >= 2, "degree must be at least 2");
    let prec = y.prec().0.max(t.prec().0);
    let gamma = Complex::with_val(prec, &gamma_n(n));
    let mut lhs = cpow(&Complex::with_val(prec, t), n - 1);
    lhs *= &gamma;
    lhs *= cpow(&Complex::with_val(prec, y), n);
    let shift = Complex::with_val(prec, &Rational::from((1, n - 1)));
    let mut rhs = cpow(&Complex::with_val(prec, y + &shift), n - 1);
    rhs *= Complex::with_val(prec, y - 1u32);
    lhs - rhs
}

/// `(d/dx F_n)(x) = n x^(n-1) - 1`.
pub(crate) fn trinomial_derivative(n: u32, x: &Complex) -> Complex {
    let mut d = cpow(x, n - 1);
    d *= n;
    d -= 1u32;
    d
}

/// Radius of a disc around `x` guaranteed to contain a root of the degree-`n`
/// polynomial: `n |F(x)| / |F'(x)|`.
pub(crate) fn inclusion_radius(n: u32, x: &Complex, fx: &Complex) -> f64 {
    let d = trinomial_derivative(n, x);
    if d.is_zero() {
        return f64::INFINITY;
    }
    let prec = x.prec().0;
    let q = Float::with_val(prec, fx.abs_ref()) / Float::with_val(prec, d.abs_ref()) * n;
    q.to_f64_round(rug::float::Round::Up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_values() {
        let r2 = radius(2, 128);
        assert_eq!(r2.z0, Rational::from((1, 4)));
        assert_eq!(r2.r, 0.25);
        let r3 = radius(3, 128);
        assert_eq!(r3.z0, Rational::from((4, 27)));
        let expected = 2.0 / (3.0 * 3f64.sqrt());
        assert!((r3.r.to_f64() - expected).abs() < 1e-15);
        assert_eq!(radius(5, 64).z0, Rational::from((256, 3125)));
    }

    #[test]
    fn g_residual_trivial_points() {
        for n in 2..=6 {
            let y = Complex::with_val(128, 1);
            let t = Complex::with_val(128, 0);
            assert!(g_residual(n, &y, &t).is_zero());
        }
        // n = 2: y = (1 - 4t)^{-1/2}
        let prec = 200;
        let t = Complex::with_val(prec, &Rational::from((1, 10)));
        let y = Complex::with_val(prec, 1 - Complex::with_val(prec, &t * 4u32)).sqrt().recip();
        let g = g_residual(2, &y, &t);
        assert!(Float::with_val(prec, g.abs_ref()) < 1e-30);
    }

    #[test]
    fn problem_rejects_degree_one() {
        assert_eq!(
            TrinomialProblem::new(1, Complex::new(64)).unwrap_err(),
            TrinomialError::InvalidDegree(1)
        );
    }
}
