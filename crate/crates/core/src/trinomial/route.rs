use std::str::FromStr;

use rug::Complex;

use super::{
    g_residual, radius, solve_all_branches, solve_large_t, solve_principal, y_from_x, y_value, RootResult, SolveConfig,
    TrinomialError, TrinomialProblem,
};
use crate::numeric::abs_up;

/// Which solution path to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Series inside `rho · r_n`, large-`|t|` iteration beyond
    /// `large_t_factor · r_n`, oracle in between.
    Auto,
    Series,
    Oracle,
    LargeT,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Series => "series",
            Mode::Oracle => "oracle",
            Mode::LargeT => "large-t",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "series" => Ok(Mode::Series),
            "oracle" => Ok(Mode::Oracle),
            "large-t" | "large_t" => Ok(Mode::LargeT),
            other => Err(format!("unknown mode {other:?} (expected auto, series, oracle or large-t)")),
        }
    }
}

/// A root `x`, the matching `y = x'(t)` and both residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub x: RootResult,
    pub y: Complex,
    pub y_error_bound: f64,
    /// `|G_n(y, t)|`.
    pub g_residual: f64,
    /// Series terms used for `y` (zero when `y` was derived from `x`).
    pub y_terms_used: usize,
    pub warnings: Vec<String>,
}

/// Solves one instance along the path chosen by `mode`.
///
/// The oracle path reports the root of smallest modulus, which is the
/// principal root whenever `|t| < r_n`.
pub fn solve(p: &TrinomialProblem, eps: f64, config: &SolveConfig, mode: Mode) -> Result<Solution, TrinomialError> {
    let r = radius(p.n, 64).r.to_f64();
    let t_abs = p.t_abs();
    let mut warnings = Vec::new();
    let mode = match mode {
        Mode::Auto if t_abs <= config.rho * r * (1.0 + super::DISC_SLACK) => Mode::Series,
        Mode::Auto if t_abs >= config.large_t_factor * r => {
            warnings.push(format!(
                "|t| = {t_abs:.6} is outside the disc of convergence (r_n = {r:.6}); using the large-|t| iteration on branch 0"
            ));
            Mode::LargeT
        }
        Mode::Auto => {
            warnings.push(format!(
                "|t| = {t_abs:.6} is beyond the series limit {:.6} (r_n = {r:.6}); using the root-finding oracle",
                config.rho * r
            ));
            Mode::Oracle
        }
        m => m,
    };
    match mode {
        Mode::Series => {
            let x = solve_principal(p, eps, config)?;
            let y = y_value(p, eps, config)?;
            Ok(Solution {
                x,
                y: y.value,
                y_error_bound: y.error_bound,
                g_residual: y.g_residual,
                y_terms_used: y.terms_used,
                warnings,
            })
        }
        Mode::LargeT => finish(solve_large_t(p, eps, config)?, p, warnings),
        Mode::Oracle | Mode::Auto => {
            let roots = solve_all_branches(p, eps, config)?;
            let x = roots
                .into_iter()
                .min_by(|a, b| abs_up(&a.value).total_cmp(&abs_up(&b.value)))
                .expect("degree >= 2 has roots");
            finish(x, p, warnings)
        }
    }
}

fn finish(x: RootResult, p: &TrinomialProblem, warnings: Vec<String>) -> Result<Solution, TrinomialError> {
    let (y, y_error_bound) = y_from_x(p.n, &x.value, x.error_bound);
    let g = g_residual(p.n, &y, &p.t_at(y.prec().0));
    Ok(Solution { g_residual: abs_up(&g), x, y, y_error_bound, y_terms_used: 0, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::Method;
    use rug::Rational;

    #[test]
    fn auto_routes_by_radius() {
        let cfg = SolveConfig::default();
        let small = TrinomialProblem::real(3, &Rational::from((1, 10))).unwrap();
        assert_eq!(solve(&small, 1e-20, &cfg, Mode::Auto).unwrap().x.method, Method::Series);
        let mid = TrinomialProblem::real(3, &Rational::from((1, 2))).unwrap();
        let s = solve(&mid, 1e-20, &cfg, Mode::Auto).unwrap();
        assert_eq!(s.x.method, Method::Oracle);
        assert_eq!(s.warnings.len(), 1);
        let big = TrinomialProblem::real(3, &Rational::from(5)).unwrap();
        let s = solve(&big, 1e-20, &cfg, Mode::Auto).unwrap();
        assert_eq!(s.x.method, Method::LargeTIteration);
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn oracle_agrees_with_series_inside_disc() {
        let cfg = SolveConfig::default();
        let p = TrinomialProblem::new(4, Complex::with_val(128, (0.2, 0.1))).unwrap();
        let a = solve(&p, 1e-25, &cfg, Mode::Series).unwrap();
        let b = solve(&p, 1e-25, &cfg, Mode::Oracle).unwrap();
        let d = abs_up(&Complex::with_val(a.x.value.prec().0, &a.x.value - &b.x.value));
        assert!(d < 1e-22);
        let dy = abs_up(&Complex::with_val(a.y.prec().0, &a.y - &b.y));
        assert!(dy < 1e-20);
        assert!(a.g_residual < 1e-20 && b.g_residual < 1e-18);
    }

    #[test]
    fn modes_parse() {
        assert_eq!("large-t".parse::<Mode>().unwrap(), Mode::LargeT);
        assert!("fast".parse::<Mode>().is_err());
    }
}
