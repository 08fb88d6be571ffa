use rug::float::Constant;
use rug::{Complex, Float};

use super::{inclusion_radius, radius, Method, RootResult, SolveConfig, TrinomialError, TrinomialProblem};
use crate::numeric::{abs_up, trinomial_value};

/// Iterates of the large-`|t|` fixed point, with the residual after each step.
#[derive(Clone, Debug, PartialEq)]
pub struct LargeTTrace {
    pub root: RootResult,
    pub residuals: Vec<f64>,
    pub steps: Vec<f64>,
}

fn principal_root(w: &Complex, n: u32) -> Complex {
    if w.is_zero() {
        return w.clone();
    }
    let mut l = w.clone().ln();
    l /= n;
    l.exp()
}

/// Runs `x <- ε_n ω^branch t^(1/n) (1 - x/t)^(1/n)` from
/// `x_0 = ε_n ω^branch t^(1/n)`, where `ε_n = exp(iπ/n)`, `ω = exp(2iπ/n)`
/// and all fractional powers are principal values. `branch = 0` is the
/// iteration as usually stated.
///
/// Fails with [`TrinomialError::NonContraction`] as soon as a step grows.
pub fn large_t_iterates(
    p: &TrinomialProblem,
    eps: f64,
    config: &SolveConfig,
    branch: u32,
) -> Result<LargeTTrace, TrinomialError> {
    let n = p.n;
    let prec = config.eval.precision_for(eps);
    let t = p.t_at(prec);
    let t_abs = abs_up(&t);
    let threshold = radius(n, 64).r.to_f64() * config.large_t_factor;
    if t_abs < threshold {
        return Err(TrinomialError::BelowLargeTThreshold { t_abs, threshold });
    }

    let pi = Float::with_val(prec, Constant::Pi);
    let angle = Float::with_val(prec, &pi * (1 + 2 * branch)) / n;
    let rotation = Complex::with_val(prec, (angle.clone().cos(), angle.sin()));
    let c = Complex::with_val(prec, &rotation * principal_root(&t, n));

    let scale = t_abs.powf(1.0 / f64::from(n));
    let tolerance = eps * scale * 1e-3;
    let mut x = c.clone();
    let mut residuals = vec![abs_up(&trinomial_value(n, &x, &t))];
    let mut steps = Vec::new();
    let mut iterations = 0;
    loop {
        if iterations >= config.max_iterations {
            let residual = *residuals.last().expect("nonempty");
            return Err(TrinomialError::NonConvergence { iterations, residual });
        }
        iterations += 1;
        let mut w = Complex::with_val(prec, &x / &t);
        w = Complex::with_val(prec, 1u32 - w);
        let next = Complex::with_val(prec, &c * principal_root(&w, n));
        let step = abs_up(&Complex::with_val(prec, &next - &x));
        x = next;
        residuals.push(abs_up(&trinomial_value(n, &x, &t)));
        if let Some(&prev) = steps.last() {
            if step > prev && step > tolerance {
                return Err(TrinomialError::NonContraction { iterations });
            }
        }
        steps.push(step);
        if step <= tolerance {
            break;
        }
    }

    let fx = trinomial_value(n, &x, &t);
    let residual = abs_up(&fx);
    let limit = eps * t_abs;
    if residual > limit {
        return Err(TrinomialError::NonConvergence { iterations, residual });
    }
    let root = RootResult {
        error_bound: inclusion_radius(n, &x, &fx),
        value: x,
        residual,
        method: Method::LargeTIteration,
        terms_used: 0,
        iterations,
    };
    Ok(LargeTTrace { root, residuals, steps })
}

/// One root for large `|t|` (`|t| >= large_t_factor · r_n`) by the
/// fixed-point iteration with `ε_n = exp(iπ/n)`; the residual satisfies
/// `|F_n| <= eps · |t|`.
pub fn solve_large_t(p: &TrinomialProblem, eps: f64, config: &SolveConfig) -> Result<RootResult, TrinomialError> {
    large_t_iterates(p, eps, config, 0).map(|trace| trace.root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::{principal_index, solve_all_branches};
    use rug::Rational;

    #[test]
    fn quadratic_large_t() {
        let p = TrinomialProblem::real(2, &Rational::from(10)).unwrap();
        let r = solve_large_t(&p, 1e-30, &SolveConfig::default()).unwrap();
        // (1 ± i sqrt(39)) / 2
        let prec = r.value.prec().0;
        let im = Float::with_val(prec, 39).sqrt() / 2;
        assert!(Float::with_val(prec, r.value.real() - 0.5).abs() < 1e-30);
        assert!(Float::with_val(prec, r.value.imag().clone().abs() - &im).abs() < 1e-30);
        assert_eq!(r.method, Method::LargeTIteration);
    }

    #[test]
    fn quintic_modulus_near_fifth_root() {
        let p = TrinomialProblem::real(5, &Rational::from(100)).unwrap();
        let cfg = SolveConfig::default();
        let r = solve_large_t(&p, 1e-25, &cfg).unwrap();
        assert!(r.residual <= 1e-12);
        let m = abs_up(&r.value);
        assert!((m - 100f64.powf(0.2)).abs() < 0.1, "{m}");
        let all = solve_all_branches(&p, 1e-25, &cfg).unwrap();
        let i = principal_index(&all, &r.value).unwrap();
        let d = abs_up(&Complex::with_val(r.value.prec().0, &all[i].value - &r.value));
        assert!(d < 1e-20);
    }

    #[test]
    fn every_branch_index_reaches_a_distinct_root() {
        let p = TrinomialProblem::new(4, Complex::with_val(128, (3.0, 1.0))).unwrap();
        let cfg = SolveConfig::default();
        let all = solve_all_branches(&p, 1e-25, &cfg).unwrap();
        let mut hit = Vec::new();
        for b in 0..4 {
            let r = large_t_iterates(&p, 1e-25, &cfg, b).unwrap().root;
            hit.push(principal_index(&all, &r.value).unwrap());
        }
        hit.sort();
        assert_eq!(hit, [0, 1, 2, 3]);
    }

    #[test]
    fn below_threshold_is_refused() {
        let p = TrinomialProblem::real(3, &Rational::from((1, 2))).unwrap();
        assert!(matches!(
            solve_large_t(&p, 1e-20, &SolveConfig::default()),
            Err(TrinomialError::BelowLargeTThreshold { .. })
        ));
    }
}
