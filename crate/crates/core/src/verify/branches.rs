use rug::ops::Pow;
use rug::{Complex, Float};

use super::report::CheckReport;
use crate::numeric::{abs_up, cpow, format_complex};
use crate::trinomial::{g_residual, radius, solve_all_branches, y_from_x, SolveConfig, TrinomialError, TrinomialProblem};

/// Minimum `|1 - z/z0|`, `z = t^(n-1)`, for the branch relations to be tested.
pub const BRANCH_GUARD: f64 = 1e-3;

/// For every oracle root `x_j` with `y_j = 1/(1 - n x_j^(n-1))`: `|Σ x_j - s|`
/// (`s` is 1 for `n = 2`, else 0), `|Σ y_j|` and each `|G_n(y_j, t)|` relative to the size of its terms are
/// at most `eps`.
pub fn check_branch_relations(p: &TrinomialProblem, eps: f64, config: &SolveConfig) -> Result<CheckReport, TrinomialError> {
    let n = p.n;
    let prec = config.eval.precision_for(eps);
    let t = p.t_at(prec);
    let z0 = radius(n, prec).z0;
    let ratio = Complex::with_val(prec, cpow(&t, n - 1) / Complex::with_val(prec, &z0));
    let distance = abs_up(&Complex::with_val(prec, 1u32 - ratio));
    if distance < BRANCH_GUARD {
        return Err(TrinomialError::NearBranchPoint { distance });
    }

    let roots = solve_all_branches(p, (eps * 1e-6).max(f64::MIN_POSITIVE), config)?;
    let mut r = CheckReport::new("branches")
        .param("n", n)
        .param("t", format_complex(&t, 17, 0.0))
        .param("eps", format!("{eps:e}"));

    let mut sum_x = Complex::with_val(prec, 0);
    let mut sum_y = Complex::with_val(prec, 0);
    let mut worst_x = 0f64;
    let mut worst_g = 0f64;
    for root in &roots {
        sum_x += &root.value;
        let (y, _) = y_from_x(n, &root.value, root.error_bound);
        sum_y += &y;
        let g = abs_up(&g_residual(n, &y, &t));
        let y_abs = Float::with_val(prec, y.abs_ref());
        // size of the two terms of G_n at y
        let lead = Float::with_val(prec, (&y_abs).pow(n)) * abs_up(&cpow(&t, n - 1)) * 2.0;
        let tail = Float::with_val(prec, y_abs + 1u32).pow(n);
        let scale = Float::with_val(prec, lead + tail).to_f64().max(1.0);
        worst_g = worst_g.max(g / scale);
        worst_x = worst_x.max(root.residual);
    }
    if n == 2 {
        sum_x -= 1u32;
    }
    let sum_x = abs_up(&sum_x);
    let sum_y = abs_up(&sum_y);
    r.expect_at_most("|sum x - vieta|", sum_x, eps);
    r.expect_at_most("|sum y|", sum_y, eps);
    r.expect_at_most("max relative |G(y)|", worst_g, eps);
    r.note(format!("|sum x - vieta| = {sum_x:e}, |sum y| = {sum_y:e}, max |F(x)| = {worst_x:e}, max relative |G(y)| = {worst_g:e}"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ComplexLiteral;

    fn problem(n: u32, t: &str) -> TrinomialProblem {
        let lit: ComplexLiteral = t.parse().unwrap();
        TrinomialProblem::new(n, lit.to_complex(256)).unwrap()
    }

    #[test]
    fn documented_instances_pass() {
        let cfg = SolveConfig::default();
        for (n, t, eps) in [(3, "0.2", 1e-10), (5, "0.3+0.1i", 1e-10), (2, "0.1", 1e-12), (4, "-1.5+2i", 1e-10)] {
            let r = check_branch_relations(&problem(n, t), eps, &cfg).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn branch_point_is_rejected() {
        // z0 = 1/4 for n = 2
        let err = check_branch_relations(&problem(2, "0.25"), 1e-10, &SolveConfig::default()).unwrap_err();
        assert!(matches!(err, TrinomialError::NearBranchPoint { .. }));
        assert!(check_branch_relations(&problem(2, "0.2501"), 1e-10, &SolveConfig::default()).is_err());
        assert!(check_branch_relations(&problem(2, "0.26"), 1e-10, &SolveConfig::default()).is_ok());
    }
}
