use rug::Rational;

use super::report::{CheckReport, Witness};
use crate::exact::{coeff_c, TruncatedSeries};
use crate::hyper::HyperSpec;
use crate::trinomial::{x_series, y_series};

fn uncancelled_h(n: u32, j: u32) -> HyperSpec {
    let alphas = (1..=n).map(|i| Rational::from((j + i, n))).collect();
    let betas = (1..n).map(|i| Rational::from((j + i, n - 1))).collect();
    HyperSpec::new(alphas, betas, crate::hyper::gamma_n(n)).expect("positive lower parameters")
}

/// Recurrence stream of `H_{n,j}` against the Pochhammer quotient and the
/// closed binomial `C(nk+j, k)`.
pub fn check_coefficient_formulas(n: u32, j: u32, order: usize) -> CheckReport {
    check_coefficient_formulas_on(n, j, &HyperSpec::h_family(n, j).coefficients(order))
}

pub fn check_coefficient_formulas_on(n: u32, j: u32, recurrence: &[Rational]) -> CheckReport {
    let order = recurrence.len().saturating_sub(1);
    let mut r = CheckReport::new("coefficient_formulas").param("n", n).param("j", j).param("K", order);
    let direct = HyperSpec::h_family(n, j).direct_coefficients(order);
    for (k, (rec, dir)) in recurrence.iter().zip(&direct).enumerate() {
        let closed = Rational::from(coeff_c(u64::from(n), u64::from(j), k as u64));
        if rec != dir || rec != &closed {
            r.fail(Witness::Order {
                order: k,
                detail: format!("recurrence {rec}, pochhammer {dir}, binomial {closed}"),
            });
            break;
        }
    }
    r
}

/// The hypergeometric operator annihilates both family streams.
pub fn check_ode_residual(n: u32, j: u32, order: usize) -> CheckReport {
    let mut r = CheckReport::new("ode_residual").param("n", n).param("j", j).param("K", order);
    let h = HyperSpec::h_family(n, j);
    r.expect_zero("H_{n,j} residual", &h.ode_residual(order));
    if j >= 1 {
        let x = HyperSpec::x_family(n, j).spec;
        r.expect_zero("x-type residual", &x.ode_residual(order));
    }
    r
}

/// `u` is taken in the normalized argument `w = γz`.
pub fn check_ode_residual_on(spec: &HyperSpec, u: &TruncatedSeries) -> CheckReport {
    let mut r = CheckReport::new("ode_residual").param("spec", spec).param("K", u.order().unwrap_or(0));
    r.expect_zero("residual", &spec.ode_residual_of(u));
    r
}

/// Cancelling equal parameter pairs leaves the stream unchanged.
pub fn check_cancellation(n: u32, j: u32, order: usize) -> CheckReport {
    check_cancellation_on(n, j, &uncancelled_h(n, j).series(order))
}

pub fn check_cancellation_on(n: u32, j: u32, uncancelled: &TruncatedSeries) -> CheckReport {
    let order = uncancelled.order().unwrap_or(0);
    let mut r = CheckReport::new("cancellation").param("n", n).param("j", j).param("K", order);
    let full = uncancelled_h(n, j);
    let cancelled = full.cancel_parameters();
    r = r.param("removed_pairs", full.alphas().len() - cancelled.alphas().len());
    if cancelled.alphas().iter().any(|a| cancelled.betas().contains(a)) {
        r.fail(Witness::Message { detail: format!("{cancelled} still has an equal pair") });
    }
    r.expect_equal("cancelled stream", &cancelled.series(order), uncancelled);
    r
}

/// Derivative and antiderivative parameter shifts against term-wise
/// calculus, plus `x_{n,j} = j ∫ y_{n,j-1}` in `t`.
pub fn check_shift_consistency(n: u32, j: u32, order: usize) -> CheckReport {
    let spec = HyperSpec::h_family(n, j);
    let stream = spec.series(order);
    let mut r = check_shift_consistency_on(&spec, &stream).param("n", n).param("j", j);
    if j >= 1 {
        let lhs = x_series(n, j, order + 1);
        let rhs = y_series(n, j - 1, order).integrate().scale(&Rational::from(j));
        r.expect_equal("x_{n,j} vs j ∫ y_{n,j-1}", &lhs, &rhs);
    }
    r
}

pub fn check_shift_consistency_on(spec: &HyperSpec, stream: &TruncatedSeries) -> CheckReport {
    let order = stream.order().unwrap_or(0);
    let mut r = CheckReport::new("shift_consistency").param("spec", spec).param("K", order);

    let (m, shifted) = spec.derivative_spec();
    let want = shifted.series(order.saturating_sub(1)).scale(&m);
    r.expect_equal("d/dz vs shifted spec", &stream.differentiate(), &want);

    match spec.integral_spec() {
        Ok((m, shifted)) => {
            let lower = shifted.series(order + 1).add_constant(&Rational::from(-1)).scale(&m);
            r.expect_equal("∫ dz vs shifted spec", &stream.integrate(), &lower);
        }
        Err(e) => r.note(format!("antiderivative shift skipped: {e}")),
    }
    r
}


#[cfg(test)]
mod tests {
    use super::*;

    fn bump_vec(v: &[Rational], k: usize) -> Vec<Rational> {
        let mut v = v.to_vec();
        v[k] += 1;
        v
    }

    fn bump(s: &TruncatedSeries, k: usize) -> TruncatedSeries {
        let mut s = s.clone();
        *s.coeff_mut(k).unwrap() += 1;
        s
    }

    #[test]
    fn all_properties_pass() {
        for n in 2..=6 {
            for j in 0..=4 {
                assert!(check_coefficient_formulas(n, j, 40).passed());
                assert!(check_ode_residual(n, j, 40).passed());
                assert!(check_cancellation(n, j, 40).passed());
                let r = check_shift_consistency(n, j, 30);
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn coefficient_sabotage() {
        let rec = HyperSpec::h_family(3, 1).coefficients(20);
        let r = check_coefficient_formulas_on(3, 1, &bump_vec(&rec, 9));
        assert!(matches!(r.witness, Some(Witness::Order { order: 9, .. })));
    }

    #[test]
    fn ode_sabotage() {
        let spec = HyperSpec::h_family(4, 0);
        let u = spec.with_gamma(Rational::from(1)).series(20);
        assert!(check_ode_residual_on(&spec, &u).passed());
        assert!(!check_ode_residual_on(&spec, &bump(&u, 5)).passed());
    }

    #[test]
    fn cancellation_sabotage() {
        let s = uncancelled_h(5, 0).series(20);
        assert!(check_cancellation_on(5, 0, &s).passed());
        let r = check_cancellation_on(5, 0, &bump(&s, 11));
        assert!(matches!(r.witness, Some(Witness::Order { order: 11, .. })));
    }

    #[test]
    fn shift_sabotage() {
        let spec = HyperSpec::h_family(3, 0);
        let s = spec.series(20);
        assert!(check_shift_consistency_on(&spec, &s).passed());
        assert!(!check_shift_consistency_on(&spec, &bump(&s, 6)).passed());
    }

    #[test]
    fn antiderivative_skip_is_noted() {
        // H_{3,2} has an upper parameter equal to 1.
        let r = check_shift_consistency(3, 2, 10);
        assert!(r.passed());
        assert!(r.notes.iter().any(|s| s.contains("skipped")));
    }
}
