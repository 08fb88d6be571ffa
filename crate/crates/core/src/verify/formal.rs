use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::report::{CheckReport, Witness};
use crate::exact::{binom, factorial, TruncatedSeries, Var};
use crate::hyper::HyperSpec;
use crate::trinomial::{x_series, y_series};

fn t_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::variable(Var::T, order)
}

/// Records an arithmetic error (variable mismatch and the like) as a failure.
fn guard<T>(report: &mut CheckReport, r: Result<T, crate::exact::SeriesError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            report.fail(Witness::Message { detail: e.to_string() });
            None
        }
    }
}

/// `x^n - x + t = 0` and `x' = y_{n,0}` for the principal series.
pub fn check_theorem1(n: u32, order: usize) -> CheckReport {
    check_theorem1_on(n, &x_series(n, 1, order), &y_series(n, 0, order))
}

pub fn check_theorem1_on(n: u32, x: &TruncatedSeries, y: &TruncatedSeries) -> CheckReport {
    let order = x.order().unwrap_or(0);
    let mut r = CheckReport::new("theorem1").param("n", n).param("K", order);
    let lhs = x.pow(n).sub(x).and_then(|s| s.add(&t_series(order)));
    if let Some(lhs) = guard(&mut r, lhs) {
        r.expect_zero("x^n - x + t", &lhs);
    }
    r.expect_equal("x' vs y_{n,0}", &x.differentiate(), y);
    r
}

/// `(1 - n x^(n-1)) y = 1`.
pub fn check_inverse_relation(n: u32, order: usize) -> CheckReport {
    check_inverse_relation_on(n, &x_series(n, 1, order), &y_series(n, 0, order))
}

pub fn check_inverse_relation_on(n: u32, x: &TruncatedSeries, y: &TruncatedSeries) -> CheckReport {
    let order = x.order().unwrap_or(0);
    let mut r = CheckReport::new("inverse_relation").param("n", n).param("K", order);
    let factor = x.pow(n - 1).scale(&Rational::from(-i64::from(n))).add_constant(&Rational::from(1));
    if let Some(prod) = guard(&mut r, factor.mul(y)) {
        r.expect_equal("(1 - n x^(n-1)) y", &prod, &TruncatedSeries::one(Var::T, order));
    }
    r
}

/// `x^j = x_{n,j}`, `x^(j-1) x = x_{n,j}` via the family, and `x^j y = y_{n,j}`.
pub fn check_powers(n: u32, j: u32, order: usize) -> CheckReport {
    check_powers_on(n, j, &x_series(n, 1, order), &y_series(n, 0, order))
}

pub fn check_powers_on(n: u32, j: u32, x: &TruncatedSeries, y: &TruncatedSeries) -> CheckReport {
    let order = x.order().unwrap_or(0);
    let mut r = CheckReport::new("powers").param("n", n).param("j", j).param("K", order);
    let xj = x.pow(j);
    r.expect_equal("x^j vs x_{n,j}", &xj, &x_series(n, j, order));
    if j >= 2 {
        if let Some(split) = guard(&mut r, x_series(n, j - 1, order).mul(x)) {
            r.expect_equal("x_{n,j-1} x vs x_{n,j}", &split, &x_series(n, j, order));
        }
    }
    if let Some(xjy) = guard(&mut r, xj.mul(y)) {
        r.expect_equal("x^j y vs y_{n,j}", &xjy, &y_series(n, j, order));
    }
    r
}

/// Starting from `u = 1/y`, applies `u <- (1/y) u'` `n-1` times; the result
/// must be the constant `-n!`.
pub fn check_lemma3(n: u32, order: usize) -> CheckReport {
    check_lemma3_on(n, &y_series(n, 0, order))
}

pub fn check_lemma3_on(n: u32, y: &TruncatedSeries) -> CheckReport {
    let order = y.order().unwrap_or(0);
    let mut r = CheckReport::new("lemma3").param("n", n).param("K", order);
    let Some(inv) = guard(&mut r, y.reciprocal()) else {
        return r;
    };
    let mut u = inv.clone();
    for _ in 1..n {
        match guard(&mut r, inv.mul(&u.differentiate())) {
            Some(next) => u = next,
            None => return r,
        }
    }
    let target = -Rational::from(factorial(u64::from(n)));
    let known = u.order().map_or(0, |k| k + 1);
    r = r.param("sound_order", u.order().map_or("none".to_string(), |k| k.to_string()));
    if known == 0 {
        r.fail(Witness::Message { detail: "no coefficients survive the chain".into() });
    } else {
        r.expect_equal("chain", &u, &TruncatedSeries::constant(Var::T, target.clone(), known - 1));
    }
    if r.passed() {
        r.note(format!("constant {target}"));
    }
    r
}

/// `⟨z^j z̄^k⟩ = δ_jk k!`.
pub fn gaussian_moment(j: u64, k: u64) -> Integer {
    if j == k {
        factorial(k)
    } else {
        Integer::new()
    }
}

/// Formal expansion of `∫ exp(z̄ (z + t)^n) dμ` through `t^((n-1) max_m)`:
/// term `m` contributes `(1/m!) Σ_i C(nm, i) ⟨z^i z̄^m⟩ t^(nm-i)`.
pub fn lemma4_expansion(n: u32, max_m: u64) -> TruncatedSeries {
    let order = (u64::from(n) - 1) * max_m;
    let mut coeffs = vec![Rational::new(); order as usize + 1];
    for m in 0..=max_m {
        let nm = u64::from(n) * m;
        let inv_fact = Rational::from((Integer::from(1), factorial(m)));
        for i in 0..=nm {
            let moment = gaussian_moment(i, m);
            if moment == 0 {
                continue;
            }
            let exp = nm - i;
            if exp > order {
                continue;
            }
            let term = Rational::from(binom(nm, i) * moment) * &inv_fact;
            coeffs[exp as usize] += term;
        }
    }
    TruncatedSeries::new(Var::T, coeffs)
}

pub fn check_lemma4(n: u32, max_m: u64) -> CheckReport {
    check_lemma4_on(n, max_m, &lemma4_expansion(n, max_m))
}

pub fn check_lemma4_on(n: u32, max_m: u64, expansion: &TruncatedSeries) -> CheckReport {
    let mut r = CheckReport::new("lemma4").param("n", n).param("M", max_m);
    let order = expansion.order().unwrap_or(0);
    r.expect_equal("moment expansion vs y_{n,0}", expansion, &y_series(n, 0, order));
    r
}

/// The two product identities between family streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma5Identity {
    /// `F^x_j · F^x_l = F^x_{j+l}` (x-type times x-type).
    XTimesX,
    /// `F^x_j · H_l = H_{j+l}` (x-type times y-type).
    XTimesY,
}

fn unit_gamma(spec: &HyperSpec) -> HyperSpec {
    spec.with_gamma(Rational::from(1))
}

fn x_stream(n: u32, j: u32, order: usize) -> TruncatedSeries {
    unit_gamma(&HyperSpec::x_family(n, j).spec).series(order)
}

fn h_stream(n: u32, j: u32, order: usize) -> TruncatedSeries {
    unit_gamma(&HyperSpec::h_family(n, j)).series(order)
}

/// Product identities of the family streams in `z` (unit argument scale),
/// compared exactly through `order`.
pub fn check_lemma5(identity: Lemma5Identity, n: u32, j: u32, l: u32, order: usize) -> CheckReport {
    match identity {
        Lemma5Identity::XTimesX => check_lemma5_eq52_on(n, j, l, &x_stream(n, j, order), &x_stream(n, l, order)),
        Lemma5Identity::XTimesY => check_lemma5_eq53_on(n, j, l, &x_stream(n, j, order), &h_stream(n, l, order)),
    }
}

fn lemma5_report(name: &str, n: u32, j: u32, l: u32, a: &TruncatedSeries) -> CheckReport {
    CheckReport::new(name)
        .param("n", n)
        .param("j", j)
        .param("l", l)
        .param("K", a.order().map_or("none".to_string(), |k| k.to_string()))
}

pub fn check_lemma5_eq52_on(n: u32, j: u32, l: u32, a: &TruncatedSeries, b: &TruncatedSeries) -> CheckReport {
    let mut r = lemma5_report("lemma5.x_times_x", n, j, l, a);
    if let Some(prod) = guard(&mut r, a.mul(b)) {
        let order = prod.order().unwrap_or(0);
        r.expect_equal("product vs x-type stream j+l", &prod, &x_stream(n, j + l, order));
    }
    r
}

/// Compares `a · b` against the `y`-type stream of index `j + l`, and reports
/// how two literal readings of the right-hand parameters fare: lower
/// parameters `(2l+i)/(n-1)`, and upper parameters `(j+l+i)/n` for
/// `i = 0..=n`.
pub fn check_lemma5_eq53_on(n: u32, j: u32, l: u32, a: &TruncatedSeries, b: &TruncatedSeries) -> CheckReport {
    let mut r = lemma5_report("lemma5.x_times_y", n, j, l, a);
    let Some(prod) = guard(&mut r, a.mul(b)) else {
        return r;
    };
    let order = prod.order().unwrap_or(0);
    r.expect_equal("product vs y-type stream j+l", &prod, &h_stream(n, j + l, order));

    let canonical = HyperSpec::h_family(n, j + l);
    let uppers: Vec<Rational> = (1..=n).map(|i| Rational::from((j + l + i, n))).collect();
    let lowers: Vec<Rational> = (1..n).map(|i| Rational::from((j + l + i, n - 1))).collect();
    let readings = [
        ("lower (2l+i)/(n-1)", uppers.clone(), (1..n).map(|i| Rational::from((2 * l + i, n - 1))).collect::<Vec<_>>()),
        ("upper (j+l+i)/n, i=0..n", (0..=n).map(|i| Rational::from((j + l + i, n))).collect(), lowers),
    ];
    for (label, alphas, betas) in readings {
        let outcome = match HyperSpec::new(alphas, betas, Rational::from(1)) {
            Ok(spec) => {
                let stream = spec.series(order);
                match prod.first_difference(&stream) {
                    None if spec.cancel_parameters() == unit_gamma(&canonical) => "pass (same spec)".to_string(),
                    None => "pass".to_string(),
                    Some(k) => format!("fail at order {k}"),
                }
            }
            Err(e) => format!("undefined: {e}"),
        };
        r.note(format!("reading {label}: {outcome}"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(s: &TruncatedSeries, k: usize) -> TruncatedSeries {
        let mut s = s.clone();
        *s.coeff_mut(k).unwrap() += 1;
        s
    }

    fn failing_order(r: &CheckReport) -> usize {
        match &r.witness {
            Some(Witness::Order { order, .. }) => *order,
            other => panic!("expected an order witness, got {other:?}"),
        }
    }

    #[test]
    fn theorem1_passes() {
        for n in 2..=6 {
            assert!(check_theorem1(n, 30).passed(), "n={n}");
        }
    }

    #[test]
    fn theorem1_sabotage_reports_order() {
        let x = bump(&x_series(3, 1, 20), 7);
        let r = check_theorem1_on(3, &x, &y_series(3, 0, 20));
        assert!(!r.passed());
        assert_eq!(failing_order(&r), 7);
    }

    #[test]
    fn theorem1_sabotage_in_y() {
        let y = bump(&y_series(4, 0, 20), 6);
        let r = check_theorem1_on(4, &x_series(4, 1, 20), &y);
        assert_eq!(failing_order(&r), 6);
    }

    #[test]
    fn inverse_relation_and_sabotage() {
        assert!(check_inverse_relation(5, 30).passed());
        let y = bump(&y_series(5, 0, 30), 8);
        assert_eq!(failing_order(&check_inverse_relation_on(5, &x_series(5, 1, 30), &y)), 8);
    }

    #[test]
    fn powers_pass_and_heads() {
        assert!(check_powers(3, 2, 30).passed());
        assert!(check_powers(5, 3, 40).passed());
        let heads: Vec<String> = [2, 4, 6, 8, 10].iter().map(|&k| y_series(3, 2, 10).coeffs()[k].to_string()).collect();
        assert_eq!(heads, ["1", "5", "28", "165", "1001"]);
    }

    #[test]
    fn powers_sabotage() {
        let x = bump(&x_series(3, 1, 20), 5);
        let r = check_powers_on(3, 2, &x, &y_series(3, 0, 20));
        assert!(!r.passed());
    }

    #[test]
    fn lemma3_constants() {
        for (n, c) in [(2u32, "-2"), (3, "-6"), (4, "-24"), (5, "-120")] {
            let r = check_lemma3(n, 40);
            assert!(r.passed(), "{r}");
            assert!(r.notes.iter().any(|s| s == &format!("constant {c}")));
        }
    }

    #[test]
    fn lemma3_sabotage() {
        let y = bump(&y_series(3, 0, 20), 4);
        assert!(!check_lemma3_on(3, &y).passed());
    }

    #[test]
    fn moments() {
        assert_eq!(gaussian_moment(3, 3), 6);
        assert_eq!(gaussian_moment(2, 3), 0);
        assert_eq!(gaussian_moment(0, 0), 1);
    }

    #[test]
    fn lemma4_central_binomials_and_n4() {
        let e = lemma4_expansion(2, 10);
        let want: Vec<Integer> = (0..=10).map(|m| binom(2 * m, m)).collect();
        assert_eq!(e.coeffs().iter().map(|c| c.numer().clone()).collect::<Vec<_>>(), want);
        assert_eq!(lemma4_expansion(4, 8).coeffs()[6], 28);
        assert_eq!(lemma4_expansion(3, 0).coeffs(), &[Rational::from(1)]);
        for n in 2..=5 {
            assert!(check_lemma4(n, 12).passed());
        }
    }

    #[test]
    fn lemma4_sabotage() {
        let e = bump(&lemma4_expansion(3, 6), 4);
        assert_eq!(failing_order(&check_lemma4_on(3, 6, &e)), 4);
    }

    #[test]
    fn lemma5_identities() {
        assert!(check_lemma5(Lemma5Identity::XTimesX, 2, 1, 1, 15).passed());
        assert!(check_lemma5(Lemma5Identity::XTimesX, 3, 1, 2, 15).passed());
        for l in 0..=2 {
            let r = check_lemma5(Lemma5Identity::XTimesY, 4, 2, l, 15);
            assert!(r.passed(), "{r}");
            assert_eq!(r.notes.len(), 2);
        }
    }

    #[test]
    fn lemma5_literal_upper_reading_fails() {
        let r = check_lemma5(Lemma5Identity::XTimesY, 3, 1, 1, 10);
        assert!(r.notes.iter().any(|s| s.starts_with("reading upper") && s.contains("fail")), "{:?}", r.notes);
    }

    #[test]
    fn lemma5_sabotage() {
        let a = bump(&x_stream(3, 1, 12), 3);
        let r = check_lemma5_eq52_on(3, 1, 2, &a, &x_stream(3, 2, 12));
        assert_eq!(failing_order(&r), 3);
        let b = bump(&h_stream(3, 1, 12), 2);
        let r = check_lemma5_eq53_on(3, 1, 1, &x_stream(3, 1, 12), &b);
        assert_eq!(failing_order(&r), 2);
    }

    #[test]
    fn lemma5_l0_matches_powers() {
        // With l = 0 the identity is x_{n,j} y = y_{n,j}.
        assert!(check_lemma5(Lemma5Identity::XTimesY, 5, 2, 0, 12).passed());
    }
}
