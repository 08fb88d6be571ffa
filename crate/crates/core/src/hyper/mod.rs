//! Generalized hypergeometric functions `pFq(α; β; γ z)` over rational
//! parameters.
//!
//! A [`HyperSpec`] carries the upper parameters `α`, the lower parameters `β`
//! and an argument scale `γ`. Its coefficient stream `c_k` is the coefficient
//! of `z^k` (so `γ^k` is folded in):
//!
//! ```text
//! c_0 = 1,   c_{k+1} / c_k = γ (k+α_1)...(k+α_p) / ((k+β_1)...(k+β_q) (k+1))
//! ```
//!
//! The trinomial families are built by [`HyperSpec::h_family`] (the
//! generating functions `H_{n,j}` of `C(nk+j, k)`) and
//! [`HyperSpec::x_family`] (the powers `x^j` of the principal root).

mod eval;

use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use thiserror::Error;

use crate::exact::{pochhammer, TruncatedSeries, Var};

pub use eval::{EvalConfig, EvalResult, DEFAULT_MAX_TERMS, MAX_TERMS_ENV};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperError {
    #[error("lower parameter {0} is zero or a negative integer")]
    InvalidLowerParameter(Rational),
    #[error("parameter shift is not defined: {0}")]
    ShiftUndefined(String),
    #[error("|γ z| = {modulus:.6} is not inside the unit disc")]
    OutsideDisc { modulus: f64 },
    #[error("series has more upper than lower parameters plus one and does not converge")]
    Divergent,
    #[error("term budget of {terms} exhausted; best tail bound {best_bound:e}")]
    BudgetExceeded { terms: usize, best_bound: f64 },
}

/// `pFq(alphas; betas; gamma z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperSpec {
    alphas: Vec<Rational>,
    betas: Vec<Rational>,
    gamma: Rational,
}

/// `x_{n,j}(t) = t^prefactor · spec(t^(n-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSpec {
    pub prefactor: u32,
    pub spec: HyperSpec,
}

fn is_nonpositive_integer(q: &Rational) -> bool {
    q.denom() == &1 && q.cmp0().is_le()
}

/// `n^n / (n-1)^(n-1)`, the argument scale of both families.
pub fn gamma_n(n: u32) -> Rational {
    assert!(n >= 2, "degree must be at least 2");
    let num = Integer::from(n).pow(n);
    let den = Integer::from(n - 1).pow(n - 1);
    Rational::from((num, den))
}

impl HyperSpec {
    pub fn new(alphas: Vec<Rational>, betas: Vec<Rational>, gamma: Rational) -> Result<Self, HyperError> {
        if let Some(b) = betas.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(HyperError::InvalidLowerParameter(b.clone()));
        }
        Ok(HyperSpec { alphas, betas, gamma })
    }

    /// Spec of the generating function `H_{n,j}(z) = Σ C(nk+j, k) z^k`:
    /// `α_i = (j+i)/n` for `i = 1..n`, `β_i = (j+i)/(n-1)` for `i = 1..n-1`,
    /// `γ = γ_n`, with equal pairs cancelled.
    pub fn h_family(n: u32, j: u32) -> HyperSpec {
        assert!(n >= 2, "degree must be at least 2");
        let alphas = (1..=n).map(|i| Rational::from((j + i, n))).collect();
        let betas = (1..n).map(|i| Rational::from((j + i, n - 1))).collect();
        HyperSpec { alphas, betas, gamma: gamma_n(n) }.cancel_parameters()
    }

    /// Spec of `x_{n,j}(t) / t^j` as a function of `z = t^(n-1)`:
    /// `α_i = (j+i-1)/n` for `i = 1..n`, `β_i = (j+i)/(n-1)`, `γ = γ_n`,
    /// cancelled.
    pub fn x_family(n: u32, j: u32) -> XSpec {
        assert!(n >= 2, "degree must be at least 2");
        assert!(j >= 1, "x_{{n,j}} needs j >= 1");
        let alphas = (1..=n).map(|i| Rational::from((j + i - 1, n))).collect();
        let betas = (1..n).map(|i| Rational::from((j + i, n - 1))).collect();
        let spec = HyperSpec { alphas, betas, gamma: gamma_n(n) }.cancel_parameters();
        XSpec { prefactor: j, spec }
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Rational] {
        &self.betas
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `(p, q)` in `pFq`.
    pub fn shape(&self) -> (usize, usize) {
        (self.alphas.len(), self.betas.len())
    }

    /// Same parameters with a different argument scale.
    pub fn with_gamma(&self, gamma: Rational) -> HyperSpec {
        HyperSpec { gamma, ..self.clone() }
    }

    /// Removes pairs of exactly equal upper and lower parameters, one pair per
    /// match. The coefficient stream is unchanged.
    pub fn cancel_parameters(&self) -> HyperSpec {
        let mut alphas = Vec::with_capacity(self.alphas.len());
        let mut betas: Vec<Option<Rational>> = self.betas.iter().cloned().map(Some).collect();
        for a in &self.alphas {
            match betas.iter_mut().find(|b| b.as_ref() == Some(a)) {
                Some(slot) => *slot = None,
                None => alphas.push(a.clone()),
            }
        }
        HyperSpec { alphas, betas: betas.into_iter().flatten().collect(), gamma: self.gamma.clone() }
    }

    /// Exact ratio `c_{k+1} / c_k` without the factor `γ`.
    pub fn term_ratio(&self, k: u64) -> Rational {
        let mut num = Rational::from(1);
        for a in &self.alphas {
            num *= Rational::from(a + k);
        }
        let mut den = Rational::from(k + 1);
        for b in &self.betas {
            den *= Rational::from(b + k);
        }
        num / den
    }

    /// `c_0..=c_order` by the ratio recurrence.
    pub fn coefficients(&self, order: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(order + 1);
        let mut c = Rational::from(1);
        for k in 0..=order {
            if k > 0 {
                let r = self.term_ratio(k as u64 - 1);
                c *= r;
                c *= &self.gamma;
            }
            out.push(c.clone());
        }
        out
    }

    /// `c_0..=c_order` from the Pochhammer quotient
    /// `∏(α_i)_k / (∏(β_j)_k k!) γ^k`, independent of the recurrence.
    pub fn direct_coefficients(&self, order: usize) -> Vec<Rational> {
        (0..=order as u64)
            .map(|k| {
                let num = self.alphas.iter().fold(Rational::from(1), |acc, a| acc * pochhammer(a, k));
                let den = self.betas.iter().fold(Rational::from(1), |acc, b| acc * pochhammer(b, k));
                let fact = pochhammer(&Rational::from(1), k);
                let g = Rational::from((&self.gamma).pow(k as i32));
                num / den / fact * g
            })
            .collect()
    }

    /// Coefficient stream as a series in `z`, known through `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(Var::Z, self.coefficients(order))
    }

    /// `d/dz pFq(α; β; γz) = m · pFq(α+1; β+1; γz)` with
    /// `m = γ ∏α / ∏β`.
    pub fn derivative_spec(&self) -> (Rational, HyperSpec) {
        let num = self.alphas.iter().fold(self.gamma.clone(), |acc, a| acc * a);
        let den = self.betas.iter().fold(Rational::from(1), |acc, b| acc * b);
        let shifted = HyperSpec {
            alphas: self.alphas.iter().map(|a| Rational::from(a + 1)).collect(),
            betas: self.betas.iter().map(|b| Rational::from(b + 1)).collect(),
            gamma: self.gamma.clone(),
        };
        (num / den, shifted)
    }

    /// `∫ pFq(α; β; γz) dz = m · pFq(α-1; β-1; γz) + const` with
    /// `m = ∏(β-1) / (γ ∏(α-1))`.
    pub fn integral_spec(&self) -> Result<(Rational, HyperSpec), HyperError> {
        if self.alphas.iter().any(|a| *a == 1) {
            return Err(HyperError::ShiftUndefined("an upper parameter equals 1".into()));
        }
        if self.betas.iter().any(|b| *b == 1) {
            return Err(HyperError::ShiftUndefined("a lower parameter equals 1".into()));
        }
        if self.gamma.cmp0().is_eq() {
            return Err(HyperError::ShiftUndefined("argument scale is zero".into()));
        }
        let num = self.betas.iter().fold(Rational::from(1), |acc, b| acc * Rational::from(b - 1));
        let den = self.alphas.iter().fold(self.gamma.clone(), |acc, a| acc * Rational::from(a - 1));
        let shifted = HyperSpec::new(
            self.alphas.iter().map(|a| Rational::from(a - 1)).collect(),
            self.betas.iter().map(|b| Rational::from(b - 1)).collect(),
            self.gamma.clone(),
        )?;
        Ok((num / den, shifted))
    }

    /// Residual of the hypergeometric equation
    /// `D ∏(D + β_j - 1) u - w ∏(D + α_i) u` with `D = w d/dw`, for
    /// `u(w) = pFq(α; β; w)` in the normalized argument `w = γ z`. Zero
    /// through `order` when the stream is right.
    pub fn ode_residual(&self, order: usize) -> TruncatedSeries {
        let u = self.with_gamma(Rational::from(1)).series(order);
        self.ode_residual_of(&u)
    }

    /// The same operator applied to an arbitrary series in the normalized
    /// argument.
    pub fn ode_residual_of(&self, u: &TruncatedSeries) -> TruncatedSeries {
        let mut lower = u.apply_theta();
        for b in &self.betas {
            lower = lower.apply_shifted_theta(&Rational::from(b - 1));
        }
        let mut upper = u.clone();
        for a in &self.alphas {
            upper = upper.apply_shifted_theta(a);
        }
        let Some(order) = u.order() else {
            return lower;
        };
        let upper = upper.shift_up(1).truncate(order);
        lower.sub(&upper).expect("both series share the variable")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Rational]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for HyperSpec {
    /// `2F1(1/3, 2/3; 1/2; 27/4 z)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.shape();
        write!(f, "{p}F{q}(")?;
        write_list(f, &self.alphas)?;
        f.write_str("; ")?;
        write_list(f, &self.betas)?;
        write!(f, "; {} z)", self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::coeff_c;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn qs(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn h_family_parameters() {
        let s = HyperSpec::h_family(3, 0);
        assert_eq!(s.alphas(), qs(&[(1, 3), (2, 3)]));
        assert_eq!(s.betas(), qs(&[(1, 2)]));
        assert_eq!(s.gamma(), &q(27, 4));

        let s = HyperSpec::h_family(5, 0);
        assert_eq!(s.alphas(), qs(&[(1, 5), (2, 5), (3, 5), (4, 5)]));
        assert_eq!(s.betas(), qs(&[(1, 4), (1, 2), (3, 4)]));
        assert_eq!(s.gamma(), &q(3125, 256));

        let s = HyperSpec::h_family(3, 2);
        assert_eq!(s.alphas(), qs(&[(1, 1), (4, 3), (5, 3)]));
        assert_eq!(s.betas(), qs(&[(3, 2), (2, 1)]));
    }

    #[test]
    fn x_family_parameters() {
        let x = HyperSpec::x_family(5, 1);
        assert_eq!(x.prefactor, 1);
        assert_eq!(x.spec.alphas(), qs(&[(1, 5), (2, 5), (3, 5), (4, 5)]));
        assert_eq!(x.spec.betas(), qs(&[(1, 2), (3, 4), (5, 4)]));
        assert_eq!(x.spec.gamma(), &q(3125, 256));

        let x = HyperSpec::x_family(2, 1);
        assert_eq!(x.spec.alphas(), qs(&[(1, 2), (1, 1)]));
        assert_eq!(x.spec.betas(), qs(&[(2, 1)]));
        assert_eq!(x.spec.gamma(), &q(4, 1));

        let x = HyperSpec::x_family(3, 1);
        assert_eq!(x.spec.alphas(), qs(&[(1, 3), (2, 3)]));
        assert_eq!(x.spec.betas(), qs(&[(3, 2)]));
    }

    #[test]
    fn cancellation_examples() {
        let s = HyperSpec::new(qs(&[(1, 3), (2, 3), (1, 1)]), qs(&[(1, 2), (1, 1)]), q(1, 1)).unwrap();
        let c = s.cancel_parameters();
        assert_eq!(c.alphas(), qs(&[(1, 3), (2, 3)]));
        assert_eq!(c.betas(), qs(&[(1, 2)]));

        let s = HyperSpec::new(qs(&[(1, 3)]), qs(&[(1, 2)]), q(1, 1)).unwrap();
        assert_eq!(s.cancel_parameters(), s);

        let s = HyperSpec::new(qs(&[(1, 1), (1, 1)]), qs(&[(1, 1)]), q(1, 1)).unwrap();
        let c = s.cancel_parameters();
        assert_eq!(c.alphas(), qs(&[(1, 1)]));
        assert!(c.betas().is_empty());
    }

    #[test]
    fn rejects_bad_lower_parameter() {
        assert!(HyperSpec::new(vec![], qs(&[(0, 1)]), q(1, 1)).is_err());
        assert!(HyperSpec::new(vec![], qs(&[(-3, 1)]), q(1, 1)).is_err());
        assert!(HyperSpec::new(vec![], qs(&[(-3, 2)]), q(1, 1)).is_ok());
    }

    #[test]
    fn coefficient_examples() {
        let c = HyperSpec::h_family(2, 0).coefficients(4);
        assert_eq!(c, [1, 2, 6, 20, 70]);
        let c = HyperSpec::h_family(6, 0).coefficients(3);
        assert_eq!(c, [1, 6, 66, 816]);
        assert_eq!(HyperSpec::h_family(4, 3).coefficients(0), [1]);
    }

    #[test]
    fn recurrence_matches_pochhammer_and_binomial() {
        for n in 2..=6u32 {
            for j in 0..=4u32 {
                let s = HyperSpec::h_family(n, j);
                let rec = s.coefficients(50);
                assert_eq!(rec, s.direct_coefficients(50), "n={n} j={j}");
                for (k, c) in rec.iter().enumerate() {
                    assert_eq!(*c, coeff_c(n.into(), j.into(), k as u64), "n={n} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn derivative_multiplier_is_j_plus_n() {
        for n in 2..=6u32 {
            for j in 0..=4u32 {
                let (m, shifted) = HyperSpec::h_family(n, j).derivative_spec();
                assert_eq!(m, j + n, "n={n} j={j}");
                let alphas = (1..=n).map(|i| Rational::from((j + n + i, n))).collect();
                let betas = (0..n - 1).map(|i| Rational::from((j + n + i, n - 1))).collect();
                let listed = HyperSpec::new(alphas, betas, gamma_n(n)).unwrap();
                assert_eq!(shifted.cancel_parameters(), listed.cancel_parameters(), "n={n} j={j}");
            }
        }
        let s = HyperSpec::new(qs(&[(1, 2)]), vec![], q(4, 1)).unwrap();
        let (m, d) = s.derivative_spec();
        assert_eq!(m, 2);
        assert_eq!(d.alphas(), qs(&[(3, 2)]));
    }

    #[test]
    fn derivative_stream_is_formal_derivative() {
        let s = HyperSpec::x_family(4, 2).spec;
        let (m, d) = s.derivative_spec();
        let orig = s.coefficients(31);
        let shifted = d.coefficients(30);
        for k in 0..=30 {
            assert_eq!(Rational::from(&shifted[k] * &m), Rational::from(&orig[k + 1] * (k as u64 + 1)));
        }
    }

    #[test]
    fn integral_inverts_derivative() {
        for (n, j) in [(3, 1), (4, 2), (5, 3), (2, 2)] {
            let s = HyperSpec::h_family(n, j);
            let (m1, d) = s.derivative_spec();
            let (m2, back) = d.integral_spec().unwrap();
            assert_eq!(back, s);
            assert_eq!(Rational::from(&m1 * &m2), 1);
        }
    }

    #[test]
    fn integral_stream_is_formal_antiderivative() {
        // y_{3,0} as a function of z integrates to a stream whose derivative
        // is the original one
        let s = HyperSpec::h_family(3, 0);
        let (m, int) = s.integral_spec().unwrap();
        let anti = int.series(21).scale(&m);
        let formal = s.series(20).integrate();
        // equal up to the constant of integration
        let diff = anti.sub(&formal).unwrap();
        assert!(diff.coeffs()[1..].iter().all(|c| c.cmp0().is_eq()));
    }

    #[test]
    fn integral_shift_errors_and_finiteness() {
        let x21 = HyperSpec::x_family(2, 1).spec;
        assert!(matches!(x21.integral_spec(), Err(HyperError::ShiftUndefined(_))));
        let x52 = HyperSpec::x_family(5, 2).spec;
        assert!(x52.alphas().iter().all(|a| *a != 1));
        let (m, _) = x52.integral_spec().unwrap();
        // ∏(β-1)/(γ∏(α-1)) for β = 3/4, 5/4, 3/2 and α = 2/5, 3/5, 4/5, 6/5
        let expected = Rational::from((-1, 4)) * q(1, 4) * q(1, 2)
            / (q(3125, 256) * q(-3, 5) * q(-2, 5) * q(-1, 5) * q(1, 5));
        assert_eq!(m, expected);
    }

    #[test]
    fn ode_residual_vanishes() {
        assert!(HyperSpec::h_family(2, 0).ode_residual(20).is_zero());
        assert!(HyperSpec::h_family(5, 0).ode_residual(40).is_zero());
        assert!(HyperSpec::x_family(4, 1).spec.ode_residual(40).is_zero());
        assert_eq!(HyperSpec::h_family(5, 0).ode_residual(40).order(), Some(40));
    }

    #[test]
    fn ode_residual_detects_a_bad_coefficient() {
        let s = HyperSpec::h_family(3, 1);
        let mut u = s.with_gamma(Rational::from(1)).series(30);
        *u.coeff_mut(12).unwrap() += 1;
        let r = s.ode_residual_of(&u);
        assert_eq!(r.first_nonzero(), Some(12));
    }

    #[test]
    fn display_form() {
        assert_eq!(HyperSpec::h_family(3, 0).to_string(), "2F1(1/3, 2/3; 1/2; 27/4 z)");
    }
}
