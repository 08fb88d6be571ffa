use std::fmt;

use rug::{Assign, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of the series variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "z")]
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::T => "t",
            Var::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series variables differ: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("series has a zero (or unknown) constant term and cannot be inverted")]
    ZeroConstant,
    #[error("monomial substitution exponent must be at least 1")]
    ZeroExponent,
}

/// Power series with exact rational coefficients, known through a finite
/// order.
///
/// A series of order `K` stores `K + 1` coefficients. Coefficients of larger
/// exponent are unknown, not zero, and every operation returns only the
/// coefficients its inputs determine. A series may know no coefficients at
/// all (for instance the derivative of a constant known only to order 0); its
/// [`order`](Self::order) is then `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    var: Var,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(var: Var, coeffs: Vec<Rational>) -> Self {
        TruncatedSeries { var, coeffs }
    }

    pub fn from_integers<I, T>(var: Var, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        Rational: From<T>,
    {
        Self::new(var, coeffs.into_iter().map(Rational::from).collect())
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, vec![Rational::new(); order + 1])
    }

    pub fn constant(var: Var, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, Rational::from(1), order)
    }

    /// `c * var^exp`, known through `order` (zero if `exp > order`).
    pub fn monomial(var: Var, exp: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// The series of the variable itself.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::monomial(var, 1, Rational::from(1), order)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Highest known exponent, or `None` when nothing is known.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of known coefficients, `order + 1`.
    pub fn known_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `var^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn coeff_mut(&mut self, k: usize) -> Option<&mut Rational> {
        self.coeffs.get_mut(k)
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Drops everything beyond `order`. Has no effect if already shorter.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0().is_eq())
    }

    /// True when the series is the constant `c` through its order.
    pub fn is_constant(&self, c: &Rational) -> bool {
        match self.coeffs.split_first() {
            Some((c0, rest)) => c0 == c && rest.iter().all(|r| r.cmp0().is_eq()),
            None => false,
        }
    }

    /// Lowest exponent at which two series disagree, compared through the
    /// smaller of the two orders.
    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.cmp0().is_ne())
    }

    fn check_var(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(SeriesError::VarMismatch(self.var, other.var))
        }
    }

    fn shared_len(&self, other: &TruncatedSeries) -> usize {
        self.coeffs.len().min(other.coeffs.len())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_var(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Rational::from(a + b))
            .collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_var(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Rational::from(a - b))
            .collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|a| Rational::from(a * c)).collect();
        Self::new(self.var, coeffs)
    }

    pub fn neg(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|a| Rational::from(-a)).collect();
        Self::new(self.var, coeffs)
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &Rational) -> TruncatedSeries {
        let mut out = self.clone();
        if let Some(c0) = out.coeffs.first_mut() {
            *c0 += c;
        }
        out
    }

    /// Cauchy product, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_var(other)?;
        let len = self.shared_len(other);
        let mut coeffs = vec![Rational::new(); len];
        let mut prod = Rational::new();
        for (i, a) in self.coeffs[..len].iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in other.coeffs[..len - i].iter().enumerate() {
                if b.cmp0().is_eq() {
                    continue;
                }
                prod.assign(a * b);
                coeffs[i + j] += &prod;
            }
        }
        Ok(Self::new(self.var, coeffs))
    }

    /// `self^e` by binary exponentiation; `self^0` is the constant 1 at the
    /// same order.
    pub fn pow(&self, mut e: u32) -> TruncatedSeries {
        let mut result = match self.order() {
            Some(k) => Self::one(self.var, k),
            None => return self.clone(),
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same variable");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same variable");
            }
        }
        result
    }

    /// Multiplicative inverse through the same order.
    pub fn reciprocal(&self) -> Result<TruncatedSeries, SeriesError> {
        let a0 = match self.coeffs.first() {
            Some(a0) if a0.cmp0().is_ne() => a0,
            _ => return Err(SeriesError::ZeroConstant),
        };
        let inv0 = Rational::from(a0.recip_ref());
        let len = self.coeffs.len();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(inv0.clone());
        let mut prod = Rational::new();
        for k in 1..len {
            let mut acc = Rational::new();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if a.cmp0().is_eq() {
                    continue;
                }
                prod.assign(a * &out[k - i]);
                acc += &prod;
            }
            acc *= &inv0;
            out.push(-acc);
        }
        Ok(Self::new(self.var, out))
    }

    /// Term-wise derivative; the order drops by one.
    pub fn differentiate(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from(c * k as u64))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::new());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| Rational::from(c / (k as u64 + 1))),
        );
        Self::new(self.var, coeffs)
    }

    /// Euler operator `D = var d/dvar`: multiplies the coefficient of
    /// `var^k` by `k`. Order unchanged.
    pub fn apply_theta(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Rational::from(c * k as u64))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// `(D + c) self`.
    pub fn apply_shifted_theta(&self, c: &Rational) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * Rational::from(c + k as u64))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// Multiplies by `var^s`, the order grows by `s`.
    pub fn shift_up(&self, s: usize) -> TruncatedSeries {
        let mut coeffs = vec![Rational::new(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.var, coeffs)
    }

    /// Substitutes `z = t^m` into a series in `z` and multiplies by
    /// `t^prefactor`. The result is a series in `t` of order
    /// `m * order + prefactor`.
    pub fn substitute_monomial(&self, m: usize, prefactor: usize) -> Result<TruncatedSeries, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroExponent);
        }
        let Some(order) = self.order() else {
            return Ok(Self::new(Var::T, Vec::new()));
        };
        let mut coeffs = vec![Rational::new(); m * order + prefactor + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[prefactor + m * k] = c.clone();
        }
        Ok(Self::new(Var::T, coeffs))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            let neg = c.cmp0().is_lt();
            let abs = Rational::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs == 1;
            match (k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        match self.order() {
            Some(k) => write!(f, " + O({}^{})", self.var, k + 1),
            None => write!(f, " + O(1)"),
        }
    }
}
