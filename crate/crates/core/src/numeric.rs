//! Working-precision helpers shared by evaluation, root finding and the CLI.

use std::fmt;
use std::str::FromStr;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use thiserror::Error;

/// Guard digits added on top of the requested accuracy.
pub const GUARD_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Binary precision for a target absolute accuracy `eps` when up to
/// `max_terms` terms may be accumulated: target digits plus guard digits plus
/// `ceil(log10(max_terms))`.
pub fn precision_for(eps: f64, max_terms: usize) -> u32 {
    let target = if eps > 0.0 && eps.is_finite() { (-eps.log10()).ceil().max(1.0) } else { 16.0 };
    let growth = (max_terms.max(1) as f64).log10().ceil();
    let digits = target + GUARD_DIGITS as f64 + growth;
    (digits * BITS_PER_DIGIT).ceil() as u32 + 8
}

/// Binary precision equivalent to `digits` decimal digits.
pub fn precision_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * BITS_PER_DIGIT).ceil() as u32 + 8
}

/// `10^-(digits - 10)`, the default accuracy tied to a digit count.
pub fn default_eps(digits: u32) -> f64 {
    let exp = digits.saturating_sub(GUARD_DIGITS).max(1);
    format!("1e-{exp}").parse().expect("valid float literal")
}

/// `|z|` rounded up to `f64`.
pub fn abs_up(z: &Complex) -> f64 {
    Float::with_val(z.prec().0.max(64), z.abs_ref()).to_f64_round(Round::Up)
}

/// `|x|` of a real, rounded up to `f64`.
pub fn float_up(x: &Float) -> f64 {
    x.to_f64_round(Round::Up)
}

pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

pub fn complex_from_f64(re: f64, im: f64, prec: u32) -> Complex {
    Complex::with_val(prec, (re, im))
}

/// `z^n` for a small nonnegative integer exponent.
pub fn cpow(z: &Complex, n: u32) -> Complex {
    Complex::with_val(z.prec(), z.pow(n))
}

/// `x^n - x + t`.
pub fn trinomial_value(n: u32, x: &Complex, t: &Complex) -> Complex {
    let mut v = cpow(x, n);
    v -= x;
    v += t;
    v
}

/// Writes `z` as `a+bi` with `digits` significant digits, or as a plain real
/// when the imaginary part is exactly zero or below `drop_im_below`.
pub fn format_complex(z: &Complex, digits: usize, drop_im_below: f64) -> String {
    let re = format_float(z.real(), digits);
    let im_abs = float_up(&Float::with_val(64, z.imag().abs_ref()));
    if z.imag().is_zero() || im_abs <= drop_im_below {
        return re;
    }
    let im = format_float(z.imag(), digits);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// `digits` significant digits, positional when the decimal exponent is in
/// `-6..21`, scientific otherwise.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sci = x.to_string_radix(10, Some(digits.max(2)));
    let Some((mantissa, exp)) = sci.split_once('e') else {
        return sci;
    };
    let exp = exp.parse::<i32>().unwrap_or(0);
    if !(-6..21).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let all: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    // `all` holds d.ddd with the point after the first digit
    let point = 1 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), all)
    } else if point as usize >= all.len() {
        format!("{all}{}", "0".repeat(point as usize - all.len()))
    } else {
        format!("{}.{}", &all[..point as usize], &all[point as usize..])
    };
    format!("{sign}{body}")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a number (expected a, a/b, a+bi or bi)")]
pub struct ParseNumberError(pub String);

/// An exact complex literal: real and imaginary parts as rationals.
///
/// Accepted forms: `0.25`, `1/4`, `-3e-2`, `0.3+0.1i`, `1/4-2/3i`, `2i`, `-i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexLiteral {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexLiteral {
    pub fn to_complex(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.re, &self.im))
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }
}

impl fmt::Display for ComplexLiteral {
    /// Exact form: `1/4`, `3/10+1/10i`, `-2i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if self.re.cmp0().is_ne() {
            write!(f, "{}", self.re)?;
            if self.im.cmp0().is_gt() {
                f.write_str("+")?;
            }
        }
        write!(f, "{}i", self.im)
    }
}

impl FromStr for ComplexLiteral {
    type Err = ParseNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseNumberError(s.to_string());
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not the leading one or an exponent sign
            let bytes = body.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                    split = Some(i);
                    break;
                }
            }
            let (re, im) = match split {
                Some(i) => (parse_real(&body[..i]).ok_or_else(bad)?, &body[i..]),
                None => (Rational::new(), body),
            };
            let im = match im {
                "" | "+" => Rational::from(1),
                "-" => Rational::from(-1),
                other => parse_real(other).ok_or_else(bad)?,
            };
            Ok(ComplexLiteral { re, im })
        } else {
            Ok(ComplexLiteral { re: parse_real(&s).ok_or_else(bad)?, im: Rational::new() })
        }
    }
}

/// Parses a decimal (with optional exponent) or `a/b` as an exact rational.
pub fn parse_real(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_real(num)?;
        let den = parse_real(den)?;
        if den.cmp0().is_eq() {
            return None;
        }
        return Some(num / den);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: rug::Integer = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = rug::Integer::from(10);
    let mut q = Rational::from(digits);
    if scale >= 0 {
        q *= ten.pow(scale as u32);
    } else {
        q /= ten.pow((-scale) as u32);
    }
    Some(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> ComplexLiteral {
        s.parse().unwrap()
    }

    #[test]
    fn parses_reals() {
        assert_eq!(lit("0.25").re, Rational::from((1, 4)));
        assert_eq!(lit("1/4").re, Rational::from((1, 4)));
        assert_eq!(lit("-3e-2").re, Rational::from((-3, 100)));
        assert_eq!(lit("2.5E1").re, 25);
        assert_eq!(lit(".5").re, Rational::from((1, 2)));
        assert!(lit("7").is_real());
    }

    #[test]
    fn parses_complex() {
        let z = lit("0.3+0.1i");
        assert_eq!((z.re, z.im), (Rational::from((3, 10)), Rational::from((1, 10))));
        let z = lit("1/4-2/3i");
        assert_eq!((z.re, z.im), (Rational::from((1, 4)), Rational::from((-2, 3))));
        let z = lit("-i");
        assert_eq!((z.re, z.im), (Rational::new(), Rational::from(-1)));
        let z = lit("1e-3+2e+1i");
        assert_eq!((z.re, z.im), (Rational::from((1, 1000)), Rational::from(20)));
    }

    #[test]
    fn display_is_exact_and_reparses() {
        for (s, shown) in [("0.25", "1/4"), ("0.3+0.1i", "3/10+1/10i"), ("-2i", "-2i"), ("1/4-2/3i", "1/4-2/3i")] {
            let z = lit(s);
            assert_eq!(z.to_string(), shown);
            assert_eq!(lit(shown), z);
        }
    }

    #[test]
    fn positional_formatting() {
        let f = |v: f64, d| format_float(&Float::with_val(64, v), d);
        assert_eq!(f(0.1000100050003, 10), "0.1000100050");
        assert_eq!(f(-2.5, 4), "-2.500");
        assert_eq!(f(1234.5, 6), "1234.50");
        assert_eq!(f(1.5e-7, 3), "1.50e-7");
        assert_eq!(f(3e25, 3), "3.00e25");
        assert_eq!(f(100.0, 2), "100");
        assert_eq!(f(0.0, 5), "0");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1+", "0.3+0.1j", "--1", "1..2"] {
            assert!(s.parse::<ComplexLiteral>().is_err(), "{s}");
        }
    }

    #[test]
    fn precision_grows_with_accuracy() {
        assert!(precision_for(1e-30, 100_000) > precision_for(1e-10, 100_000));
        // 30 + 10 guard + 5 digits
        assert!(precision_for(1e-30, 100_000) >= 149);
        assert_eq!(default_eps(40), 1e-30);
    }
}
