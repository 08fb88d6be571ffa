use std::ops::RangeInclusive;

use rug::{Complex, Float, Rational};

use crate::numeric::{parse_real, ComplexLiteral};

/// `3`, `2..5` or `2..=5`, all inclusive, each degree at least 2.
pub fn parse_degree_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |v: &str| v.trim().parse::<u32>().map_err(|_| format!("invalid degree {v:?}"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if *range.start() < 2 || range.start() > range.end() {
        return Err(format!("degree range {s:?} must be nonempty with degrees >= 2"));
    }
    Ok(range)
}

/// A grid value of `t`: absolute, or a multiple of `r_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridPoint {
    Absolute(ComplexLiteral),
    Relative(Rational),
}

impl GridPoint {
    fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s.strip_suffix('r') {
            Some(f) => parse_real(f).map(GridPoint::Relative).ok_or(format!("invalid grid point {s:?}")),
            None => s.parse().map(GridPoint::Absolute).map_err(|e| e.to_string()),
        }
    }

    /// The value of `t` for radius `r_n`.
    pub fn resolve(&self, r_n: &Float, prec: u32) -> Complex {
        match self {
            GridPoint::Absolute(z) => z.to_complex(prec),
            GridPoint::Relative(f) => Complex::with_val(prec, Float::with_val(prec, r_n * f)),
        }
    }

    /// `|t| / r_n` as a double.
    pub fn ratio(&self, r_n: &Float) -> f64 {
        match self {
            GridPoint::Relative(f) => Float::with_val(53, f).to_f64(),
            GridPoint::Absolute(z) => {
                let t = z.to_complex(64);
                Float::with_val(64, t.abs_ref()).to_f64() / r_n.to_f64()
            }
        }
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridPoint::Absolute(z) => write!(f, "{z}"),
            GridPoint::Relative(q) => write!(f, "{}r", Float::with_val(53, q).to_f64()),
        }
    }
}

/// `a,b,c` or `a..b` with `points` evenly spaced values including both ends.
/// Range ends must be both relative or both real.
pub fn parse_grid(s: &str, points: usize) -> Result<Vec<GridPoint>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (GridPoint::parse(a)?, GridPoint::parse(b)?);
        let points = points.max(2);
        let lerp = |lo: &Rational, hi: &Rational, i: usize| -> Rational {
            let w = Rational::from((i as u64, (points - 1) as u64));
            lo + Rational::from(hi - lo) * w
        };
        return match (a, b) {
            (GridPoint::Relative(lo), GridPoint::Relative(hi)) => {
                Ok((0..points).map(|i| GridPoint::Relative(lerp(&lo, &hi, i))).collect())
            }
            (GridPoint::Absolute(lo), GridPoint::Absolute(hi)) if lo.is_real() && hi.is_real() => Ok((0..points)
                .map(|i| GridPoint::Absolute(ComplexLiteral { re: lerp(&lo.re, &hi.re, i), im: Rational::new() }))
                .collect()),
            _ => Err(format!("range {s:?} needs two relative or two real ends")),
        };
    }
    s.split(',').map(GridPoint::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degree_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_degree_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_degree_range("4").unwrap(), 4..=4);
        assert!(parse_degree_range("1..3").is_err());
        assert!(parse_degree_range("5..3").is_err());
        assert!(parse_degree_range("x").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.5r..0.95r", 4).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[0], GridPoint::Relative(Rational::from((1, 2))));
        assert_eq!(g[3], GridPoint::Relative(Rational::from((19, 20))));
        assert_eq!(g[1], GridPoint::Relative(Rational::from((65, 100))));
        let g = parse_grid("0.1,0.2+0.1i,0.9r", 0).unwrap();
        assert_eq!(g.len(), 3);
        assert!(matches!(g[2], GridPoint::Relative(_)));
        assert!(parse_grid("0.1..0.5r", 3).is_err());
        assert!(parse_grid("zz", 3).is_err());
    }

    #[test]
    fn resolve_relative() {
        let r = Float::with_val(64, 0.25);
        let t = GridPoint::Relative(Rational::from((1, 2))).resolve(&r, 64);
        assert_eq!(t, Complex::with_val(64, 0.125));
    }
}
