//! Exact arithmetic: combinatorial integers, truncated rational power series,
//! and integer factorization.
//!
//! Scalars are [`rug::Integer`] and [`rug::Rational`]; a `Rational` is always
//! kept in lowest terms with a positive denominator.

mod comb;
mod factor;
mod series;

pub use comb::{binom, coeff_c, factorial, fuss_catalan, pochhammer};
pub use factor::{factorize, FactorError, Factorization};
pub use series::{SeriesError, TruncatedSeries, Var};
