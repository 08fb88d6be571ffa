//! Hypergeometric solutions of the trinomial equation `x^n - x + t = 0`.
//!
//! The principal root `x(t)` (the one with `x(0) = 0`) and its derivative
//! `y(t) = x'(t)` are generalized hypergeometric functions of `z = t^(n-1)`.
//! This crate builds those functions as exact rational power series, evaluates
//! them at high precision with certified tail bounds, and checks every
//! algebraic identity relating them with exact arithmetic.
//!
//! Layout:
//!
//! * [`exact`]: rational scalars, truncated power series, prime factorization.
//! * [`hyper`]: hypergeometric specifications, coefficient streams, evaluation.
//! * [`trinomial`]: series and numeric solutions, all branches, large-`|t|` path.
//! * [`verify`]: identity checks and appendix table regeneration.
//! * [`cli`]: the `trinomia` command-line front end.

pub mod cli;
pub mod exact;
pub mod hyper;
pub mod numeric;
pub mod trinomial;
pub mod verify;

mod error;

pub use error::Error;
pub use exact::{Factorization, SeriesError, TruncatedSeries, Var};
pub use hyper::{EvalConfig, EvalResult, HyperError, HyperSpec};
pub use trinomial::{Method, RootResult, SolveConfig, TrinomialError, TrinomialProblem};
pub use verify::{CheckReport, CheckStatus};


pub use rug::{Complex, Float, Integer, Rational};
