use thiserror::Error;

use crate::exact::{FactorError, SeriesError};
use crate::hyper::HyperError;
use crate::numeric::ParseNumberError;
use crate::trinomial::TrinomialError;


/// Any failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Trinomial(#[from] TrinomialError),
    #[error(transparent)]
    Parse(#[from] ParseNumberError),
}
