use thiserror::Error;

use crate::ov::TrivialityClass;

#[derive(Debug, Error)]
pub enum Error {
    #[error("curve must have at least one vertex")]
    EmptyCurve,

    #[error("dimension must be 1 or 2, got {0}")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {0}D vs {1}D")]
    DimensionMismatch(usize, usize),

    #[error("operation requires a {expected}D curve, got {found}D")]
    WrongDimension { expected: usize, found: usize },

    #[error("parameter {t} outside [1, {len}]")]
    ParamOutOfRange { t: String, len: usize },

    #[error("{0}")]
    Domain(String),

    #[error("no witness exists at eps = {0}")]
    NoWitness(String),

    #[error("OV instance is not nontrivial ({0:?})")]
    NotNontrivial(TrivialityClass),

    #[error("coordinates too large for exact integer evaluation")]
    TooLarge,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
