//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("negative twist {0} is not supported over a non-perfect ring")]
    NegativeTwist(i64),
    #[error("precision exhausted: {0}")]
    PrecisionLoss(String),
    #[error("divergence guard failed: {0}")]
    Divergence(String),
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u32),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
