use thiserror::Error;

use crate::field::FieldError;
use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("target weight {w} exceeds the configured cap {cap}")]
    WeightCap { w: u64, cap: u64 },
    #[error("solution recovery failed after {attempts} attempts; raise recovery_trials")]
    RecoveryExhausted { attempts: usize },
    #[error("solution failed validation: {0}")]
    Validation(Violation),
    #[error("oracle size guard: {0}")]
    OracleGuard(String),
    #[error("prime pool needs {needed} primes, above the supported {limit}")]
    PrimePool { needed: u64, limit: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }
}
