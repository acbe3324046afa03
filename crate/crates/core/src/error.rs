use thiserror::Error;

use crate::words::{NotFc, System};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("system mismatch: expected {expected}, found {found}")]
    SystemMismatch { expected: System, found: System },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("word is not reduced and fully commutative: {0}")]
    NotFullyCommutative(NotFc),

    #[error("usage: {0}")]
    Usage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A claimed identity failed to hold exactly.
    #[error("falsification: {0}")]
    Falsification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
