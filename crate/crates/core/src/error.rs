use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at p = 1 (denominator {denominator} vanishes)")]
    PoleAtUnity { denominator: String },
    #[error("series head must be 1, found {0}")]
    BadSeriesHead(String),
    #[error("{0} is not a multiple of 1/2")]
    NotHalfInteger(String),
    #[error("matrix is not homogeneous with respect to its parity vector")]
    NonHomogeneous,
    #[error("matrix argument is not nilpotent (unipotent) within {0} steps")]
    NotNilpotent(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bracket {kind} is not defined at {arg}")]
    BadBracketArg { kind: &'static str, arg: String },
    #[error("dimension or parity mismatch: {0}")]
    Shape(String),
    #[error("entry ({row},{col}) keeps a pole after the q -> 1 limit: {value}")]
    CancellationFailure {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
