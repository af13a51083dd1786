use thiserror::Error;

use crate::groebner::MultiPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("degenerate quadratic extension: {0} is already a square")]
    DegenerateExtension(String),

    #[error("scalar {value} is not an element of {field}")]
    ScalarOutsideField { value: String, field: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} has no square root in {1}")]
    NoSquareRoot(String, String),

    #[error("side condition violated: {0}")]
    SideCondition(String),

    /// A constructor produced a matrix that failed residual verification.
    #[error("construction inconsistency: {0}")]
    ConstructionInconsistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("enumeration budget exceeded: {candidates} candidates, budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),

    /// Buchberger ran out of S-pairs before finishing. `partial` holds the
    /// generators accumulated so far; it is not a Gröbner basis.
    #[error("S-pair cap of {cap} exceeded ({} partial generators)", partial.len())]
    PairCapExceeded { cap: usize, partial: Vec<MultiPoly> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
