use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("coset of dimension {dim} exceeds the enumeration limit {limit}")]
    EnumerationLimit { dim: usize, limit: usize },

    #[error("dimension {n} exceeds the dense limit {limit}")]
    DenseLimit { n: usize, limit: usize },

    #[error("{what} needs {needed} elements, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },

    #[error("truth table entry at {index} is {value}, expected +1 or -1")]
    NonBooleanEntry { index: usize, value: i64 },

    #[error("spectrum is not boolean: {0}")]
    NonBooleanSpectrum(String),

    #[error("restriction direction must be nonzero")]
    ZeroDirection,

    #[error("support of size {0} has no folding direction")]
    NoDirection(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("no valid instance after {attempts} attempts (last verdict: {last})")]
    RetriesExhausted { attempts: u64, last: String },

    #[error("depth limit {limit} exceeded")]
    DepthLimit { limit: usize },

    #[error("mask {0} is not in the structural support")]
    NotInSupport(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("value {0} does not fit in the requested integer width")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
