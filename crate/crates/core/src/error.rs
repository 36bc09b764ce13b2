use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Fano model: {0}")]
    InvalidModel(String),
    #[error("class of degree {degree} does not fit on a fourfold")]
    DimensionOverflow { degree: u32 },
    #[error("expression is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("value {0} is not an integer")]
    NonIntegral(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hypothesis violated: H^{{>0}}(O(D))=0 fails for this configuration ({0})")]
    HypothesisViolated(String),
    #[error("step budget of {0} iterations exhausted")]
    BudgetExhausted(usize),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("missing input: {0}")]
    Missing(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Invalid(String),
}
