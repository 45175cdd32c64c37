use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different ring contexts")]
    ContextMismatch,
    #[error("variable index {index} out of range for a ring with {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("exponent vectors of length {0} and {1} cannot be compared")]
    LengthMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("J is not contained in I: generator `{0}` is not a member")]
    NotContained(String),
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("computation interrupted by deadline")]
    Interrupted,
}

pub type Result<T> = std::result::Result<T, Error>;
