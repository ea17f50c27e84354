use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Syntax error in polynomial or operator text; `pos` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable {name} out of range: index {index} exceeds 2p = {max}")]
    VariableOutOfRange { name: String, index: usize, max: usize },
    #[error("context mismatch: p = {left} vs p = {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("quaternionic dimension p must be at least 1")]
    InvalidContext,
    #[error("operator has no fixed bidegree shift")]
    NoBidegreeShift,
    #[error("polynomial is not bihomogeneous")]
    NotHomogeneous,
    #[error("polynomial is not harmonic")]
    NotHarmonic,
    #[error("orientation {orientation} is not valid for bidegree ({a},{b})")]
    InvalidOrientation { orientation: String, a: u32, b: u32 },
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
