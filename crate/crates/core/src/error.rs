use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a unit ball: self-product is {0}")]
    NotUnit(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("not realizable: {0}")]
    Unrealizable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown polytope `{0}`")]
    UnknownPolytope(String),
    #[error("orbit enumeration needs a depth bound")]
    MissingBound,
    #[error("value leaves the scalar field: {0}")]
    Field(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
