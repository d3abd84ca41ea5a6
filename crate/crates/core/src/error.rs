use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("input is zero up to its known precision")]
    ZeroInput,
    #[error("insufficient precision: need terms below t^{needed}, known below t^{have}")]
    InsufficientPrecision { needed: i64, have: i64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("place is not rational over the coefficient field: {0}")]
    NonRationalPlace(String),
    #[error("triviality of the symbol value could not be decided")]
    UndecidedTriviality,
    #[error("precision gate failed: result changed when precision was doubled")]
    PrecisionGate,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("expected {expected} components, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
