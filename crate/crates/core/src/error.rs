use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("graph is not a disjoint union of complete graphs")]
    NotClusterGraph,
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("no generic element found within a budget of {budget} candidates")]
    SearchExhausted { budget: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
