use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed polynomial: {0:?}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("board has {cells} cells, above the exhaustive limit of {limit}")]
    LimitExceeded { cells: usize, limit: usize },
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("characteristic polynomial coefficient of x^{degree} is not integral: {coeff}")]
    NonIntegralCharPoly { degree: usize, coeff: String },
    #[error("index {n} is below the first initial index {first}")]
    IndexBelowRange { n: i64, first: i64 },
    #[error("q must be at least 4, got {0}")]
    InvalidQ(u32),
    #[error("matrix of size {0} is too large for cofactor expansion (max 8)")]
    MatrixTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
