use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("invalid cone: {0}")]
    Cone(String),
    #[error("invalid mixed Hodge structure: {0}")]
    Mhs(String),
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
