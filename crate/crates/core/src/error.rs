use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("weight is not Hermitian")]
    NotHermitian,
    #[error("weight is singular")]
    SingularWeight,
    #[error("Moore-Penrose inverse does not exist: {0}")]
    NotExists(String),
    #[error("internal inconsistency (implementation bug): {0}")]
    InternalInconsistency(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
