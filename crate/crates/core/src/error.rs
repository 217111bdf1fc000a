use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("Pfaffian of odd order {0}")]
    OddOrder(usize),
    #[error("singular block")]
    Singular,
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget { what: String, needed: usize, limit: usize },
    #[error("operation requires a field of characteristic zero")]
    PositiveCharacteristic,
    #[error("constant is zero or could not be resolved")]
    ConstantUnavailable,
    #[error("inconsistent residues in reconstruction")]
    InconsistentResidues,
    #[error("modulus product too small for the bound")]
    InsufficientModulus,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
