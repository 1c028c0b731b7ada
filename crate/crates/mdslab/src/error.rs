use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus polynomial is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix has no nonzero rows")]
    ZeroMatrix,
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("code is not NMDS")]
    NotNmds,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("exponent set violates the partition requirement: {0}")]
    PartitionViolation(String),
    #[error("internal consistency failure: {0}")]
    MismatchDetected(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
