use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("no codeword within the unique-decoding radius")]
    DecodingFailure,
    #[error("sampling gave up after {0} attempts")]
    SamplingFailure(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed data: {0}")]
    Format(String),
    #[error("checksum mismatch: data is corrupted")]
    Corruption,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
