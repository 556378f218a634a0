use thiserror::Error;

/// Errors raised by the algebra, linear-algebra and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("zero element has no symbol")]
    ZeroSymbol,
    #[error("invalid algebra description: {0}")]
    InvalidAlgebra(String),
    #[error("degree {degree} exceeds the slice bound {bound}")]
    OutOfSlice { degree: u32, bound: u32 },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("hypothesis not established: {0}")]
    HypothesisNotProven(String),
    #[error("localization mismatch: {0}")]
    LocalizationMismatch(String),
    #[error("empty generator list")]
    EmptyGenerators,
}

pub type Result<T> = std::result::Result<T, Error>;
