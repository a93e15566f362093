use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("2s+1 = {dim} is not a power of two")]
    IncompatibleRepresentation { dim: u64 },

    #[error("invalid spin representation: 2s = {0} must be a positive odd integer")]
    InvalidSpin(u32),

    #[error("invalid flavor index {alpha} for {flavors} flavors")]
    InvalidFlavor { flavors: usize, alpha: usize },

    #[error("component vector is not a root of c{alpha}+ at L = {flavors}")]
    RootValidationFailure { flavors: usize, alpha: usize },

    #[error("Vandermonde nodes are not pairwise distinct")]
    RepeatedNodes,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("magnetic field vector is zero")]
    ZeroField,

    #[error("radicand does not fit in 64 bits")]
    RadicandOverflow,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
