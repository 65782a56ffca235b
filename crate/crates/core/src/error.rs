use thiserror::Error;

/// Errors raised by the numerical layer and the protocols built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("not a valid density operator: {0}")]
    InvalidDensity(String),

    #[error("swap requires equal subsystem dimensions, got {d1}x{d2}")]
    SwapDimensionMismatch { d1: usize, d2: usize },

    #[error("state is not maximally entangled")]
    NotMaximallyEntangled,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vector has zero norm")]
    ZeroNorm,
}

pub type Result<T> = std::result::Result<T, Error>;
