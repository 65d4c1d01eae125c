use thiserror::Error;

/// Errors raised by the numerical library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("root finder did not converge (best relative residual {best_residual:.3e})")]
    NoConvergence { best_residual: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is singular (|det| = {det_abs:.3e})")]
    Singular { det_abs: f64 },

    #[error("invalid angular momentum: {0}")]
    InvalidSpin(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state is not permutation symmetric: component {index} of {n} qubits deviates by {deviation:.3e}")]
    NotSymmetric { index: usize, n: usize, deviation: f64 },

    #[error("system too large: N = {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
