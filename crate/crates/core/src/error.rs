use thiserror::Error;

/// Errors produced by the algebraic and frame-theoretic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("element is singular (min singular value {min_singular_value:e})")]
    Singular { min_singular_value: f64 },

    #[error("element is not central (distance to scalar {distance:e})")]
    NotCentral { distance: f64 },

    #[error("system is not a frame (lower bound {lower:e})")]
    NotAFrame { lower: f64 },

    #[error("system is not a controlled frame: {0}")]
    NotControlledFrame(String),

    #[error("operator is not self-adjoint (defect {defect:e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("sequence is not semi-normalized (min magnitude {min_magnitude:e})")]
    NotSemiNormalized { min_magnitude: f64 },

    #[error("weights are not positive central elements")]
    NotPositiveWeights,

    #[error("controller is not diagonal on the frame (vector {index}, relative residual {residual:e})")]
    NotDiagonalOnFrame { index: usize, residual: f64 },

    #[error("iteration cannot converge: {0}")]
    DivergentConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_mismatch<A: std::fmt::Debug, B: std::fmt::Debug>(expected: &A, actual: &B) -> Error {
    Error::ShapeMismatch {
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}
