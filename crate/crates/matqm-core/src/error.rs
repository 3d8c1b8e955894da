//! Error type for the matrix kernel.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// The input was required to be Hermitian but `‖M − M†‖_F` exceeds the
    /// tolerance `1e-12 · ‖M‖_F`.
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    /// Entry count does not form a square matrix of the stated dimension.
    #[error("dimension mismatch: expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Two operands that must share a dimension do not.
    #[error("incompatible dimensions: {left} vs {right}")]
    IncompatibleDims { left: usize, right: usize },

    /// A linear solve hit a (numerically) singular pivot.
    #[error("singular matrix in linear solve (pivot {pivot:.3e} at step {step})")]
    Singular { pivot: f64, step: usize },

    /// The Jacobi sweep failed to reach the off-diagonal target.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
