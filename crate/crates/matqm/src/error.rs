//! Library error type.

use thiserror::Error;

use matqm_core::CoreError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] CoreError),

    /// The damping parameters on the diagonal must be non-negative.
    #[error("invalid dissipative parameters: a={a}, alpha={alpha}, gamma={gamma} must all be >= 0")]
    NegativeDamping { a: f64, alpha: f64, gamma: f64 },

    /// The single-positivity condition αγ ≥ β² fails, so the closed-form
    /// semigroup is not even positivity-preserving.
    #[error("map is not positive: alpha*gamma = {alpha_gamma} < beta^2 = {beta_sq}")]
    NotPositive { alpha_gamma: f64, beta_sq: f64 },

    #[error("negative evolution time {0}")]
    NegativeTime(f64),

    #[error("expected a {expected}x{expected} matrix, got {actual}x{actual}")]
    WrongDimension { expected: usize, actual: usize },

    /// A map that must preserve Hermiticity does not.
    #[error("map does not preserve Hermiticity: defect {defect:.3e} on basis element {basis_index}")]
    NotHermiticityPreserving { defect: f64, basis_index: usize },

    /// Kraus extraction requires a positive-semidefinite Choi matrix.
    #[error("Choi matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.6e}); the map admits no Kraus form")]
    ChoiNotPsd { min_eigenvalue: f64 },

    /// A decay observable with vanishing weight on the initial state cannot
    /// be normalized.
    #[error("observable '{observable}' has vanishing weight on the initial state")]
    ZeroDenominator { observable: String },

    #[error("observable '{name}' must be a non-zero positive semidefinite operator")]
    InvalidObservable { name: String },

    #[error("time grid must be strictly ascending")]
    UnorderedTimes,

    #[error("Trotter step count must be at least 1")]
    ZeroTrotterSteps,
}

pub type Result<T> = std::result::Result<T, Error>;
