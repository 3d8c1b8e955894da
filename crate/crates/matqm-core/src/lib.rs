//! Dense matrix kernel for two-level open-quantum-system numerics.
//!
//! Everything here operates on immutable values and returns fresh matrices;
//! there is no interior mutability, so all types are freely shareable across
//! threads. Dimensions in practice are 2, 4 and 16 (one or two two-level
//! systems, in state space or Bloch space); nothing in the implementation
//! depends on that beyond performance being a non-issue.

mod complex;
mod eigen;
mod error;
mod real;
mod signed;

pub use complex::{psd_threshold, tensor_product, ComplexMatrix, HERMITICITY_RTOL, PSD_RTOL};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use error::{CoreError, Result};
pub use real::{expm, lu_solve, RealMatrix};
pub use signed::{negative_mass, psd_check, signed_decompose, PsdReport, SignedDecomposition};

pub use num_complex::Complex64;
