//! Dissipatively modified dynamics of decaying two-level systems.
//!
//! The library builds evolution generators for a neutral-kaon-like system
//! (Weisskopf–Wigner decay plus a six-parameter dissipative term), evolves
//! states through closed-form, exponential and Trotter routes, and tests
//! complete positivity both algebraically (parameter inequalities, the
//! Kossakowski matrix) and operationally (Choi spectra, Kraus extraction,
//! entangled-pair witnesses). The headline physics: a merely positive
//! dissipative term, harmless on a single kaon, drives the entangled two-kaon
//! singlet to negative eigenvalues — and that negativity survives composition
//! with the decay through the Trotter product formula.
//!
//! All operations are pure functions on immutable values; every type here is
//! `Send + Sync` and safe to share across threads.

pub mod bloch;
pub mod cp;
pub mod error;
pub mod evolution;
pub mod generators;
pub mod observables;
pub mod two_kaon;

pub use error::{Error, Result};

pub use matqm_core as core;
pub use matqm_core::{Complex64, ComplexMatrix, RealMatrix};
