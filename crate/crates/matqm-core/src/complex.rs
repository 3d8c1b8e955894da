//! Dense square complex matrices, row-major, sized for 2-, 4- and 16-dimensional
//! state spaces (any small dimension works).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// Relative Hermiticity tolerance: a matrix counts as Hermitian when
/// `‖M − M†‖_F ≤ 1e-12 · ‖M‖_F`.
pub const HERMITICITY_RTOL: f64 = 1e-12;

/// Eigenvalue threshold below which a Hermitian matrix counts as indefinite:
/// `λ < −1e-10 · max(1, ‖M‖_F)`.
pub const PSD_RTOL: f64 = 1e-10;

/// Negativity threshold for a Hermitian matrix of Frobenius norm `norm`.
pub fn psd_threshold(norm: f64) -> f64 {
    PSD_RTOL * norm.max(1.0)
}

/// Square complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds a `dim×dim` matrix from a flat row-major entry list.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(CoreError::DimensionMismatch { expected: dim * dim, actual: entries.len() });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        Self::diag(&entries.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Rank-1 projector-style outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(CoreError::IncompatibleDims { left: u.len(), right: v.len() });
        }
        Ok(Self::from_fn(u.len(), |i, j| u[i] * v[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&w| w * z).collect() }
    }

    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    /// `‖M − M†‖_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Rejects non-Hermitian input rather than symmetrizing it.
    pub fn ensure_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        let tolerance = HERMITICITY_RTOL * self.frobenius_norm();
        if defect > tolerance {
            return Err(CoreError::NotHermitian { defect, tolerance });
        }
        Ok(())
    }

    pub fn is_hermitian(&self) -> bool {
        self.ensure_hermitian().is_ok()
    }

    /// Kronecker product; `dim = dim(self) · dim(other)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product `M|u⟩`.
    pub fn apply(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        if u.len() != self.dim {
            return Err(CoreError::IncompatibleDims { left: self.dim, right: u.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * u[j]).sum())
            .collect())
    }

    /// `⟨u|M|u⟩` (complex in general; real for Hermitian `M`).
    pub fn quadratic_form(&self, u: &[Complex64]) -> Result<Complex64> {
        let mu = self.apply(u)?;
        Ok(u.iter().zip(mu.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn binary_op(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "complex matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(other.data.iter()).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, other: Self) -> ComplexMatrix {
        self.binary_op(other, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, other: Self) -> ComplexMatrix {
        self.binary_op(other, |a, b| a - b)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, other: Self) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "complex matrix dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>12.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kronecker product as a free function, matching the operator pairing
/// `(A⊗B)(C⊗D) = AC⊗BD`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}
