//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Dimensions here never exceed 16, so the O(n³)-per-sweep cost is irrelevant
//! and Jacobi's unconditional stability (unitary accumulation, no deflation
//! heuristics) is worth more than speed.

use num_complex::Complex64;

use crate::complex::ComplexMatrix;
use crate::error::{CoreError, Result};

const MAX_SWEEPS: usize = 64;

/// Result of [`hermitian_eigen`]: ascending eigenvalues with matching
/// orthonormal eigenvector columns, `M = V diag(λ) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Rebuilds `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * Complex64::new(self.eigenvalues[k], 0.0) * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix. Rejects non-Hermitian input with
/// the measured defect.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.ensure_hermitian()?;
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    // Absolute off-diagonal target, relative to the input scale.
    let target = 1e-15 * m.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(CoreError::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating the (p,q) entry of the Hermitian
/// working matrix `a`, accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase factor making the pivot real, then a classical symmetric rotation.
    let w = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns of the rotation G restricted to (p,q):
    //   G[p,p] = c        G[p,q] = s
    //   G[q,p] = -s·w̄     G[q,q] = c·w̄
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = w.conj() * (-s);
    let gqq = w.conj() * c;

    let n = a.dim();
    // A ← G† A G, touching only rows/columns p and q.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * gpp + aiq * gqp;
        a[(i, q)] = aip * gpq + aiq * gqq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = gpp.conj() * apj + gqp.conj() * aqj;
        a[(q, j)] = gpq.conj() * apj + gqq.conj() * aqj;
    }
    // Clean the annihilated pair and enforce real diagonal against round-off.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * gpp + viq * gqp;
        v[(i, q)] = vip * gpq + viq * gqq;
    }
}
