//! Dense square real matrices and the matrix exponential.
//!
//! These carry the Bloch-space representation of states and maps: 4×4 for a
//! single two-level system, 16×16 for a pair. The exponential uses Padé
//! scaling-and-squaring with the double-precision order thresholds of Higham's
//! revisited algorithm, which comfortably exceeds a 1e-12 relative target at
//! these sizes.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{CoreError, Result};

/// Square real matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(CoreError::DimensionMismatch { expected: dim * dim, actual: entries.len() });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum (operator 1-norm).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, x: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&v| v * x).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = self[(i, j)] - self[(j, i)];
                s += d * d;
            }
        }
        s.sqrt()
    }

    /// Kronecker product; `dim = dim(self) · dim(other)`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == 0.0 {
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

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(CoreError::IncompatibleDims { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn binary_op(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.dim, other.dim, "real matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(other.data.iter()).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &RealMatrix {
    type Output = RealMatrix;
    fn add(self, other: Self) -> RealMatrix {
        self.binary_op(other, |a, b| a + b)
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;
    fn sub(self, other: Self) -> RealMatrix {
        self.binary_op(other, |a, b| a - b)
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;
    fn neg(self) -> RealMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, other: Self) -> RealMatrix {
        assert_eq!(self.dim, other.dim, "real matrix dimension mismatch");
        let n = self.dim;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
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

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn lu_solve(a: &RealMatrix, b: &RealMatrix) -> Result<RealMatrix> {
    if a.dim != b.dim {
        return Err(CoreError::IncompatibleDims { left: a.dim, right: b.dim });
    }
    let n = a.dim;
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = lhs[(col, col)].abs();
        for r in col + 1..n {
            let v = lhs[(r, col)].abs();
            if v > pivot_val {
                pivot_row = r;
                pivot_val = v;
            }
        }
        if pivot_val < f64::MIN_POSITIVE {
            return Err(CoreError::Singular { pivot: pivot_val, step: col });
        }
        if pivot_row != col {
            for j in 0..n {
                lhs.data.swap(col * n + j, pivot_row * n + j);
                rhs.data.swap(col * n + j, pivot_row * n + j);
            }
        }
        let inv = 1.0 / lhs[(col, col)];
        for r in col + 1..n {
            let factor = lhs[(r, col)] * inv;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lhs[(col, j)];
                lhs[(r, j)] -= factor * v;
            }
            for j in 0..n {
                let v = rhs[(col, j)];
                rhs[(r, j)] -= factor * v;
            }
        }
    }
    // back substitution
    let mut x = RealMatrix::zeros(n);
    for j in 0..n {
        for i in (0..n).rev() {
            let mut s = rhs[(i, j)];
            for k in i + 1..n {
                s -= lhs[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / lhs[(i, i)];
        }
    }
    Ok(x)
}

// Padé order thresholds for the 1-norm (double precision).
const THETA_3: f64 = 1.495_585_217_958_292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504_178_996_162_932e-1;
const THETA_9: f64 = 2.097_847_961_257_068;
const THETA_13: f64 = 5.371_920_351_148_152;

/// Matrix exponential `exp(A)` by Padé scaling-and-squaring.
pub fn expm(a: &RealMatrix) -> Result<RealMatrix> {
    let norm = a.norm_one();
    let (u, v, squarings) = if norm < THETA_3 {
        let (u, v) = pade_uv(a, &PADE3);
        (u, v, 0)
    } else if norm < THETA_5 {
        let (u, v) = pade_uv(a, &PADE5);
        (u, v, 0)
    } else if norm < THETA_7 {
        let (u, v) = pade_uv(a, &PADE7);
        (u, v, 0)
    } else if norm < THETA_9 {
        let (u, v) = pade_uv(a, &PADE9);
        (u, v, 0)
    } else {
        let squarings = ((norm / THETA_13).log2().ceil() as i32).max(0) as u32;
        let scaled = a.scale(2f64.powi(-(squarings as i32)));
        let (u, v) = pade13_uv(&scaled);
        (u, v, squarings)
    };
    // Padé approximant (V+U)/(V−U), then undo the scaling by squaring.
    let mut result = lu_solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16380.0,
    182.0,
    1.0,
];

fn pade_uv(a: &RealMatrix, b: &[f64]) -> (RealMatrix, RealMatrix) {
    // u = A·(odd even-power polynomial), v = even even-power polynomial
    let n = a.dim();
    let a2 = a * a;
    let mut powers = vec![RealMatrix::identity(n)]; // A^0, A^2, A^4, ...
    let half = b.len() / 2;
    for _ in 1..half {
        let last = powers.last().unwrap();
        powers.push(last * &a2);
    }
    let mut u_poly = RealMatrix::zeros(n);
    let mut v = RealMatrix::zeros(n);
    for (k, p) in powers.iter().enumerate() {
        u_poly = &u_poly + &p.scale(b[2 * k + 1]);
        v = &v + &p.scale(b[2 * k]);
    }
    (a * &u_poly, v)
}

fn pade13_uv(a: &RealMatrix) -> (RealMatrix, RealMatrix) {
    let b = &PADE13;
    let n = a.dim();
    let id = RealMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]);
    let u_poly = &(&(&a6 * &u_inner) + &a6.scale(b[7]))
        + &(&(&a4.scale(b[5]) + &a2.scale(b[3])) + &id.scale(b[1]));
    let u = a * &u_poly;
    let v_inner = &(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]);
    let v = &(&(&a6 * &v_inner) + &a6.scale(b[6]))
        + &(&(&a4.scale(b[4]) + &a2.scale(b[2])) + &id.scale(b[0]));
    (u, v)
}
