//! Bloch-vector representation of two-level states and maps.
//!
//! A 2×2 density matrix expands as ρ = ρ^μ σ_μ over the identity σ₀ and the
//! Pauli matrices σ₁, σ₂, σ₃, with real components ρ^μ = ½Tr(σ_μ ρ). Linear
//! maps on states then become real 4×4 matrices acting on (ρ^0,…,ρ^3), and
//! maps on a pair of systems become real 16×16 matrices on the coefficients
//! of σ_μ⊗σ_ν. All dynamics in this crate is carried in that representation;
//! the conversions here are the only place state space and Bloch space touch.

use matqm_core::{psd_check, Complex64, ComplexMatrix, RealMatrix};

use crate::error::{Error, Result};

/// The four basis matrices σ₀ (identity), σ₁, σ₂, σ₃.
#[derive(Debug, Clone)]
pub struct PauliBasis {
    pub sigma: [ComplexMatrix; 4],
}

impl PauliBasis {
    pub fn new() -> Self {
        let c = Complex64::new;
        let sigma0 = ComplexMatrix::identity(2);
        let sigma1 =
            ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let sigma2 =
            ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let sigma3 =
            ComplexMatrix::from_entries(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]).unwrap();
        Self { sigma: [sigma0, sigma1, sigma2, sigma3] }
    }
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// σ_μ for μ ∈ 0..4.
pub fn pauli(mu: usize) -> ComplexMatrix {
    PauliBasis::new().sigma[mu].clone()
}

/// Real expansion coefficients of a Hermitian 2×2 matrix over the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub components: [f64; 4],
}

impl BlochVector {
    pub fn new(components: [f64; 4]) -> Self {
        Self { components }
    }

    /// Euclidean norm of the spatial part (ρ^1, ρ^2, ρ^3).
    pub fn spatial_norm(&self) -> f64 {
        let [_, x, y, z] = self.components;
        (x * x + y * y + z * z).sqrt()
    }
}

/// The two orthonormal basis vectors (CP-even |K₁⟩ and CP-odd |K₂⟩) together
/// with the strangeness eigenstates |K⟩ = (|K₁⟩+|K₂⟩)/√2 and
/// |K̄⟩ = (|K₁⟩−|K₂⟩)/√2. The concrete embedding fixes |K₁⟩ = (1,0), so σ₃
/// measures the K₁/K₂ population difference.
#[derive(Debug, Clone)]
pub struct KaonBasis {
    pub k1: [Complex64; 2],
    pub k2: [Complex64; 2],
    pub k: [Complex64; 2],
    pub kbar: [Complex64; 2],
}

impl KaonBasis {
    pub fn new() -> Self {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            k1: [one, zero],
            k2: [zero, one],
            k: [s, s],
            kbar: [s, -s],
        }
    }

    /// Projector |K₁⟩⟨K₁| = diag(1, 0).
    pub fn k1_projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.k1, &self.k1).unwrap()
    }

    /// Projector |K₂⟩⟨K₂| = diag(0, 1).
    pub fn k2_projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.k2, &self.k2).unwrap()
    }

    /// Pure strangeness state |K⟩⟨K|.
    pub fn k_state(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.k, &self.k).unwrap()
    }

    /// Pure strangeness state |K̄⟩⟨K̄|.
    pub fn kbar_state(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.kbar, &self.kbar).unwrap()
    }
}

impl Default for KaonBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// ρ^μ = ½Tr(σ_μ ρ) for Hermitian ρ. Rejects non-Hermitian input.
pub fn matrix_to_bloch(rho: &ComplexMatrix) -> Result<BlochVector> {
    expect_dim(rho, 2)?;
    rho.ensure_hermitian()?;
    let r01 = rho[(0, 1)];
    Ok(BlochVector::new([
        0.5 * (rho[(0, 0)].re + rho[(1, 1)].re),
        r01.re,
        -r01.im,
        0.5 * (rho[(0, 0)].re - rho[(1, 1)].re),
    ]))
}

/// ρ = ρ^μ σ_μ; Hermitian by construction, trace 2ρ^0.
pub fn bloch_to_matrix(v: &BlochVector) -> ComplexMatrix {
    let [r0, r1, r2, r3] = v.components;
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex64::new(r0 + r3, 0.0),
            Complex64::new(r1, -r2),
            Complex64::new(r1, r2),
            Complex64::new(r0 - r3, 0.0),
        ],
    )
    .unwrap()
}

/// Complex Pauli coefficients c_μ = ½Tr(σ_μ M) of an arbitrary (not
/// necessarily Hermitian) 2×2 matrix; always satisfies M = Σ c_μ σ_μ.
pub fn complex_pauli_coefficients(m: &ComplexMatrix) -> [Complex64; 4] {
    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::I;
    [
        half * (m[(0, 0)] + m[(1, 1)]),
        half * (m[(0, 1)] + m[(1, 0)]),
        half * i * (m[(0, 1)] - m[(1, 0)]),
        half * (m[(0, 0)] - m[(1, 1)]),
    ]
}

/// Inverse of [`complex_pauli_coefficients`].
pub fn matrix_from_complex_coefficients(c: &[Complex64; 4]) -> ComplexMatrix {
    let i = Complex64::I;
    ComplexMatrix::from_entries(
        2,
        vec![c[0] + c[3], c[1] - i * c[2], c[1] + i * c[2], c[0] - c[3]],
    )
    .unwrap()
}

/// Converts a superoperator, given by its action on the four basis matrices,
/// into the real 4×4 matrix F with (Φ[ρ])^μ = F_μν ρ^ν. The map must send
/// Hermitian to Hermitian; a violation is rejected with the worst defect.
pub fn superop_to_bloch(phi: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<RealMatrix> {
    let basis = PauliBasis::new();
    let mut images = Vec::with_capacity(4);
    for (nu, sigma) in basis.sigma.iter().enumerate() {
        let image = phi(sigma);
        let defect = image.hermiticity_defect();
        if defect > 1e-10 * image.frobenius_norm().max(1.0) {
            return Err(Error::NotHermiticityPreserving { defect, basis_index: nu });
        }
        images.push(image);
    }
    let mut f = RealMatrix::zeros(4);
    for (nu, image) in images.iter().enumerate() {
        let coeffs = matrix_to_bloch(image)?;
        for mu in 0..4 {
            f[(mu, nu)] = coeffs.components[mu];
        }
    }
    Ok(f)
}

/// Applies a Bloch-space map to a Hermitian 2×2 matrix.
pub fn apply_bloch_map(f: &RealMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    expect_dim_real(f, 4)?;
    let v = matrix_to_bloch(rho)?;
    let out = f.apply(&v.components).map_err(Error::Core)?;
    Ok(bloch_to_matrix(&BlochVector::new([out[0], out[1], out[2], out[3]])))
}

/// Applies a Bloch-space map to an arbitrary 2×2 matrix by complexifying the
/// coefficient vector (needed for Choi constructions, which evaluate the map
/// on non-Hermitian basis elements).
pub fn apply_bloch_map_complex(f: &RealMatrix, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    expect_dim_real(f, 4)?;
    let c = complex_pauli_coefficients(m);
    let mut out = [Complex64::ZERO; 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        for (nu, &coeff) in c.iter().enumerate() {
            *slot += Complex64::new(f[(mu, nu)], 0.0) * coeff;
        }
    }
    Ok(matrix_from_complex_coefficients(&out))
}

/// Expansion coefficients r^{μν} = ¼Tr[(σ_μ⊗σ_ν)ρ] of a Hermitian 4×4 matrix
/// over the product Pauli basis, flattened as index 4μ+ν.
pub fn pair_matrix_to_bloch(rho: &ComplexMatrix) -> Result<[f64; 16]> {
    expect_dim(rho, 4)?;
    rho.ensure_hermitian()?;
    let basis = PauliBasis::new();
    let mut r = [0.0; 16];
    for mu in 0..4 {
        for nu in 0..4 {
            let b = basis.sigma[mu].tensor(&basis.sigma[nu]);
            let t = (&b * rho).trace();
            r[4 * mu + nu] = 0.25 * t.re;
        }
    }
    Ok(r)
}

/// ρ = Σ r^{μν} σ_μ⊗σ_ν.
pub fn pair_bloch_to_matrix(r: &[f64; 16]) -> ComplexMatrix {
    let basis = PauliBasis::new();
    let mut rho = ComplexMatrix::zeros(4);
    for mu in 0..4 {
        for nu in 0..4 {
            let coeff = r[4 * mu + nu];
            if coeff == 0.0 {
                continue;
            }
            let b = basis.sigma[mu].tensor(&basis.sigma[nu]);
            rho = &rho + &b.scale_re(coeff);
        }
    }
    rho
}

/// Applies a 16×16 Bloch-space pair map to a Hermitian 4×4 matrix.
pub fn apply_pair_bloch_map(f: &RealMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    expect_dim_real(f, 16)?;
    let r = pair_matrix_to_bloch(rho)?;
    let out = f.apply(&r).map_err(Error::Core)?;
    let mut arr = [0.0; 16];
    arr.copy_from_slice(&out);
    Ok(pair_bloch_to_matrix(&arr))
}

/// Partial trace over the second factor, in pair-Bloch coefficients:
/// Tr₂ ρ = Σ_μ 2 r^{μ0} σ_μ.
pub fn reduced_first_bloch(r: &[f64; 16]) -> BlochVector {
    BlochVector::new([2.0 * r[0], 2.0 * r[4], 2.0 * r[8], 2.0 * r[12]])
}

/// Whether a Bloch vector describes a positive semidefinite matrix:
/// spatial norm within ρ^0. Cross-checked against the spectral test.
pub fn bloch_is_positive(v: &BlochVector) -> bool {
    v.spatial_norm() <= v.components[0] + 1e-12
}

fn expect_dim(m: &ComplexMatrix, expected: usize) -> Result<()> {
    if m.dim() != expected {
        return Err(Error::WrongDimension { expected, actual: m.dim() });
    }
    Ok(())
}

fn expect_dim_real(m: &RealMatrix, expected: usize) -> Result<()> {
    if m.dim() != expected {
        return Err(Error::WrongDimension { expected, actual: m.dim() });
    }
    Ok(())
}

/// Spectral positivity of a Hermitian matrix, for cross-checks against the
/// Bloch-ball criterion.
pub fn state_is_psd(rho: &ComplexMatrix) -> Result<bool> {
    Ok(psd_check(rho).map_err(Error::Core)?.is_psd)
}
