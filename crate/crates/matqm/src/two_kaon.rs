//! Entangled kaon-pair dynamics.
//!
//! A φ-meson decay produces the antisymmetric pair state
//! |Ψ⟩ = (|K₁⟩⊗|K₂⟩ − |K₂⟩⊗|K₁⟩)/√2, whose density matrix equals the spin
//! singlet ¼(σ₀⊗σ₀ − Σᵢ σᵢ⊗σᵢ). Evolving each kaon independently gives the
//! factorized map Φ⊗Φ; when the single-kaon map is only simply positive, the
//! pair state develops negative eigenvalues, and composing the dissipative
//! factor with the Weisskopf–Wigner decay through the Trotter formula shows
//! the negativity survives the continuum limit: its mass is bounded below by
//! e^{−2λt}·|Tr ρ₋| with λ the largest decay width.

use matqm_core::{
    negative_mass, signed_decompose, Complex64, ComplexMatrix, RealMatrix,
};

use crate::bloch::{apply_pair_bloch_map, pair_matrix_to_bloch, PauliBasis};
use crate::error::{Error, Result};
use crate::evolution::{expm_evolution, trotter_compose, EvolutionMap, TauClosedForm};
use crate::generators::{ww_generator, EffectiveHamiltonian};

/// Tolerance for the Trotter lower bound comparison `lhs ≥ rhs − tol`.
pub const BOUND_TOLERANCE: f64 = 1e-10;

/// The antisymmetric two-kaon state, as a rank-1 density matrix.
#[derive(Debug, Clone)]
pub struct SingletState {
    pub matrix: ComplexMatrix,
}

impl SingletState {
    /// Builds the state both as the Pauli sum ¼(σ₀⊗σ₀ − Σᵢσᵢ⊗σᵢ) and as the
    /// outer product of the antisymmetric vector; the two constructions must
    /// agree entrywise.
    pub fn new() -> Self {
        let basis = PauliBasis::new();
        let mut pauli_sum = basis.sigma[0].tensor(&basis.sigma[0]);
        for i in 1..4 {
            pauli_sum = &pauli_sum - &basis.sigma[i].tensor(&basis.sigma[i]);
        }
        let pauli_sum = pauli_sum.scale_re(0.25);

        let v = Self::vector();
        let outer = ComplexMatrix::outer(&v, &v).unwrap();
        debug_assert!(pauli_sum.max_abs_diff(&outer) < 1e-15);
        Self { matrix: pauli_sum }
    }

    /// (|K₁⟩⊗|K₂⟩ − |K₂⟩⊗|K₁⟩)/√2 in the product basis.
    pub fn vector() -> [Complex64; 4] {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        [Complex64::ZERO, s, -s, Complex64::ZERO]
    }

    /// Pair-Bloch coefficients of the state.
    pub fn bloch(&self) -> [f64; 16] {
        pair_matrix_to_bloch(&self.matrix).expect("singlet is Hermitian")
    }
}

impl Default for SingletState {
    fn default() -> Self {
        Self::new()
    }
}

/// The antisymmetric two-kaon state.
pub fn singlet() -> SingletState {
    SingletState::new()
}

/// The unnormalized probe vectors |u⟩ = |00⟩+|11⟩ and |v⟩ = |01⟩+|10⟩ whose
/// expectation values witness the loss of positivity (⟨u|u⟩ = ⟨v|v⟩ = 2,
/// ⟨u|v⟩ = 0; kept unnormalized so the witness values come out as ±(A−C)/2
/// and ±(A²−C²)/2 exactly).
#[derive(Debug, Clone)]
pub struct WitnessVectors {
    pub u: [Complex64; 4],
    pub v: [Complex64; 4],
}

impl WitnessVectors {
    pub fn new() -> Self {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        Self { u: [one, zero, zero, one], v: [zero, one, one, zero] }
    }
}

impl Default for WitnessVectors {
    fn default() -> Self {
        Self::new()
    }
}

/// Lifts a single-kaon Bloch map to the factorized pair map Φ⊗Φ (a 16×16
/// Bloch-tensor matrix). Product states factorize exactly under the result.
pub fn product_evolution(phi: &EvolutionMap) -> Result<EvolutionMap> {
    if phi.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: phi.dim() });
    }
    Ok(EvolutionMap {
        matrix: phi.matrix.kron(&phi.matrix),
        time: phi.time,
        provenance: phi.provenance,
    })
}

/// Kronecker-sum generator G⊗1 + 1⊗G driving the factorized pair evolution.
pub fn pair_generator(single: &RealMatrix) -> RealMatrix {
    let id = RealMatrix::identity(single.dim());
    &single.kron(&id) + &id.kron(single)
}

/// Witness values of the dissipative pair map τ_t⊗τ_t on the singlet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoKaonWitness {
    /// ⟨u|(τ_t⊗τ_t)[ρ_singlet]|u⟩ from the explicit 4×4 construction.
    pub value_u: f64,
    /// ⟨v|…|v⟩; equals −value_u.
    pub value_v: f64,
    /// The analytic value (A²(t)−C²(t))/2.
    pub closed_form: f64,
}

/// Evaluates the pair witness for the closed-form dissipative family.
pub fn two_kaon_witness(alpha: f64, beta: f64, gamma: f64, t: f64) -> Result<TwoKaonWitness> {
    let tau = TauClosedForm::new(alpha, beta, gamma)?;
    let single = tau.map_at(t)?;
    let pair = product_evolution(&single)?;
    let state = apply_pair_bloch_map(&pair.matrix, &singlet().matrix)?;
    let w = WitnessVectors::new();
    let value_u = state.quadratic_form(&w.u).map_err(Error::Core)?.re;
    let value_v = state.quadratic_form(&w.v).map_err(Error::Core)?.re;
    let (a, _, c) = tau.coefficients(t)?;
    Ok(TwoKaonWitness { value_u, value_v, closed_form: 0.5 * (a * a - c * c) })
}

/// Result of the Trotter negative-mass bound check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrotterBound {
    /// Negative mass of (W_{t/n} ∘ T_{t/n})^n applied to the singlet.
    pub lhs: f64,
    /// e^{−2λt}·|Tr ρ₋|, with ρ₋ the negative part after one composite step
    /// and λ the largest eigenvalue of the width matrix.
    pub rhs: f64,
    /// lhs ≥ rhs − [`BOUND_TOLERANCE`].
    pub holds: bool,
    /// Signed trace of the one-step negative part (≤ 0).
    pub rho_minus_trace: f64,
    /// True when the dissipative factor is completely positive (α = γ, β = 0)
    /// and no negativity can be generated; both sides are zero then.
    pub degenerate: bool,
}

/// Checks that the negativity generated by a simply-positive dissipative
/// factor survives interleaving with the Weisskopf–Wigner decay:
/// |Tr([(W_{t/n}∘T_{t/n})^n ρ_singlet]₋)| ≥ e^{−2λt}·|Tr ρ₋|.
pub fn trotter_negative_mass_bound(
    h: &EffectiveHamiltonian,
    alpha: f64,
    beta: f64,
    gamma: f64,
    t: f64,
    n: u32,
) -> Result<TrotterBound> {
    if n == 0 {
        return Err(Error::ZeroTrotterSteps);
    }
    if t <= 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let tau = TauClosedForm::new(alpha, beta, gamma)?;
    let w_single = ww_generator(h);
    let w_pair_gen = pair_generator(&w_single);

    let w_builder = |s: f64| -> Result<EvolutionMap> { expm_evolution(&w_pair_gen, s) };
    let t_builder = |s: f64| -> Result<EvolutionMap> { product_evolution(&tau.map_at(s)?) };

    let rho_s = singlet();

    // one composite step at t/n fixes the reference negative part
    let step = t / n as f64;
    let one_step = &w_builder(step)?.matrix * &t_builder(step)?.matrix;
    let stepped = apply_pair_bloch_map(&one_step, &rho_s.matrix)?;
    let split = signed_decompose(&stepped).map_err(Error::Core)?;
    let rho_minus_trace = split.negative_part.trace().re;

    let lambda = h.lambda_max();
    let rhs = (-2.0 * lambda * t).exp() * rho_minus_trace.abs();

    let full = trotter_compose(w_builder, t_builder, t, n)?;
    let final_state = apply_pair_bloch_map(&full.matrix, &rho_s.matrix)?;
    let lhs = negative_mass(&final_state).map_err(Error::Core)?;

    let degenerate = alpha == gamma && beta == 0.0;
    Ok(TrotterBound { lhs, rhs, holds: lhs >= rhs - BOUND_TOLERANCE, rho_minus_trace, degenerate })
}
