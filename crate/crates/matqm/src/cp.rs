//! Operational complete-positivity tests.
//!
//! A map Φ on 2×2 states is completely positive exactly when its Choi matrix
//! (Φ⊗id)[|Ω⟩⟨Ω|], |Ω⟩ = Σᵢ|i⟩⊗|i⟩, is positive semidefinite — equivalently
//! when Φ admits a Kraus form Φ[ρ] = Σ_j V_j ρ V_j†. For maps that are
//! positive but not completely positive, extending by an idle second system
//! and feeding in the entangled singlet exposes negative eigenvalues; the
//! probe vectors of [`WitnessVectors`] read them out in closed form.

use matqm_core::{
    hermitian_eigen, psd_check, Complex64, ComplexMatrix, RealMatrix,
};

use crate::bloch::{apply_bloch_map_complex, apply_pair_bloch_map};
use crate::error::{Error, Result};
use crate::evolution::EvolutionMap;
use crate::two_kaon::{singlet, WitnessVectors};

/// Relative cutoff below which Choi eigenvalues are dropped during Kraus
/// extraction, to avoid spurious near-null operators.
pub const KRAUS_EIGENVALUE_RTOL: f64 = 1e-12;

/// Choi matrix of a map on 2×2 states. The convention is pinned by
/// [`ChoiConvention`]: system factor first, unnormalized reference vector, so
/// the identity map has Choi |Ω⟩⟨Ω| with trace 2 and Kraus operators come out
/// factor-free.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    pub matrix: ComplexMatrix,
    pub convention: ChoiConvention,
}

/// (Φ⊗id)[|Ω⟩⟨Ω|] with |Ω⟩ = Σᵢ|i⟩⊗|i⟩ unnormalized; eigenvector 4-vectors
/// unstack row-major into 2×2 Kraus operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChoiConvention;

impl ChoiConvention {
    pub fn describe(&self) -> &'static str {
        "system-first, unnormalized reference, row-major unstacking"
    }
}

/// Kraus operators extracted from a Choi eigendecomposition, together with
/// `‖Σ V_j†V_j − D‖_F` where D is the dual-normalization operator defined by
/// Tr(Φ[ρ]) = Tr(ρD) (the identity for trace-preserving maps).
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub ops: Vec<ComplexMatrix>,
    pub completeness_defect: f64,
}

impl KrausSet {
    /// Σ_j V_j ρ V_j†.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(rho.dim());
        for v in &self.ops {
            out = &out + &(&(v * rho) * &v.adjoint());
        }
        out
    }
}

/// Builds the Choi matrix Σ_ij Φ[|i⟩⟨j|] ⊗ |i⟩⟨j| of a single-system map.
pub fn choi_of_map(phi: &EvolutionMap) -> Result<ChoiMatrix> {
    if phi.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: phi.dim() });
    }
    let mut choi = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let mut e = ComplexMatrix::zeros(2);
            e[(i, j)] = Complex64::ONE;
            let image = apply_bloch_map_complex(&phi.matrix, &e)?;
            choi = &choi + &image.tensor(&e);
        }
    }
    Ok(ChoiMatrix { matrix: choi, convention: ChoiConvention })
}

/// Complete positivity via the Choi spectrum: the flag and the witnessing
/// minimum eigenvalue.
pub fn is_completely_positive(phi: &EvolutionMap) -> Result<(bool, f64)> {
    let choi = choi_of_map(phi)?;
    let report = psd_check(&choi.matrix).map_err(Error::Core)?;
    Ok((report.is_psd, report.min_eigenvalue))
}

/// Extracts Kraus operators from a positive-semidefinite Choi matrix: each
/// eigenpair (λ, w) with λ above the cutoff yields V = √λ·unstack(w). Rejects
/// non-PSD input, naming the negative eigenvalue.
pub fn kraus_from_choi(choi: &ChoiMatrix) -> Result<KrausSet> {
    let report = psd_check(&choi.matrix).map_err(Error::Core)?;
    if !report.is_psd {
        return Err(Error::ChoiNotPsd { min_eigenvalue: report.min_eigenvalue });
    }
    let eig = hermitian_eigen(&choi.matrix).map_err(Error::Core)?;
    let cutoff = KRAUS_EIGENVALUE_RTOL * choi.matrix.trace().re.abs().max(f64::MIN_POSITIVE);
    let mut ops = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let scale = lambda.sqrt();
        let v = ComplexMatrix::from_fn(2, |r, s| eig.eigenvectors[(2 * r + s, k)] * scale);
        ops.push(v);
    }

    // dual normalization D = Tr₁(Choi)ᵀ; for trace-preserving maps D = 1.
    let mut d = ComplexMatrix::zeros(2);
    for r in 0..2 {
        for s in 0..2 {
            let mut acc = Complex64::ZERO;
            for k in 0..2 {
                acc += choi.matrix[(2 * k + s, 2 * k + r)];
            }
            d[(r, s)] = acc;
        }
    }
    let mut sum = ComplexMatrix::zeros(2);
    for v in &ops {
        sum = &sum + &(&v.adjoint() * v);
    }
    let completeness_defect = (&sum - &d).frobenius_norm();
    Ok(KrausSet { ops, completeness_defect })
}

/// Witness record of the identity-extended map on the singlet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessRecord {
    /// ⟨u|(Φ⊗id)[ρ_singlet]|u⟩; equals (A(t)−C(t))/2 for the closed-form
    /// dissipative family.
    pub value_u: f64,
    /// ⟨v|…|v⟩ = −value_u.
    pub value_v: f64,
    /// Minimum eigenvalue of the extended state; strictly negative exactly
    /// when Φ fails complete positivity (for the map families used here).
    pub min_eigenvalue: f64,
}

/// Applies Φ⊗id to the singlet and reads out the probe expectation values
/// and the minimum eigenvalue.
pub fn extension_witness(phi: &EvolutionMap) -> Result<WitnessRecord> {
    if phi.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, actual: phi.dim() });
    }
    let extended = phi.matrix.kron(&RealMatrix::identity(4));
    let state = apply_pair_bloch_map(&extended, &singlet().matrix)?;
    let w = WitnessVectors::new();
    let value_u = state.quadratic_form(&w.u).map_err(Error::Core)?.re;
    let value_v = state.quadratic_form(&w.v).map_err(Error::Core)?.re;
    let min_eigenvalue = psd_check(&state).map_err(Error::Core)?.min_eigenvalue;
    Ok(WitnessRecord { value_u, value_v, min_eigenvalue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use matqm_core::tensor_product;

    use crate::bloch::{pauli, superop_to_bloch};
    use crate::evolution::{expm_evolution, tau_closed_form, Provenance, TauClosedForm};
    use crate::generators::{ww_generator, EffectiveHamiltonian};

    fn map_from_bloch(matrix: RealMatrix) -> EvolutionMap {
        EvolutionMap { matrix, time: 1.0, provenance: Provenance::Exponential }
    }

    #[test]
    fn choi_of_identity_is_rank_one_with_trace_two() {
        let choi = choi_of_map(&map_from_bloch(RealMatrix::identity(4))).unwrap();
        assert!((choi.matrix.trace().re - 2.0).abs() < 1e-14);
        let eig = hermitian_eigen(&choi.matrix).unwrap();
        assert!((eig.max_eigenvalue() - 2.0).abs() < 1e-13);
        for &l in &eig.eigenvalues[..3] {
            assert!(l.abs() < 1e-13);
        }
    }

    #[test]
    fn choi_of_transpose_is_the_swap_operator() {
        let transpose = superop_to_bloch(|m| m.transpose()).unwrap();
        let choi = choi_of_map(&map_from_bloch(transpose)).unwrap();
        let mut swap = ComplexMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                swap[(2 * i + j, 2 * j + i)] = Complex64::ONE;
            }
        }
        assert!(choi.matrix.max_abs_diff(&swap) < 1e-14);
        let report = psd_check(&choi.matrix).unwrap();
        assert!(!report.is_psd);
        assert!((report.min_eigenvalue + 1.0).abs() < 1e-13);
    }

    #[test]
    fn isotropic_closed_form_is_completely_positive_at_all_times() {
        for &t in &[0.0, 0.2, 1.0, 5.0] {
            let phi = tau_closed_form(0.8, 0.0, 0.8, t).unwrap();
            let (flag, min_eig) = is_completely_positive(&phi).unwrap();
            assert!(flag, "t = {t}, min eig {min_eig}");
        }
    }

    #[test]
    fn anisotropic_closed_form_fails_complete_positivity_for_positive_times() {
        for &t in &[0.05, 0.5, 2.0] {
            let phi = tau_closed_form(1.0, 0.0, 2.0, t).unwrap();
            let (flag, min_eig) = is_completely_positive(&phi).unwrap();
            assert!(!flag && min_eig < 0.0, "t = {t}");
        }
    }

    #[test]
    fn standard_decay_evolution_is_completely_positive() {
        // ρ ↦ e^{−iHt} ρ e^{iH†t} is a one-operator Kraus map even for
        // non-Hermitian H.
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let g = ww_generator(&h);
        for &t in &[0.1, 1.0, 5.0] {
            let phi = expm_evolution(&g, t).unwrap();
            let (flag, _) = is_completely_positive(&phi).unwrap();
            assert!(flag, "t = {t}");
        }
    }

    #[test]
    fn kraus_of_identity_map_is_the_identity_operator() {
        let set = kraus_from_choi(&choi_of_map(&map_from_bloch(RealMatrix::identity(4))).unwrap())
            .unwrap();
        assert_eq!(set.ops.len(), 1);
        // global phase is free; compare the induced action
        let probe = ComplexMatrix::from_fn(2, |i, j| Complex64::new(0.3 * i as f64 + 0.1, 0.2 * j as f64));
        let probe = &probe + &probe.adjoint();
        assert!(set.apply(&probe).max_abs_diff(&probe) < 1e-13);
        assert!(set.completeness_defect < 1e-13);
    }

    #[test]
    fn isotropic_dissipative_map_has_four_kraus_operators_and_reconstructs() {
        // full depolarizer a = α = γ = g: all three spatial components damped
        let g = 0.9;
        let p = crate::generators::DissipativeParams {
            a: g, b: 0.0, c: 0.0, alpha: g, beta: 0.0, gamma: g,
        };
        let phi = expm_evolution(&crate::generators::dissipator_matrix(&p).unwrap(), 0.7).unwrap();
        let set = kraus_from_choi(&choi_of_map(&phi).unwrap()).unwrap();
        assert_eq!(set.ops.len(), 4);
        assert!(set.completeness_defect < 1e-12);
        // reconstruction matches the Bloch action on the basis
        for mu in 0..4 {
            let sigma = pauli(mu);
            let direct = apply_bloch_map_complex(&phi.matrix, &sigma).unwrap();
            let rebuilt = set.apply(&sigma);
            assert!(rebuilt.max_abs_diff(&direct) < 1e-10, "basis element {mu}");
        }
    }

    #[test]
    fn kraus_extraction_rejects_non_cp_maps() {
        let phi = tau_closed_form(1.0, 0.0, 2.0, 0.5).unwrap();
        let err = kraus_from_choi(&choi_of_map(&phi).unwrap()).unwrap_err();
        match err {
            Error::ChoiNotPsd { min_eigenvalue } => assert!(min_eigenvalue < 0.0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn witness_of_identity_map_vanishes_on_a_positive_state() {
        let rec = extension_witness(&map_from_bloch(RealMatrix::identity(4))).unwrap();
        assert!(rec.value_u.abs() < 1e-14 && rec.value_v.abs() < 1e-14);
        assert!(rec.min_eigenvalue > -1e-14);
    }

    #[test]
    fn witness_reads_out_the_coefficient_difference() {
        for &(alpha, gamma) in &[(1.0, 2.0), (2.5, 0.5)] {
            let tau = TauClosedForm::new(alpha, 0.4, gamma).unwrap();
            for &t in &[0.2, 1.0] {
                let rec = extension_witness(&tau.map_at(t).unwrap()).unwrap();
                let (a, _, c) = tau.coefficients(t).unwrap();
                assert!((rec.value_u - 0.5 * (a - c)).abs() < 1e-12);
                assert!((rec.value_u + rec.value_v).abs() < 1e-12);
                // sign tracks the relative size of the damping rates
                if alpha < gamma {
                    assert!(rec.value_u > 0.0);
                } else {
                    assert!(rec.value_u < 0.0);
                }
                assert!(rec.min_eigenvalue < -1e-12);
            }
        }
    }

    #[test]
    fn choi_trace_follows_the_map_trace_normalization() {
        // trace-preserving dissipative map: trace 2; decaying map: below 2
        let phi = tau_closed_form(1.0, 0.2, 2.0, 0.3).unwrap();
        assert!((choi_of_map(&phi).unwrap().matrix.trace().re - 2.0).abs() < 1e-13);

        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let phi = expm_evolution(&ww_generator(&h), 1.0).unwrap();
        assert!(choi_of_map(&phi).unwrap().matrix.trace().re < 2.0);
    }

    #[test]
    fn tensor_product_of_kraus_reconstructions_matches_pair_map() {
        // consistency between single-system Kraus form and the factorized map
        let phi = tau_closed_form(0.6, 0.0, 0.6, 0.4).unwrap();
        let set = kraus_from_choi(&choi_of_map(&phi).unwrap()).unwrap();
        let rho_a = pauli(0).scale_re(0.5);
        let rho_b = &pauli(0).scale_re(0.5) + &pauli(3).scale_re(0.3);
        let pair_in = tensor_product(&rho_a, &rho_b);
        let mut pair_out = ComplexMatrix::zeros(4);
        for vi in &set.ops {
            for vj in &set.ops {
                let v = tensor_product(vi, vj);
                pair_out = &pair_out + &(&(&v * &pair_in) * &v.adjoint());
            }
        }
        let expected = tensor_product(&set.apply(&rho_a), &set.apply(&rho_b));
        assert!(pair_out.max_abs_diff(&expected) < 1e-12);
    }
}
