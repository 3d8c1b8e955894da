//! Decay observables and strangeness asymmetries.
//!
//! Normalized decay rates Tr[ρ(t)O_f] / Tr[ρ(0)O_f] and the K/K̄ asymmetry
//! (Tr[ρ_K̄(t)O_f̄] − Tr[ρ_K(t)O_f]) / (Tr[ρ_K̄(t)O_f̄] + Tr[ρ_K(t)O_f]),
//! computed from evolved density matrices. Negative rates are reported as-is
//! rather than clamped: exhibiting them is the point.

use matqm_core::{psd_check, ComplexMatrix};

use crate::bloch::{apply_bloch_map, KaonBasis};
use crate::error::{Error, Result};
use crate::evolution::EvolutionFamily;

/// A final-state operator O_f (positive semidefinite, non-zero), optionally
/// paired with its conjugate-channel counterpart O_f̄ for asymmetries.
#[derive(Debug, Clone)]
pub struct DecayObservable {
    pub name: String,
    pub operator: ComplexMatrix,
    pub conjugate: Option<ComplexMatrix>,
}

impl DecayObservable {
    pub fn new(name: impl Into<String>, operator: ComplexMatrix) -> Result<Self> {
        let name = name.into();
        let ok = operator.dim() == 2
            && operator.is_hermitian()
            && operator.frobenius_norm() > 0.0
            && psd_check(&operator).map_err(Error::Core)?.is_psd;
        if !ok {
            return Err(Error::InvalidObservable { name });
        }
        Ok(Self { name, operator, conjugate: None })
    }

    pub fn with_conjugate(mut self, conjugate: ComplexMatrix) -> Result<Self> {
        let ok = conjugate.dim() == 2
            && conjugate.is_hermitian()
            && psd_check(&conjugate).map_err(Error::Core)?.is_psd;
        if !ok {
            return Err(Error::InvalidObservable { name: self.name });
        }
        self.conjugate = Some(conjugate);
        Ok(self)
    }

    /// Leading-order two-pion channel: the projector onto the CP-even state.
    pub fn two_pion() -> Self {
        Self { name: "2pi".into(), operator: KaonBasis::new().k1_projector(), conjugate: None }
    }

    /// Leading-order three-pion channel: the projector onto the CP-odd state.
    pub fn three_pion() -> Self {
        Self { name: "3pi".into(), operator: KaonBasis::new().k2_projector(), conjugate: None }
    }
}

/// A sampled time series; times strictly ascending, one value per time.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl ObservableSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedTimes);
        }
        Ok(Self { times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Whether any value dipped below zero. Negative rates are never clamped
    /// (they are the signal of interest under merely positive dynamics); this
    /// flag marks the series as non-physical.
    pub fn non_physical(&self) -> bool {
        self.values.iter().any(|&v| v < 0.0)
    }
}

/// Asymmetry series, possibly cut short where the denominator vanished.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymmetrySeries {
    pub series: ObservableSeries,
    /// First requested time at which the denominator vanished, if any; the
    /// series stops just before it.
    pub truncated_at: Option<f64>,
}

fn validate_times(times: &[f64]) -> Result<()> {
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnorderedTimes);
    }
    Ok(())
}

/// Normalized decay rate Tr[ρ(t)O] / Tr[ρ(0)O] along the evolution; exactly 1
/// at t = 0. Rejects observables with vanishing weight on the initial state.
pub fn decay_rate(
    rho0: &ComplexMatrix,
    observable: &DecayObservable,
    evolution: &EvolutionFamily,
    times: &[f64],
) -> Result<ObservableSeries> {
    validate_times(times)?;
    let denominator = (&observable.operator * rho0).trace().re;
    let scale = rho0.frobenius_norm() * observable.operator.frobenius_norm();
    if denominator <= 1e-14 * scale.max(1.0) {
        return Err(Error::ZeroDenominator { observable: observable.name.clone() });
    }
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let rho_t = apply_bloch_map(&evolution.map_at(t)?.matrix, rho0)?;
        values.push((&observable.operator * &rho_t).trace().re / denominator);
    }
    ObservableSeries::new(times.to_vec(), values)
}

/// K/K̄ decay asymmetry with pure |K⟩ and |K̄⟩ initial conditions. If the
/// denominator vanishes at some requested time the series is truncated there
/// and the cut is recorded.
pub fn asymmetry(
    observable_f: &DecayObservable,
    observable_fbar: &DecayObservable,
    evolution: &EvolutionFamily,
    times: &[f64],
) -> Result<AsymmetrySeries> {
    validate_times(times)?;
    let basis = KaonBasis::new();
    let rho_k = basis.k_state();
    let rho_kbar = basis.kbar_state();
    let scale = observable_f.operator.frobenius_norm() + observable_fbar.operator.frobenius_norm();

    let mut kept_times = Vec::with_capacity(times.len());
    let mut values = Vec::with_capacity(times.len());
    let mut truncated_at = None;
    for &t in times {
        let map = evolution.map_at(t)?;
        let term_f = (&observable_f.operator * &apply_bloch_map(&map.matrix, &rho_k)?).trace().re;
        let term_fbar =
            (&observable_fbar.operator * &apply_bloch_map(&map.matrix, &rho_kbar)?).trace().re;
        let denominator = term_fbar + term_f;
        if denominator.abs() <= 1e-14 * scale.max(1.0) {
            truncated_at = Some(t);
            break;
        }
        kept_times.push(t);
        values.push((term_fbar - term_f) / denominator);
    }
    Ok(AsymmetrySeries { series: ObservableSeries::new(kept_times, values)?, truncated_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use matqm_core::RealMatrix;

    use crate::evolution::TauClosedForm;
    use crate::generators::{
        dissipator_matrix, full_generator, ww_generator, DissipativeParams, EffectiveHamiltonian,
    };

    fn grid(end: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| end * k as f64 / n as f64).collect()
    }

    #[test]
    fn cp_even_projector_decays_at_the_short_rate() {
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let family = EvolutionFamily::Exponential(ww_generator(&h));
        let kb = KaonBasis::new();
        let series = decay_rate(
            &kb.k1_projector(),
            &DecayObservable::two_pion(),
            &family,
            &grid(3.0, 30),
        )
        .unwrap();
        for (&t, &v) in series.times.iter().zip(series.values.iter()) {
            assert!((v - (-t).exp()).abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn identity_observable_is_flat_under_trace_preserving_evolution() {
        let p = DissipativeParams { a: 0.2, b: 0.05, c: 0.0, alpha: 0.4, beta: 0.1, gamma: 0.5 };
        let family = EvolutionFamily::Exponential(dissipator_matrix(&p).unwrap());
        let rho0 = KaonBasis::new().k_state();
        let obs = DecayObservable::new("total", ComplexMatrix::identity(2)).unwrap();
        let series = decay_rate(&rho0, &obs, &family, &grid(4.0, 20)).unwrap();
        for &v in &series.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rate_is_one_at_time_zero() {
        let family = EvolutionFamily::ClosedForm(TauClosedForm::new(1.0, 0.3, 2.0).unwrap());
        let rho0 = KaonBasis::new().k_state();
        let series = decay_rate(&rho0, &DecayObservable::two_pion(), &family, &[0.0, 1.0]).unwrap();
        assert_eq!(series.values[0], 1.0);
    }

    #[test]
    fn orthogonal_observable_is_rejected() {
        let family = EvolutionFamily::Exponential(RealMatrix::zeros(4));
        let kb = KaonBasis::new();
        let err = decay_rate(&kb.k1_projector(), &DecayObservable::three_pion(), &family, &[0.0])
            .unwrap_err();
        assert!(matches!(err, Error::ZeroDenominator { .. }));
    }

    #[test]
    fn closed_form_and_exponential_series_agree() {
        let (alpha, beta, gamma) = (0.7, 0.3, 1.1);
        let closed = EvolutionFamily::ClosedForm(TauClosedForm::new(alpha, beta, gamma).unwrap());
        let exponential = EvolutionFamily::Exponential(
            dissipator_matrix(&DissipativeParams::simply_positive_family(alpha, beta, gamma))
                .unwrap(),
        );
        let rho0 = KaonBasis::new().k_state();
        let obs = DecayObservable::two_pion();
        let times = grid(5.0, 25);
        let a = decay_rate(&rho0, &obs, &closed, &times).unwrap();
        let b = decay_rate(&rho0, &obs, &exponential, &times).unwrap();
        for (x, y) in a.values.iter().zip(b.values.iter()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn asymmetry_vanishes_for_exchange_symmetric_dynamics() {
        // diagonal H and c = β = 0 commute with the K↔K̄ exchange
        // (conjugation by σ₃); a diagonal observable then cancels exactly.
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let p = DissipativeParams { a: 0.3, b: 0.1, c: 0.0, alpha: 0.5, beta: 0.0, gamma: 0.7 };
        let family = EvolutionFamily::Exponential(full_generator(&h, &p).unwrap());
        let obs = DecayObservable::two_pion();
        let result = asymmetry(&obs, &obs, &family, &grid(4.0, 16)).unwrap();
        assert!(result.truncated_at.is_none());
        for &v in &result.series.values {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn asymmetry_is_bounded_when_both_terms_are_nonnegative() {
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let p = DissipativeParams::simply_positive_family(0.2, 0.1, 0.4);
        let family = EvolutionFamily::Exponential(full_generator(&h, &p).unwrap());
        let result = asymmetry(
            &DecayObservable::two_pion(),
            &DecayObservable::three_pion(),
            &family,
            &grid(5.0, 20),
        )
        .unwrap();
        for &v in &result.series.values {
            assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn asymmetry_matches_brute_force_traces() {
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let p = DissipativeParams::simply_positive_family(0.5, 0.2, 0.9);
        let g = full_generator(&h, &p).unwrap();
        let family = EvolutionFamily::Exponential(g.clone());
        let of = DecayObservable::two_pion();
        let ofbar = DecayObservable::three_pion();
        let times = grid(3.0, 12);
        let result = asymmetry(&of, &ofbar, &family, &times).unwrap();
        let kb = KaonBasis::new();
        for (&t, &v) in result.series.times.iter().zip(result.series.values.iter()) {
            let map = crate::evolution::expm_evolution(&g, t).unwrap();
            let nf = (&of.operator * &apply_bloch_map(&map.matrix, &kb.k_state()).unwrap())
                .trace()
                .re;
            let nfbar = (&ofbar.operator * &apply_bloch_map(&map.matrix, &kb.kbar_state()).unwrap())
                .trace()
                .re;
            let expected = (nfbar - nf) / (nfbar + nf);
            assert!((v - expected).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn positive_series_is_physical() {
        let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
        let family = EvolutionFamily::Exponential(ww_generator(&h));
        let rho0 = KaonBasis::new().k_state();
        let series = decay_rate(&rho0, &DecayObservable::two_pion(), &family, &grid(3.0, 10))
            .unwrap();
        assert!(!series.non_physical());
        let flagged = ObservableSeries::new(vec![0.0, 1.0], vec![0.5, -0.25]).unwrap();
        assert!(flagged.non_physical());
    }

    #[test]
    fn non_psd_observable_is_rejected() {
        let bad = ComplexMatrix::diag_real(&[1.0, -0.2]);
        assert!(matches!(
            DecayObservable::new("bad", bad),
            Err(Error::InvalidObservable { .. })
        ));
    }
}
