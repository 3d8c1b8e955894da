//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). Tolerances are pinned in the
//! constants below.
//!
//! Criterion 5 is implemented exactly as stated and is expected to FAIL: the
//! negativity of the Trotter-evolved singlet is transient for the stated
//! rates (it dies near t ≈ 0.65, while the criterion demands it across
//! [0.1, 5]). The failure message carries the measured crossover; the pure
//! dissipative factor keeps its negativity forever and criteria 2–3 confirm
//! the equal-time witness identities everywhere.

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use matqm::bloch::{apply_bloch_map, apply_pair_bloch_map, KaonBasis};
use matqm::core::{hermitian_eigen, psd_check, Complex64, ComplexMatrix, RealMatrix};
use matqm::cp::{extension_witness, is_completely_positive};
use matqm::evolution::{expm_evolution, trotter_compose, TauClosedForm};
use matqm::generators::{
    cp_inequalities, dissipator_matrix, kossakowski_report, lindblad_dissipator, ww_generator,
    DissipativeParams, EffectiveHamiltonian, LindbladOperators,
};
use matqm::two_kaon::{
    pair_generator, product_evolution, singlet, trotter_negative_mass_bound, two_kaon_witness,
};

const GRID_FROBENIUS_TOL: f64 = 1e-10;
const WITNESS_TOL: f64 = 1e-12;
const CHOI_EIG_THRESHOLD: f64 = 1e-10;
const PAIR_NEGATIVITY_THRESHOLD: f64 = -1e-6;
const BOUND_TOL: f64 = 1e-10;
const RATIO_BAND: f64 = 0.2;
const ENTROPY_TOL: f64 = -1e-10;

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// The shared (α, β, γ) grid: 20 points per axis, restricted to the
/// admissible region αγ ≥ β².
fn parameter_grid() -> Vec<(f64, f64, f64)> {
    let mut grid = Vec::new();
    for &alpha in &linspace(0.05, 3.0, 20) {
        for &beta in &linspace(-1.5, 1.5, 20) {
            for &gamma in &linspace(0.05, 3.0, 20) {
                if alpha * gamma >= beta * beta {
                    grid.push((alpha, beta, gamma));
                }
            }
        }
    }
    grid
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[test]
fn criterion_1_closed_form_matches_matrix_exponential() {
    let grid = parameter_grid();
    let mut worst: f64 = 0.0;
    for &(alpha, beta, gamma) in &grid {
        let generator =
            dissipator_matrix(&DissipativeParams::simply_positive_family(alpha, beta, gamma))
                .unwrap();
        let tau = TauClosedForm::new(alpha, beta, gamma).unwrap();
        for &t in &[0.1, 1.0, 5.0] {
            let closed = tau.map_at(t).unwrap();
            let exponential = expm_evolution(&generator, t).unwrap();
            worst = worst.max(closed.matrix.frobenius_distance(&exponential.matrix));
        }
    }
    let ok = worst < GRID_FROBENIUS_TOL;
    println!(
        "[criterion 1] closed form vs matrix exponential on {} grid points: {} \
         (worst Frobenius distance {worst:.2e}, tolerance {GRID_FROBENIUS_TOL:.0e})",
        grid.len(),
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_2_single_extension_witness_identity() {
    let grid = parameter_grid();
    let mut worst_value: f64 = 0.0;
    let mut worst_antisymmetry: f64 = 0.0;
    for &(alpha, beta, gamma) in &grid {
        let tau = TauClosedForm::new(alpha, beta, gamma).unwrap();
        for &t in &[0.1, 1.0, 5.0] {
            let record = extension_witness(&tau.map_at(t).unwrap()).unwrap();
            let (a, _, c) = tau.coefficients(t).unwrap();
            worst_value = worst_value.max((record.value_u - 0.5 * (a - c)).abs());
            worst_antisymmetry = worst_antisymmetry.max((record.value_u + record.value_v).abs());
        }
    }
    let ok = worst_value < WITNESS_TOL && worst_antisymmetry < WITNESS_TOL;
    println!(
        "[criterion 2] single-kaon extension witness identity on {} grid points: {} \
         (worst |u - (A-C)/2| = {worst_value:.2e}, worst |u + v| = {worst_antisymmetry:.2e}, \
         tolerance {WITNESS_TOL:.0e})",
        grid.len(),
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_3_pair_witness_identity() {
    let grid = parameter_grid();
    let mut worst: f64 = 0.0;
    let mut worst_antisymmetry: f64 = 0.0;
    for &(alpha, beta, gamma) in &grid {
        for &t in &[0.1, 1.0, 5.0] {
            let w = two_kaon_witness(alpha, beta, gamma, t).unwrap();
            worst = worst.max((w.value_u - w.closed_form).abs());
            worst_antisymmetry = worst_antisymmetry.max((w.value_u + w.value_v).abs());
        }
    }
    let ok = worst < WITNESS_TOL && worst_antisymmetry < WITNESS_TOL;
    println!(
        "[criterion 3] two-kaon witness vs (A^2-C^2)/2 on {} grid points: {} \
         (worst deviation {worst:.2e}, worst |u + v| = {worst_antisymmetry:.2e}, \
         tolerance {WITNESS_TOL:.0e})",
        grid.len(),
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_4_algebraic_vs_operational_complete_positivity() {
    // The six inequality checks are the diagonal and 2x2-minor conditions of
    // the Kossakowski matrix; the full algebraic verdict adds its determinant.
    // The full verdict must match the Choi verdict with zero disagreements;
    // tuples where the six checks pass but the Choi test fails are logged as
    // findings and must each be explained by a negative determinant.
    //
    // Band: a violation -eps generates Choi negativity only on t <~ eps/c, so
    // violations below the earliest sampled time's resolution are borderline.
    const ALGEBRAIC_BAND: f64 = 2e-2;
    const TIMES: [f64; 3] = [0.01, 0.1, 1.0];

    let mut rng = StdRng::seed_from_u64(0xacce2024);
    let mut borderline = 0usize;
    let mut findings = 0usize;
    let mut disagreements = 0usize;
    let mut unexplained = 0usize;
    for _ in 0..10_000 {
        let p = DissipativeParams {
            a: rng.random_range(0.0..1.5),
            b: rng.random_range(-1.0..1.0),
            c: rng.random_range(-1.0..1.0),
            alpha: rng.random_range(0.0..1.5),
            beta: rng.random_range(-1.0..1.0),
            gamma: rng.random_range(0.0..1.5),
        };
        let algebraic = kossakowski_report(&p);
        let generator = dissipator_matrix(&p).unwrap();
        let mut worst_eig = f64::INFINITY;
        for &t in &TIMES {
            let phi = expm_evolution(&generator, t).unwrap();
            let (_, min_eig) = is_completely_positive(&phi).unwrap();
            worst_eig = worst_eig.min(min_eig);
        }
        let choi_cp = worst_eig >= -CHOI_EIG_THRESHOLD;

        if algebraic.is_completely_positive {
            if !choi_cp {
                disagreements += 1;
                unexplained += 1;
            }
            continue;
        }
        if algebraic.min_eigenvalue > -ALGEBRAIC_BAND || worst_eig.abs() < 1e-8 {
            borderline += 1;
            continue;
        }
        if choi_cp {
            disagreements += 1;
            unexplained += 1;
            continue;
        }
        // six-check verdict vs Choi verdict: log and explain the gap
        if cp_inequalities(&p).all_satisfied() {
            findings += 1;
            if algebraic.determinant >= 0.0 {
                unexplained += 1;
            }
        }
    }
    let ok = unexplained == 0;
    println!(
        "[criterion 4] inequality verdict vs Choi verdict on 10000 tuples at t in {{0.01, 0.1, 1}}: {} \
         ({disagreements} disagreements outside tolerance bands, {borderline} borderline skipped; \
         {findings} findings logged where the six checks pass but the semigroup is not CP — \
         each explained by a negative Kossakowski determinant, the condition the six checks omit)",
        verdict(ok)
    );
    assert!(ok, "{unexplained} unexplained disagreements");
}

#[test]
fn criterion_5_negative_probability_persistence() {
    // Exactly as stated: (alpha, gamma) = (1, 2), beta = 0, decaying
    // Hamiltonian with widths (1, 0.002) and mass splitting 0.47; Trotter at
    // n = 1024 over t in [0.1, 5]; the evolved singlet must stay below
    // -1e-6 in its minimum eigenvalue and satisfy the negative-mass bound.
    let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
    let (alpha, beta, gamma) = (1.0, 0.0, 2.0);
    let n = 1024u32;
    let times = linspace(0.1, 5.0, 25);

    let w_pair = pair_generator(&ww_generator(&h));
    let tau = TauClosedForm::new(alpha, beta, gamma).unwrap();
    let rho_s = singlet();

    let mut negativity_failures = Vec::new();
    let mut bound_failures = Vec::new();
    let mut last_negative_t = None;
    for &t in &times {
        let omega = trotter_compose(
            |s| expm_evolution(&w_pair, s),
            |s| product_evolution(&tau.map_at(s)?),
            t,
            n,
        )
        .unwrap();
        let state = apply_pair_bloch_map(&omega.matrix, &rho_s.matrix).unwrap();
        let min_eig = psd_check(&state).unwrap().min_eigenvalue;
        if min_eig < PAIR_NEGATIVITY_THRESHOLD {
            last_negative_t = Some(t);
        } else {
            negativity_failures.push((t, min_eig));
        }
        let bound = trotter_negative_mass_bound(&h, alpha, beta, gamma, t, n).unwrap();
        if bound.lhs < bound.rhs - BOUND_TOL {
            bound_failures.push((t, bound.lhs, bound.rhs));
        }
    }

    let ok = negativity_failures.is_empty() && bound_failures.is_empty();
    println!(
        "[criterion 5] negative-probability persistence (Trotter n = 1024, t in [0.1, 5]): {}",
        verdict(ok)
    );
    if !ok {
        println!(
            "  negativity clause fails at {} of {} grid points (first failure t = {:.3}, \
             min eigenvalue {:+.3e}); last compliant point t = {:?}",
            negativity_failures.len(),
            times.len(),
            negativity_failures.first().map(|f| f.0).unwrap_or(f64::NAN),
            negativity_failures.first().map(|f| f.1).unwrap_or(f64::NAN),
            last_negative_t
        );
        println!(
            "  bound clause fails at {} points (first: t = {:.3}, lhs {:.3e} < rhs {:.3e})",
            bound_failures.len(),
            bound_failures.first().map(|f| f.0).unwrap_or(f64::NAN),
            bound_failures.first().map(|f| f.1).unwrap_or(f64::NAN),
            bound_failures.first().map(|f| f.2).unwrap_or(f64::NAN),
        );
        println!(
            "  analysis: the negativity of the evolved singlet is transient for these rates — \
             the mass-splitting rotation mixes the undamped correlation into damped channels \
             and positivity returns near t = 0.65 (the same happens for the exact exponential \
             of the summed generator, so this is not a Trotter artifact); the persistence \
             argument needs the conjugation to be unitary for its sign-split commutation step, \
             which a decaying Hamiltonian is not"
        );
    }
    assert!(
        ok,
        "persistence fails beyond the transient window: {} negativity failures, {} bound failures",
        negativity_failures.len(),
        bound_failures.len()
    );
}

#[test]
fn criterion_6_trotter_first_order_convergence() {
    let mut rng = StdRng::seed_from_u64(0x7267656e);
    let mut ok = true;
    let mut reported: Vec<String> = Vec::new();
    for pair in 0..3 {
        let g1 = RealMatrix::from_fn(4, |_, _| rng.random_range(-0.5..0.5));
        let g2 = RealMatrix::from_fn(4, |_, _| rng.random_range(-0.5..0.5));
        let t = 1.0;
        let reference = expm_evolution(&(&g1 + &g2), t).unwrap();
        let error_at = |n: u32| {
            trotter_compose(|s| expm_evolution(&g1, s), |s| expm_evolution(&g2, s), t, n)
                .unwrap()
                .matrix
                .frobenius_distance(&reference.matrix)
        };
        let mut previous = error_at(8);
        let mut worst_ratio_dev: f64 = 0.0;
        let mut n = 16u32;
        while n <= 1024 {
            let current = error_at(n);
            let ratio = previous / current;
            worst_ratio_dev = worst_ratio_dev.max((ratio - 2.0).abs());
            ok &= (ratio - 2.0).abs() <= RATIO_BAND;
            previous = current;
            n *= 2;
        }
        reported.push(format!("pair {pair}: worst |ratio - 2| = {worst_ratio_dev:.3}"));
    }
    println!(
        "[criterion 6] Trotter error halves as n doubles over n in {{8..1024}}, 3 random pairs: {} ({})",
        verdict(ok),
        reported.join("; ")
    );
    assert!(ok);
}

#[test]
fn criterion_7_standard_quantum_mechanics_sanity() {
    let h = EffectiveHamiltonian::kaon(0.0, 0.47, 1.0, 0.002);
    let generator = ww_generator(&h);
    let basis = KaonBasis::new();

    let mut choi_ok = true;
    let mut rank_ok = true;
    for &t in &linspace(0.25, 5.0, 20) {
        let phi = expm_evolution(&generator, t).unwrap();
        let (cp, _) = is_completely_positive(&phi).unwrap();
        choi_ok &= cp;

        for rho0 in [basis.k_state(), basis.kbar_state(), basis.k1_projector()] {
            let rho_t = apply_bloch_map(&phi.matrix, &rho0).unwrap();
            let eig = hermitian_eigen(&rho_t).unwrap();
            // rank 1: the subdominant eigenvalue vanishes relative to the leading one
            rank_ok &= eig.eigenvalues[0].abs() <= 1e-10 * eig.eigenvalues[1].max(1e-30);
        }
    }

    let mut trace_ok = true;
    let mut previous = f64::INFINITY;
    for &t in &linspace(0.0, 5.0, 101) {
        let phi = expm_evolution(&generator, t).unwrap();
        let rho_t = apply_bloch_map(&phi.matrix, &basis.k_state()).unwrap();
        let trace = rho_t.trace().re;
        trace_ok &= trace <= previous + 1e-12;
        previous = trace;
    }

    let ok = choi_ok && rank_ok && trace_ok;
    println!(
        "[criterion 7] standard quantum mechanics sanity (dissipator off): {} \
         (Choi PSD: {choi_ok}, pure states stay rank-1: {rank_ok}, trace non-increasing: {trace_ok})",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_8_entropy_monotonicity_for_hermitian_lindblad_operators() {
    let mut rng = StdRng::seed_from_u64(0x656e7472);
    let basis = matqm::bloch::PauliBasis::new();
    // two random Hermitian operators (real Pauli combinations)
    let mut random_hermitian = |scale: f64| {
        let mut op = ComplexMatrix::zeros(2);
        for sigma in &basis.sigma {
            op = &op + &sigma.scale_re(rng.random_range(-scale..scale));
        }
        op
    };
    let ops = LindbladOperators::new(vec![random_hermitian(0.7), random_hermitian(0.5)]).unwrap();
    assert!(ops.hermitian_flag);
    let generator = lindblad_dissipator(&ops);

    let times = linspace(0.0, 2.0, 50);
    let maps: Vec<_> = times.iter().map(|&t| expm_evolution(&generator, t).unwrap()).collect();

    let entropy = |rho: &ComplexMatrix| -> f64 {
        hermitian_eigen(rho)
            .unwrap()
            .eigenvalues
            .iter()
            .map(|&l| if l > 1e-15 { -l * l.ln() } else { 0.0 })
            .sum()
    };

    let mut ok = true;
    let mut worst_drop: f64 = 0.0;
    for _ in 0..100 {
        // random full-rank density matrix
        let g = ComplexMatrix::from_fn(2, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let mut rho = &g * &g.adjoint();
        let trace = rho.trace().re;
        rho = rho.scale_re(1.0 / trace);

        let mut previous = f64::NEG_INFINITY;
        for map in &maps {
            let evolved = apply_bloch_map(&map.matrix, &rho).unwrap();
            let s = entropy(&evolved);
            worst_drop = worst_drop.min(s - previous);
            ok &= s - previous >= ENTROPY_TOL;
            previous = s;
        }
    }
    println!(
        "[criterion 8] von Neumann entropy non-decreasing for Hermitian Lindblad operators \
         (100 states, 50 times): {} (worst step {worst_drop:.2e}, tolerance {ENTROPY_TOL:.0e})",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn criterion_9_cli_determinism() {
    let binary = env!("CARGO_BIN_EXE_matqm");
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let cases: [(&str, &str); 7] = [
        ("check-cp", "standard_qm.json"),
        ("check-cp", "simply_positive.json"),
        ("evolve", "standard_qm.json"),
        ("evolve", "cp_isotropic.json"),
        ("evolve", "simply_positive.json"),
        ("two-kaon", "simply_positive.json"),
        ("trotter", "simply_positive.json"),
    ];
    let sweep_case = ("sweep", "sweep_beta.json");

    let mut ok = true;
    let mut lines = Vec::new();
    for (command, config) in cases.iter().chain(std::iter::once(&sweep_case)) {
        let run_once = |tag: &str| -> (Option<i32>, Vec<u8>, Vec<u8>) {
            let out_path: PathBuf = std::env::temp_dir().join(format!(
                "matqm-acceptance-{}-{command}-{config}-{tag}",
                std::process::id()
            ));
            let output = Command::new(binary)
                .args([
                    command,
                    "--config",
                    configs.join(config).to_str().unwrap(),
                    "--out",
                    out_path.to_str().unwrap(),
                ])
                .output()
                .expect("spawn matqm");
            let bytes = std::fs::read(&out_path).expect("output file");
            let _ = std::fs::remove_file(&out_path);
            (output.status.code(), bytes, output.stdout)
        };
        let first = run_once("a");
        let second = run_once("b");
        let identical = first == second;
        ok &= identical;
        lines.push(format!(
            "{command} on {config}: exit {:?}, {} bytes, {}",
            first.0,
            first.1.len(),
            if identical { "byte-identical" } else { "MISMATCH" }
        ));
    }
    println!(
        "[criterion 9] CLI determinism, every subcommand twice on shipped configs: {}",
        verdict(ok)
    );
    for line in &lines {
        println!("  {line}");
    }
    assert!(ok);
}
