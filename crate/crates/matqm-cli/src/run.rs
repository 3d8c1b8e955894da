//! The five subcommands. Each returns whether the run's physical checks
//! passed (exit 0) or failed (exit 1); configuration problems surface as
//! [`ConfigError`] (exit 2).

use std::path::PathBuf;

use serde::Serialize;

use matqm::bloch::{apply_bloch_map, apply_pair_bloch_map, matrix_to_bloch, reduced_first_bloch, KaonBasis};
use matqm::core::psd_check;
use matqm::cp::choi_of_map;
use matqm::evolution::{expm_evolution, trotter_compose, EvolutionFamily, EvolutionMap};
use matqm::generators::{
    classify_positivity, cp_inequalities, dissipator_matrix, dissipator_matrix_unchecked,
    full_generator, kossakowski_report, ww_generator, DissipativeParams, PositivityClass,
};
use matqm::observables::decay_rate;
use matqm::two_kaon::{
    pair_generator, product_evolution, singlet, trotter_negative_mass_bound, two_kaon_witness,
};
use matqm::ComplexMatrix;

use crate::config::{ConfigError, InitialState, ScenarioConfig, SystemKind};
use crate::output::{emit, to_json_pretty, Cell, Format, Table};

type RunResult = Result<bool, ConfigError>;

fn config_err(e: impl std::fmt::Display) -> ConfigError {
    ConfigError(e.to_string())
}

#[derive(Debug, Serialize)]
struct Metadata {
    tool: &'static str,
    command: &'static str,
    dissipative: DissipativeMeta,
    #[serde(skip_serializing_if = "Option::is_none")]
    trotter_n: Option<u32>,
}

#[derive(Debug, Serialize)]
struct DissipativeMeta {
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl Metadata {
    fn new(command: &'static str, p: &DissipativeParams, trotter_n: Option<u32>) -> Self {
        Metadata {
            tool: "matqm",
            command,
            dissipative: DissipativeMeta {
                a: p.a,
                b: p.b,
                c: p.c,
                alpha: p.alpha,
                beta: p.beta,
                gamma: p.gamma,
            },
            trotter_n,
        }
    }
}

#[derive(Debug, Serialize)]
struct TableReport {
    metadata: Metadata,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

fn emit_table(
    table: Table,
    metadata: Metadata,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), ConfigError> {
    let content = match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            to_json_pretty(&TableReport { metadata, columns: table.columns, rows: table.rows })
        }
    };
    emit(out, &content).map_err(|e| config_err(format!("cannot write output: {e}")))
}

fn warn_on_amplifying_width(config: &ScenarioConfig) -> Result<(), ConfigError> {
    let h = config.hamiltonian()?;
    if !h.width_is_psd() {
        eprintln!("warning: width matrix is not positive semidefinite; this configuration amplifies instead of decaying");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// check-cp
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct CheckCpReport {
    verdict: &'static str,
    inequalities: Vec<InequalityEntry>,
    choi_sweep: Vec<ChoiSweepEntry>,
    metadata: CheckCpMetadata,
}

#[derive(Debug, Serialize)]
struct InequalityEntry {
    label: &'static str,
    lhs: f64,
    rhs: f64,
    margin: f64,
    satisfied: bool,
}

#[derive(Debug, Serialize)]
struct ChoiSweepEntry {
    t: f64,
    min_eigenvalue: f64,
}

#[derive(Debug, Serialize)]
struct CheckCpMetadata {
    tool: &'static str,
    command: &'static str,
    dissipative: DissipativeMeta,
    kossakowski_min_eigenvalue: f64,
    kossakowski_determinant: f64,
}

/// Classifies the dissipative semigroup and reports the six inequality
/// margins plus a Choi minimum-eigenvalue sweep of exp(tT) over the grid.
pub fn check_cp(config: &ScenarioConfig, format: Format, out: &Option<PathBuf>) -> RunResult {
    let p = config.dissipative_params();
    let inequality_report = cp_inequalities(&p);
    let kossakowski = kossakowski_report(&p);
    let verdict = classify_positivity(&p);

    let generator = dissipator_matrix_unchecked(&p);
    let mut choi_sweep = Vec::new();
    for t in config.time_points() {
        let phi = expm_evolution(&generator, t).map_err(config_err)?;
        let choi = choi_of_map(&phi).map_err(config_err)?;
        let min_eigenvalue = psd_check(&choi.matrix).map_err(config_err)?.min_eigenvalue;
        choi_sweep.push(ChoiSweepEntry { t, min_eigenvalue });
    }

    eprintln!("verdict: {}", verdict.as_str());

    match format {
        Format::Json => {
            let report = CheckCpReport {
                verdict: verdict.as_str(),
                inequalities: inequality_report
                    .inequalities
                    .iter()
                    .map(|i| InequalityEntry {
                        label: i.label,
                        lhs: i.lhs,
                        rhs: i.rhs,
                        margin: i.margin,
                        satisfied: i.satisfied,
                    })
                    .collect(),
                choi_sweep,
                metadata: CheckCpMetadata {
                    tool: "matqm",
                    command: "check-cp",
                    dissipative: Metadata::new("check-cp", &p, None).dissipative,
                    kossakowski_min_eigenvalue: kossakowski.min_eigenvalue,
                    kossakowski_determinant: kossakowski.determinant,
                },
            };
            emit(out, &to_json_pretty(&report))
                .map_err(|e| config_err(format!("cannot write output: {e}")))?;
        }
        Format::Csv => {
            let mut table = Table::new(&["t", "choi_min_eigenvalue"]);
            for entry in &choi_sweep {
                table.push(vec![Cell::Float(entry.t), Cell::Float(entry.min_eigenvalue)]);
            }
            emit(out, &table.to_csv())
                .map_err(|e| config_err(format!("cannot write output: {e}")))?;
        }
    }
    Ok(verdict == PositivityClass::CompletelyPositive)
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

/// Time series of Bloch components, trace, minimum eigenvalue and normalized
/// decay rates. For the two-kaon system the state is the singlet evolved by
/// the Trotter composition; the Bloch columns then describe the reduced
/// single-kaon state while the minimum eigenvalue is that of the full pair
/// state (where negative probabilities appear).
pub fn evolve(config: &ScenarioConfig, format: Format, out: &Option<PathBuf>) -> RunResult {
    warn_on_amplifying_width(config)?;
    let observables = config.decay_observables()?;
    let mut columns = vec![
        "t".to_string(),
        "rho0".to_string(),
        "rho1".to_string(),
        "rho2".to_string(),
        "rho3".to_string(),
        "trace".to_string(),
        "min_eigenvalue".to_string(),
    ];
    for obs in &observables {
        columns.push(obs.name.clone());
    }
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);

    let times = config.time_points();
    let p = config.dissipative_params();
    let h = config.hamiltonian()?;
    let mut all_positive = true;

    match config.system {
        SystemKind::Single => {
            let generator = full_generator(&h, &p).map_err(config_err)?;
            let basis = KaonBasis::new();
            let rho0 = match config.initial_state {
                InitialState::K => basis.k_state(),
                InitialState::Kbar => basis.kbar_state(),
                InitialState::K1 => basis.k1_projector(),
                InitialState::K2 => basis.k2_projector(),
            };
            let family = EvolutionFamily::Exponential(generator.clone());
            let mut series = Vec::new();
            for obs in &observables {
                series.push(decay_rate(&rho0, obs, &family, &times).map_err(config_err)?);
            }
            for (k, &t) in times.iter().enumerate() {
                let map = expm_evolution(&generator, t).map_err(config_err)?;
                let rho_t = apply_bloch_map(&map.matrix, &rho0).map_err(config_err)?;
                all_positive &= push_state_row(&mut table, t, &rho_t, None, |row| {
                    for s in &series {
                        row.push(Cell::Float(s.values[k]));
                    }
                })?;
            }
        }
        SystemKind::TwoKaon => {
            let w_pair = pair_generator(&ww_generator(&h));
            let d_single = dissipator_matrix(&p).map_err(config_err)?;
            let rho_s = singlet();
            let reduced0 = ComplexMatrix::identity(2).scale_re(0.5);
            let denominators: Vec<f64> = observables
                .iter()
                .map(|o| (&o.operator * &reduced0).trace().re)
                .collect();
            for &t in &times {
                let omega = trotter_compose(
                    |s| expm_evolution(&w_pair, s),
                    |s| product_evolution(&expm_evolution(&d_single, s)?),
                    t,
                    config.trotter_n,
                )
                .map_err(config_err)?;
                let state = apply_pair_bloch_map(&omega.matrix, &rho_s.matrix).map_err(config_err)?;
                let pair_bloch = matqm::bloch::pair_matrix_to_bloch(&state).map_err(config_err)?;
                let reduced = matqm::bloch::bloch_to_matrix(&reduced_first_bloch(&pair_bloch));
                all_positive &= push_state_row(&mut table, t, &state, Some(&reduced), |row| {
                    for (obs, denom) in observables.iter().zip(&denominators) {
                        let value = (&obs.operator * &reduced).trace().re / denom;
                        row.push(Cell::Float(value));
                    }
                })?;
            }
        }
    }

    emit_table(table, Metadata::new("evolve", &p, Some(config.trotter_n)), format, out)?;
    Ok(all_positive)
}

/// Appends one series row: Bloch components of `bloch_source` (the state
/// itself, or the reduced state for pairs), trace and minimum eigenvalue of
/// `state`, then whatever `extend` adds. Returns the positivity flag.
fn push_state_row(
    table: &mut Table,
    t: f64,
    state: &ComplexMatrix,
    bloch_source: Option<&ComplexMatrix>,
    extend: impl FnOnce(&mut Vec<Cell>),
) -> Result<bool, ConfigError> {
    let bloch = matrix_to_bloch(bloch_source.unwrap_or(state)).map_err(config_err)?;
    let report = psd_check(state).map_err(config_err)?;
    let mut row = vec![Cell::Float(t)];
    for mu in 0..4 {
        row.push(Cell::Float(bloch.components[mu]));
    }
    row.push(Cell::Float(state.trace().re));
    row.push(Cell::Float(report.min_eigenvalue));
    extend(&mut row);
    table.push(row);
    Ok(report.is_psd)
}

// ---------------------------------------------------------------------------
// two-kaon
// ---------------------------------------------------------------------------

fn require_lower_block_family(p: &DissipativeParams) -> Result<(), ConfigError> {
    if p.a != 0.0 || p.b != 0.0 || p.c != 0.0 {
        return Err(ConfigError(
            "two-kaon witness analysis needs a = b = c = 0 (closed-form dissipative factor)"
                .into(),
        ));
    }
    Ok(())
}

/// Pair witness values against the closed form, plus the Trotter
/// negative-mass bound, over the time grid.
pub fn two_kaon(config: &ScenarioConfig, format: Format, out: &Option<PathBuf>) -> RunResult {
    let p = config.dissipative_params();
    require_lower_block_family(&p)?;
    if config.time_grid.start <= 0.0 {
        return Err(ConfigError("two-kaon analysis needs time_grid.start > 0".into()));
    }
    warn_on_amplifying_width(config)?;
    let h = config.hamiltonian()?;

    let mut table = Table::new(&[
        "t",
        "witness_u",
        "witness_closed_form",
        "negative_mass",
        "bound_rhs",
        "bound_holds",
    ]);
    let mut all_hold = true;
    for t in config.time_points() {
        let witness = two_kaon_witness(p.alpha, p.beta, p.gamma, t).map_err(config_err)?;
        let bound = trotter_negative_mass_bound(&h, p.alpha, p.beta, p.gamma, t, config.trotter_n)
            .map_err(config_err)?;
        all_hold &= bound.holds;
        table.push(vec![
            Cell::Float(t),
            Cell::Float(witness.value_u),
            Cell::Float(witness.closed_form),
            Cell::Float(bound.lhs),
            Cell::Float(bound.rhs),
            Cell::Bool(bound.holds),
        ]);
    }
    emit_table(table, Metadata::new("two-kaon", &p, Some(config.trotter_n)), format, out)?;
    Ok(all_hold)
}

// ---------------------------------------------------------------------------
// trotter
// ---------------------------------------------------------------------------

/// Convergence study at t = time_grid.end: step counts double up to
/// trotter_n, comparing against the exponential of the summed generator,
/// alongside the negative-mass bound at each step count.
pub fn trotter(config: &ScenarioConfig, format: Format, out: &Option<PathBuf>) -> RunResult {
    let p = config.dissipative_params();
    require_lower_block_family(&p)?;
    let t = config.time_grid.end;
    if t <= 0.0 {
        return Err(ConfigError("trotter analysis needs time_grid.end > 0".into()));
    }
    warn_on_amplifying_width(config)?;
    let h = config.hamiltonian()?;

    let w_pair = pair_generator(&ww_generator(&h));
    let d_single = dissipator_matrix(&p).map_err(config_err)?;
    let d_pair = pair_generator(&d_single);
    let reference = expm_evolution(&(&w_pair + &d_pair), t).map_err(config_err)?;

    let mut table = Table::new(&["n", "error", "ratio", "negative_mass", "bound_rhs", "bound_holds"]);
    let mut all_hold = true;
    let mut previous_error: Option<f64> = None;
    let mut n = 1u32;
    while n <= config.trotter_n {
        let omega = composed_pair_map(&w_pair, &d_single, t, n)?;
        let error = omega.matrix.frobenius_distance(&reference.matrix);
        let ratio = previous_error.map(|prev| prev / error);
        let bound = trotter_negative_mass_bound(&h, p.alpha, p.beta, p.gamma, t, n)
            .map_err(config_err)?;
        all_hold &= bound.holds;
        table.push(vec![
            Cell::Int(n as u64),
            Cell::Float(error),
            ratio.map_or_else(Cell::empty, Cell::Float),
            Cell::Float(bound.lhs),
            Cell::Float(bound.rhs),
            Cell::Bool(bound.holds),
        ]);
        previous_error = Some(error);
        if n > config.trotter_n / 2 {
            break;
        }
        n *= 2;
    }
    emit_table(table, Metadata::new("trotter", &p, Some(config.trotter_n)), format, out)?;
    Ok(all_hold)
}

fn composed_pair_map(
    w_pair: &matqm::RealMatrix,
    d_single: &matqm::RealMatrix,
    t: f64,
    n: u32,
) -> Result<EvolutionMap, ConfigError> {
    trotter_compose(
        |s| expm_evolution(w_pair, s),
        |s| product_evolution(&expm_evolution(d_single, s)?),
        t,
        n,
    )
    .map_err(config_err)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

/// Cartesian parameter sweep: per grid point the six margins, the
/// Kossakowski minimum eigenvalue and the positivity verdict. Rows are
/// independent and emitted in axis order.
pub fn sweep(config: &ScenarioConfig, format: Format, out: &Option<PathBuf>) -> RunResult {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| ConfigError("sweep command needs a 'sweep' section".into()))?;
    let base = config.dissipative_params();

    let axis_values: Vec<Vec<f64>> = sweep
        .axes
        .iter()
        .map(|axis| {
            if axis.steps == 1 {
                vec![axis.start]
            } else {
                (0..axis.steps)
                    .map(|k| {
                        axis.start + (axis.end - axis.start) * k as f64 / (axis.steps - 1) as f64
                    })
                    .collect()
            }
        })
        .collect();

    let mut table = Table::new(&[
        "a",
        "b",
        "c",
        "alpha",
        "beta",
        "gamma",
        "margin_1",
        "margin_2",
        "margin_3",
        "margin_4",
        "margin_5",
        "margin_6",
        "min_margin",
        "kossakowski_min_eigenvalue",
        "verdict",
    ]);

    let mut indices = vec![0usize; sweep.axes.len()];
    'grid: loop {
        let mut p = base;
        for ((axis, values), &idx) in sweep.axes.iter().zip(&axis_values).zip(&indices) {
            axis.param.set(&mut p, values[idx]);
        }
        push_sweep_row(&mut table, &p);

        // odometer increment, last axis fastest
        for pos in (0..indices.len()).rev() {
            indices[pos] += 1;
            if indices[pos] < axis_values[pos].len() {
                continue 'grid;
            }
            indices[pos] = 0;
        }
        break;
    }

    emit_table(table, Metadata::new("sweep", &base, None), format, out)?;
    Ok(true)
}

fn push_sweep_row(table: &mut Table, p: &DissipativeParams) {
    let report = cp_inequalities(p);
    let kossakowski = kossakowski_report(p);
    let verdict = classify_positivity(p);
    let mut row = vec![
        Cell::Float(p.a),
        Cell::Float(p.b),
        Cell::Float(p.c),
        Cell::Float(p.alpha),
        Cell::Float(p.beta),
        Cell::Float(p.gamma),
    ];
    for ineq in &report.inequalities {
        row.push(Cell::Float(ineq.margin));
    }
    row.push(Cell::Float(report.min_margin()));
    row.push(Cell::Float(kossakowski.min_eigenvalue));
    row.push(Cell::Text(verdict.as_str().to_string()));
    table.push(row);
}
