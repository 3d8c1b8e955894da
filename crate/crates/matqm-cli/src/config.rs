//! JSON scenario configuration.
//!
//! One document drives every subcommand. Complex numbers are `[re, im]`
//! pairs; a 2×2 matrix is a row-major array of such pairs. See the repository
//! README for the full schema and shipped examples under `configs/`.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use matqm::generators::{DissipativeParams, EffectiveHamiltonian};
use matqm::observables::DecayObservable;
use matqm::{Complex64, ComplexMatrix};

/// Configuration / usage problems; these exit with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

type Complex = [f64; 2];
type Matrix2 = [[Complex; 2]; 2];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Free-text note carried in the config file; not interpreted.
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub hamiltonian: Option<HamiltonianConfig>,
    #[serde(default)]
    pub dissipative: DissipativeConfig,
    pub time_grid: TimeGridConfig,
    #[serde(default = "default_trotter_n")]
    pub trotter_n: u32,
    #[serde(default)]
    pub system: SystemKind,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub observables: Vec<ObservableConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
}

fn default_trotter_n() -> u32 {
    1024
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum HamiltonianConfig {
    Kaon(KaonHamiltonian),
    Raw(RawHamiltonian),
}

/// Diagonal Hamiltonian in the CP basis from masses and widths; the CP-even
/// state carries (m_s, gamma_s).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KaonHamiltonian {
    pub m_s: f64,
    pub m_l: f64,
    pub gamma_s: f64,
    pub gamma_l: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHamiltonian {
    pub matrix: Matrix2,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DissipativeConfig {
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub c: f64,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridConfig {
    pub start: f64,
    pub end: f64,
    pub steps: u32,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    #[default]
    Single,
    TwoKaon,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    #[default]
    K,
    Kbar,
    K1,
    K2,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableConfig {
    pub name: String,
    #[serde(default)]
    pub matrix: Option<Matrix2>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub start: f64,
    pub end: f64,
    pub steps: u32,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    A,
    B,
    C,
    Alpha,
    Beta,
    Gamma,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::A => "a",
            SweepParam::B => "b",
            SweepParam::C => "c",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Gamma => "gamma",
        }
    }

    pub fn set(&self, p: &mut DissipativeParams, value: f64) {
        match self {
            SweepParam::A => p.a = value,
            SweepParam::B => p.b = value,
            SweepParam::C => p.c = value,
            SweepParam::Alpha => p.alpha = value,
            SweepParam::Beta => p.beta = value,
            SweepParam::Gamma => p.gamma = value,
        }
    }
}

impl ScenarioConfig {
    /// Parses and validates a config file; parse errors carry the JSON field
    /// path plus line/column.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| err(format!("cannot read config {}: {e}", path.display())))?;
        let mut de = serde_json::Deserializer::from_str(&text);
        let config: ScenarioConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let inner = e.inner();
            err(format!(
                "config parse error at field '{}' (line {}, column {}): {inner}",
                e.path(),
                inner.line(),
                inner.column()
            ))
        })?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let g = &self.time_grid;
        for (name, v) in [("start", g.start), ("end", g.end)] {
            if !v.is_finite() {
                return Err(err(format!("time_grid.{name} must be finite")));
            }
        }
        if g.steps < 1 {
            return Err(err("time_grid.steps must be at least 1"));
        }
        if g.end <= g.start {
            return Err(err("time_grid must be strictly increasing (end > start)"));
        }
        let d = &self.dissipative;
        for (name, v) in [
            ("a", d.a),
            ("b", d.b),
            ("c", d.c),
            ("alpha", d.alpha),
            ("beta", d.beta),
            ("gamma", d.gamma),
        ] {
            if !v.is_finite() {
                return Err(err(format!("dissipative.{name} must be finite")));
            }
        }
        if self.trotter_n < 1 {
            return Err(err("trotter_n must be at least 1"));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.axes.is_empty() {
                return Err(err("sweep.axes must not be empty"));
            }
            let mut rows = 1u64;
            for (i, axis) in sweep.axes.iter().enumerate() {
                if !axis.start.is_finite() || !axis.end.is_finite() {
                    return Err(err(format!("sweep axis {i} ({}) has unbounded range", axis.param.name())));
                }
                if axis.steps < 1 {
                    return Err(err(format!("sweep axis {i} ({}) needs steps >= 1", axis.param.name())));
                }
                rows = rows.saturating_mul(axis.steps as u64);
            }
            if rows > 1_000_000 {
                return Err(err(format!("sweep grid has {rows} rows; limit is 1000000")));
            }
        }
        Ok(())
    }

    /// Evenly spaced grid from start to end inclusive (`steps` intervals).
    pub fn time_points(&self) -> Vec<f64> {
        let g = &self.time_grid;
        let n = g.steps;
        (0..=n)
            .map(|k| g.start + (g.end - g.start) * k as f64 / n as f64)
            .collect()
    }

    pub fn dissipative_params(&self) -> DissipativeParams {
        let d = &self.dissipative;
        DissipativeParams { a: d.a, b: d.b, c: d.c, alpha: d.alpha, beta: d.beta, gamma: d.gamma }
    }

    pub fn hamiltonian(&self) -> Result<EffectiveHamiltonian, ConfigError> {
        match &self.hamiltonian {
            None => Ok(EffectiveHamiltonian::zero()),
            Some(HamiltonianConfig::Kaon(k)) => {
                for (name, v) in [
                    ("m_s", k.m_s),
                    ("m_l", k.m_l),
                    ("gamma_s", k.gamma_s),
                    ("gamma_l", k.gamma_l),
                ] {
                    if !v.is_finite() {
                        return Err(err(format!("hamiltonian.{name} must be finite")));
                    }
                }
                Ok(EffectiveHamiltonian::kaon(k.m_s, k.m_l, k.gamma_s, k.gamma_l))
            }
            Some(HamiltonianConfig::Raw(r)) => {
                let m = matrix_from_config(&r.matrix)?;
                EffectiveHamiltonian::from_matrix(m)
                    .map_err(|e| err(format!("hamiltonian.matrix: {e}")))
            }
        }
    }

    /// The observable list, defaulting to the two leading pion channels.
    pub fn decay_observables(&self) -> Result<Vec<DecayObservable>, ConfigError> {
        if self.observables.is_empty() {
            return Ok(vec![DecayObservable::two_pion(), DecayObservable::three_pion()]);
        }
        self.observables
            .iter()
            .map(|o| match (&o.matrix, o.name.as_str()) {
                (Some(m), _) => DecayObservable::new(o.name.clone(), matrix_from_config(m)?)
                    .map_err(|e| err(format!("observable '{}': {e}", o.name))),
                (None, "2pi") => Ok(DecayObservable::two_pion()),
                (None, "3pi") => Ok(DecayObservable::three_pion()),
                (None, other) => {
                    Err(err(format!("observable '{other}' has no built-in operator; provide a matrix")))
                }
            })
            .collect()
    }
}

fn matrix_from_config(m: &Matrix2) -> Result<ComplexMatrix, ConfigError> {
    let mut entries = Vec::with_capacity(4);
    for row in m {
        for &[re, im] in row {
            if !re.is_finite() || !im.is_finite() {
                return Err(err("matrix entries must be finite"));
            }
            entries.push(Complex64::new(re, im));
        }
    }
    Ok(ComplexMatrix::from_entries(2, entries).expect("2x2 by construction"))
}
