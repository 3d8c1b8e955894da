//! Time-evolution engines.
//!
//! Three routes produce Bloch-space evolution maps: the analytic closed form
//! of the (2,3)-sector dissipative semigroup, the numerical matrix exponential
//! of an arbitrary generator, and Trotter composition of two map families.
//! The first two are deliberately independent implementations so each can
//! serve as an oracle for the other.

use matqm_core::{expm, RealMatrix};

use crate::error::{Error, Result};

/// How an evolution map was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Exponential,
    Trotter(u32),
}

/// A linear map on states at a fixed time, stored as a real Bloch-space
/// matrix: 4×4 for one two-level system, 16×16 for a pair. At time zero the
/// matrix is the identity; Hermiticity preservation is automatic in this
/// representation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionMap {
    pub matrix: RealMatrix,
    pub time: f64,
    pub provenance: Provenance,
}

impl EvolutionMap {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Analytic data of the dissipative semigroup with damping restricted to the
/// last two Bloch components: rates λ± = −(α+γ) ± √((α−γ)² + 4β²) and the
/// block coefficients A(t), B(t), C(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauClosedForm {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl TauClosedForm {
    /// Requires α, γ ≥ 0 and αγ ≥ β² (otherwise the semigroup is not even
    /// positivity-preserving and λ₊ > 0).
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if alpha < 0.0 || gamma < 0.0 {
            return Err(Error::NegativeDamping { a: 0.0, alpha, gamma });
        }
        if alpha * gamma < beta * beta {
            return Err(Error::NotPositive { alpha_gamma: alpha * gamma, beta_sq: beta * beta });
        }
        let root = ((alpha - gamma) * (alpha - gamma) + 4.0 * beta * beta).sqrt();
        Ok(Self {
            alpha,
            beta,
            gamma,
            lambda_plus: -(alpha + gamma) + root,
            lambda_minus: -(alpha + gamma) - root,
        })
    }

    /// The coefficients (A, B, C) at time t, evaluated in the cancellation-
    /// free form
    ///
    /// ```text
    /// A = e^{λ̄t} [cosh(h) − (α−γ)·t·sinhc(h)]
    /// B = −2β·t·e^{λ̄t}·sinhc(h)
    /// C = e^{λ̄t} [cosh(h) + (α−γ)·t·sinhc(h)]
    /// ```
    ///
    /// with λ̄ = (λ₊+λ₋)/2 and h = (λ₊−λ₋)t/2, which is algebraically
    /// identical to the textbook quotient form but continuous through the
    /// degenerate point λ₊ = λ₋, where it reduces to A = C = e^{−2αt}, B = 0.
    pub fn coefficients(&self, t: f64) -> Result<(f64, f64, f64)> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        let mean = 0.5 * (self.lambda_plus + self.lambda_minus);
        let h = 0.5 * (self.lambda_plus - self.lambda_minus) * t;
        let envelope = (mean * t).exp();
        let even = h.cosh();
        let odd = sinhc(h);
        let a = envelope * (even - (self.alpha - self.gamma) * t * odd);
        let b = -2.0 * self.beta * t * envelope * odd;
        let c = envelope * (even + (self.alpha - self.gamma) * t * odd);
        Ok((a, b, c))
    }

    /// The full 4×4 Bloch map diag-block [[1,0],[0,1]] ⊕ [[A,B],[B,C]].
    pub fn map_at(&self, t: f64) -> Result<EvolutionMap> {
        let (a, b, c) = self.coefficients(t)?;
        let mut m = RealMatrix::identity(4);
        m[(2, 2)] = a;
        m[(2, 3)] = b;
        m[(3, 2)] = b;
        m[(3, 3)] = c;
        Ok(EvolutionMap { matrix: m, time: t, provenance: Provenance::ClosedForm })
    }
}

/// sinh(x)/x, series-expanded near zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// Closed-form dissipative evolution map at time t.
pub fn tau_closed_form(alpha: f64, beta: f64, gamma: f64, t: f64) -> Result<EvolutionMap> {
    TauClosedForm::new(alpha, beta, gamma)?.map_at(t)
}

/// exp(t·G) for an arbitrary real generator.
pub fn expm_evolution(generator: &RealMatrix, t: f64) -> Result<EvolutionMap> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let matrix = expm(&generator.scale(t)).map_err(Error::Core)?;
    Ok(EvolutionMap { matrix, time: t, provenance: Provenance::Exponential })
}

/// (W_{t/n} ∘ T_{t/n})^n: within each step the `w` factor is applied after
/// the `t_map` factor. The builders are called once at step size t/n and the
/// composite is raised to the n-th power.
pub fn trotter_compose<FW, FT>(w: FW, t_map: FT, t: f64, n: u32) -> Result<EvolutionMap>
where
    FW: Fn(f64) -> Result<EvolutionMap>,
    FT: Fn(f64) -> Result<EvolutionMap>,
{
    if n == 0 {
        return Err(Error::ZeroTrotterSteps);
    }
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let step = t / n as f64;
    let w_step = w(step)?;
    let t_step = t_map(step)?;
    if w_step.dim() != t_step.dim() {
        return Err(Error::WrongDimension { expected: w_step.dim(), actual: t_step.dim() });
    }
    let composite = &w_step.matrix * &t_step.matrix;
    Ok(EvolutionMap { matrix: composite.pow(n as u64), time: t, provenance: Provenance::Trotter(n) })
}

/// A reusable time-parametrized evolution: either the analytic closed form or
/// the exponential of a stored generator.
#[derive(Debug, Clone)]
pub enum EvolutionFamily {
    ClosedForm(TauClosedForm),
    Exponential(RealMatrix),
}

impl EvolutionFamily {
    pub fn map_at(&self, t: f64) -> Result<EvolutionMap> {
        match self {
            EvolutionFamily::ClosedForm(tau) => tau.map_at(t),
            EvolutionFamily::Exponential(g) => expm_evolution(g, t),
        }
    }
}
