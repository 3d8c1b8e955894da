//! Construction and validation of evolution generators.
//!
//! The full generator is ρ ↦ −iHρ + iρH† + T[ρ]: a Weisskopf–Wigner part from
//! an effective (generally non-Hermitian) Hamiltonian H = M − iΓ/2, plus a
//! dissipative part T given either by six phenomenological parameters or by
//! explicit Lindblad operators. Everything is returned as a real 4×4 matrix
//! acting on Bloch components.

use matqm_core::{
    hermitian_eigen, psd_check, psd_threshold, Complex64, ComplexMatrix, RealMatrix,
};

use crate::bloch::superop_to_bloch;
use crate::error::{Error, Result};

/// The six real dissipative parameters, in the same inverse-time unit as the
/// Hamiltonian. The diagonal entries `a`, `alpha`, `gamma` must be
/// non-negative for the generated semigroup to stand any chance of being
/// positive; validation happens where matrices are built, so that diagnostic
/// reports can still be produced for out-of-range values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipativeParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DissipativeParams {
    pub fn zero() -> Self {
        Self { a: 0.0, b: 0.0, c: 0.0, alpha: 0.0, beta: 0.0, gamma: 0.0 }
    }

    /// Purely (2,3)-sector damping: a = b = c = 0.
    pub fn simply_positive_family(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { a: 0.0, b: 0.0, c: 0.0, alpha, beta, gamma }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a < 0.0 || self.alpha < 0.0 || self.gamma < 0.0 {
            return Err(Error::NegativeDamping { a: self.a, alpha: self.alpha, gamma: self.gamma });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0.0
            && self.b == 0.0
            && self.c == 0.0
            && self.alpha == 0.0
            && self.beta == 0.0
            && self.gamma == 0.0
    }
}

/// Bloch-space matrix of the dissipative term:
/// −2·[[0,0,0,0],[0,a,b,c],[0,b,α,β],[0,c,β,γ]]. Symmetric with zero first
/// row and column (trace- and identity-preserving).
pub fn dissipator_matrix(p: &DissipativeParams) -> Result<RealMatrix> {
    p.validate()?;
    Ok(dissipator_matrix_unchecked(p))
}

/// Same matrix without the sign validation, for diagnostic reports on
/// out-of-range parameters.
pub fn dissipator_matrix_unchecked(p: &DissipativeParams) -> RealMatrix {
    RealMatrix::from_entries(
        4,
        vec![
            0.0, 0.0, 0.0, 0.0,
            0.0, -2.0 * p.a, -2.0 * p.b, -2.0 * p.c,
            0.0, -2.0 * p.b, -2.0 * p.alpha, -2.0 * p.beta,
            0.0, -2.0 * p.c, -2.0 * p.beta, -2.0 * p.gamma,
        ],
    )
    .expect("4x4 literal")
}

/// One of the six complete-positivity inequalities, with its signed margin
/// (right-hand side minus left-hand side; negative margins mean violation).
#[derive(Debug, Clone, PartialEq)]
pub struct CpInequality {
    pub label: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

/// All six inequality checks. The report is total: it never errors, and
/// right-hand sides are used as written even when they come out negative.
#[derive(Debug, Clone, PartialEq)]
pub struct CpInequalityReport {
    pub inequalities: [CpInequality; 6],
}

impl CpInequalityReport {
    pub fn all_satisfied(&self) -> bool {
        self.inequalities.iter().all(|i| i.satisfied)
    }

    pub fn min_margin(&self) -> f64 {
        self.inequalities.iter().map(|i| i.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates the six necessary complete-positivity inequalities on the
/// dissipative parameters:
/// a ≤ α+γ, α ≤ a+γ, γ ≤ a+α, 4b² ≤ γ²−(a−α)², 4c² ≤ α²−(a−γ)²,
/// 4β² ≤ a²−(α−γ)².
pub fn cp_inequalities(p: &DissipativeParams) -> CpInequalityReport {
    let mk = |label, lhs: f64, rhs: f64| {
        let margin = rhs - lhs;
        CpInequality { label, lhs, rhs, margin, satisfied: margin >= 0.0 }
    };
    let DissipativeParams { a, b, c, alpha, beta, gamma } = *p;
    CpInequalityReport {
        inequalities: [
            mk("a <= alpha + gamma", a, alpha + gamma),
            mk("alpha <= a + gamma", alpha, a + gamma),
            mk("gamma <= a + alpha", gamma, a + alpha),
            mk("4b^2 <= gamma^2 - (a - alpha)^2", 4.0 * b * b, gamma * gamma - (a - alpha) * (a - alpha)),
            mk("4c^2 <= alpha^2 - (a - gamma)^2", 4.0 * c * c, alpha * alpha - (a - gamma) * (a - gamma)),
            mk("4beta^2 <= a^2 - (alpha - gamma)^2", 4.0 * beta * beta, a * a - (alpha - gamma) * (alpha - gamma)),
        ],
    }
}

/// Kossakowski coefficient matrix of the dissipator in the GKSL normal form
/// T[ρ] = Σ_ij C_ij (σ_i ρ σ_j − ½{σ_j σ_i, ρ}):
///
/// ```text
/// C = [ (−a+α+γ)/2    −b           −c       ]
///     [ −b            (a−α+γ)/2    −β       ]
///     [ −c            −β           (a+α−γ)/2 ]
/// ```
///
/// The generated semigroup is completely positive exactly when C is positive
/// semidefinite. The six inequality checks of [`cp_inequalities`] are the
/// diagonal and 2×2-minor conditions of this matrix; the determinant condition
/// is additional, so they are necessary but not sufficient on their own.
pub fn kossakowski_matrix(p: &DissipativeParams) -> RealMatrix {
    let DissipativeParams { a, b, c, alpha, beta, gamma } = *p;
    RealMatrix::from_entries(
        3,
        vec![
            0.5 * (-a + alpha + gamma), -b, -c,
            -b, 0.5 * (a - alpha + gamma), -beta,
            -c, -beta, 0.5 * (a + alpha - gamma),
        ],
    )
    .expect("3x3 literal")
}

/// Full algebraic complete-positivity report: spectrum of the Kossakowski
/// matrix plus the determinant that the six inequalities alone do not cover.
#[derive(Debug, Clone, PartialEq)]
pub struct KossakowskiReport {
    pub min_eigenvalue: f64,
    pub determinant: f64,
    pub is_completely_positive: bool,
}

pub fn kossakowski_report(p: &DissipativeParams) -> KossakowskiReport {
    let c = kossakowski_matrix(p);
    let as_complex = ComplexMatrix::from_fn(3, |i, j| Complex64::new(c[(i, j)], 0.0));
    let eig = hermitian_eigen(&as_complex).expect("symmetric by construction");
    let min_eigenvalue = eig.min_eigenvalue();
    let determinant = eig.eigenvalues.iter().product();
    let threshold = psd_threshold(c.frobenius_norm());
    KossakowskiReport {
        min_eigenvalue,
        determinant,
        is_completely_positive: min_eigenvalue >= -threshold,
    }
}

/// Symmetric damping block [[a,b,c],[b,α,β],[c,β,γ]]. The dissipative
/// semigroup exp(tT) maps the Bloch ball into itself for every t ≥ 0 exactly
/// when this block is positive semidefinite, so its spectrum decides plain
/// (as opposed to complete) positivity.
pub fn damping_block(p: &DissipativeParams) -> RealMatrix {
    let DissipativeParams { a, b, c, alpha, beta, gamma } = *p;
    RealMatrix::from_entries(3, vec![a, b, c, b, alpha, beta, c, beta, gamma]).expect("3x3 literal")
}

/// Positivity classification of the dissipative semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityClass {
    CompletelyPositive,
    SimplyPositive,
    NotPositive,
}

impl PositivityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PositivityClass::CompletelyPositive => "CP",
            PositivityClass::SimplyPositive => "simply-positive",
            PositivityClass::NotPositive => "not-positive",
        }
    }
}

/// Classifies the semigroup generated by the dissipative parameters.
pub fn classify_positivity(p: &DissipativeParams) -> PositivityClass {
    if p.validate().is_ok() && kossakowski_report(p).is_completely_positive {
        return PositivityClass::CompletelyPositive;
    }
    let d = damping_block(p);
    let as_complex = ComplexMatrix::from_fn(3, |i, j| Complex64::new(d[(i, j)], 0.0));
    let report = psd_check(&as_complex).expect("symmetric by construction");
    if report.is_psd {
        PositivityClass::SimplyPositive
    } else {
        PositivityClass::NotPositive
    }
}

/// Effective Weisskopf–Wigner Hamiltonian H = M − iΓ/2 of a decaying
/// two-level system; M = (H+H†)/2 is the mass matrix and Γ = i(H−H†) the
/// width matrix (Hermitian by construction, positive semidefinite for
/// physical configurations).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveHamiltonian {
    h: ComplexMatrix,
}

impl EffectiveHamiltonian {
    /// Wraps a raw 2×2 complex matrix.
    pub fn from_matrix(h: ComplexMatrix) -> Result<Self> {
        if h.dim() != 2 {
            return Err(Error::WrongDimension { expected: 2, actual: h.dim() });
        }
        Ok(Self { h })
    }

    /// Diagonal Hamiltonian in the CP basis with the CP-even state |K₁⟩
    /// identified with the short-lived mode:
    /// H = diag(m_S − iΓ_S/2, m_L − iΓ_L/2).
    pub fn kaon(m_s: f64, m_l: f64, gamma_s: f64, gamma_l: f64) -> Self {
        Self {
            h: ComplexMatrix::diag(&[
                Complex64::new(m_s, -0.5 * gamma_s),
                Complex64::new(m_l, -0.5 * gamma_l),
            ]),
        }
    }

    pub fn zero() -> Self {
        Self { h: ComplexMatrix::zeros(2) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.h
    }

    /// Hermitian part (H + H†)/2.
    pub fn mass_matrix(&self) -> ComplexMatrix {
        (&self.h + &self.h.adjoint()).scale_re(0.5)
    }

    /// Width matrix Γ = i(H − H†); Hermitian by construction.
    pub fn width_matrix(&self) -> ComplexMatrix {
        (&self.h - &self.h.adjoint()).scale(Complex64::I)
    }

    /// Largest eigenvalue of the width matrix (the fastest decay rate).
    pub fn lambda_max(&self) -> f64 {
        hermitian_eigen(&self.width_matrix())
            .expect("width matrix is Hermitian by construction")
            .max_eigenvalue()
    }

    /// Whether the width matrix is positive semidefinite; callers should warn
    /// on `false`, which describes a non-decaying (amplifying) configuration.
    pub fn width_is_psd(&self) -> bool {
        psd_check(&self.width_matrix()).expect("width matrix Hermitian").is_psd
    }
}

/// Bloch-space matrix of the Weisskopf–Wigner flow ρ ↦ −iHρ + iρH†. The
/// first row need not vanish: the trace obeys dTr(ρ)/dt = −Tr(Γρ).
pub fn ww_generator(h: &EffectiveHamiltonian) -> RealMatrix {
    let hm = h.matrix().clone();
    let hd = hm.adjoint();
    let i = Complex64::I;
    superop_to_bloch(move |rho| &(&hm * rho).scale(-i) + &(rho * &hd).scale(i))
        .expect("Weisskopf-Wigner flow preserves Hermiticity")
}

/// Explicit Lindblad operators A_j; the dissipator they generate is
/// −½(Rρ + ρR) + Σ_j A_j ρ A_j† with R = Σ_j A_j†A_j. When every A_j is
/// Hermitian the dissipator is unital and entropy-increasing.
#[derive(Debug, Clone)]
pub struct LindbladOperators {
    pub ops: Vec<ComplexMatrix>,
    pub hermitian_flag: bool,
}

impl LindbladOperators {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        for op in &ops {
            if op.dim() != 2 {
                return Err(Error::WrongDimension { expected: 2, actual: op.dim() });
            }
        }
        let hermitian_flag = ops.iter().all(|op| op.is_hermitian());
        Ok(Self { ops, hermitian_flag })
    }

    /// R = Σ_j A_j†A_j; positive semidefinite by construction.
    pub fn rate_operator(&self) -> ComplexMatrix {
        let mut r = ComplexMatrix::zeros(2);
        for op in &self.ops {
            r = &r + &(&op.adjoint() * op);
        }
        r
    }
}

/// Bloch-space matrix of the Lindblad dissipator. For Hermitian operator
/// sets the result is symmetric with zero first row and column.
pub fn lindblad_dissipator(l: &LindbladOperators) -> RealMatrix {
    let r = l.rate_operator();
    let ops = l.ops.clone();
    superop_to_bloch(move |rho| {
        let mut out = (&(&r * rho) + &(rho * &r)).scale_re(-0.5);
        for a in &ops {
            out = &out + &(&(a * rho) * &a.adjoint());
        }
        out
    })
    .expect("Lindblad dissipator preserves Hermiticity")
}

/// Bloch-space matrix of the full generator ρ ↦ −iHρ + iρH† + T[ρ].
pub fn full_generator(h: &EffectiveHamiltonian, p: &DissipativeParams) -> Result<RealMatrix> {
    Ok(&ww_generator(h) + &dissipator_matrix(p)?)
}
