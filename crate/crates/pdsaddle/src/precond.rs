//! Preconditioning matrices, weighted norms and eigenvalue bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};

/// Which family a preconditioner belongs to, with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrecondKind {
    /// `[[I/τ, −Aᵀ], [−A, I/σ]]`.
    PhiTauSigma { tau: f64, sigma: f64 },
    /// `[[I, −ηAᵀ], [−ηA, I]]`.
    PhiEta { eta: f64 },
    /// `Φ_{τ,σ} + diag(γx I, γy I)`.
    PhiPlusPsi { tau: f64, sigma: f64, gamma_x: f64, gamma_y: f64 },
    Identity,
}

/// Block-diagonal shift `diag(γx Iₙ, γy Iₘ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PsiShift {
    pub gamma_x: f64,
    pub gamma_y: f64,
}

impl PsiShift {
    pub fn new(gamma_x: f64, gamma_y: f64) -> Self {
        PsiShift { gamma_x, gamma_y }
    }

    pub fn zero() -> Self {
        PsiShift::default()
    }

    pub fn matrix(&self, n: usize, m: usize) -> Matrix {
        let diag = Vector::from_fn(n + m, |i, _| if i < n { self.gamma_x } else { self.gamma_y });
        Matrix::from_diagonal(&diag)
    }
}

/// Symmetric positive-definite weighting matrix.
#[derive(Clone, Debug)]
pub struct Preconditioner {
    matrix: Matrix,
    kind: PrecondKind,
    n: usize,
    m: usize,
    norm_a: f64,
    lambda_min: f64,
    lambda_max: f64,
}

fn finish(matrix: Matrix, kind: PrecondKind, n: usize, m: usize, norm_a: f64) -> Result<Preconditioner> {
    let (lambda_min, lambda_max) = linalg::extreme_eigenvalues(&matrix);
    if !(lambda_min > 0.0) {
        return Err(Error::NotPositiveDefinite { lambda_min });
    }
    Ok(Preconditioner { matrix, kind, n, m, norm_a, lambda_min, lambda_max })
}

fn block(a: &Matrix, top: f64, off: f64, bottom: f64) -> Matrix {
    let (m, n) = a.shape();
    let mut p = Matrix::zeros(n + m, n + m);
    p.view_mut((0, 0), (n, n)).fill_with_identity();
    p.view_mut((0, 0), (n, n)).scale_mut(top);
    p.view_mut((n, n), (m, m)).fill_with_identity();
    p.view_mut((n, n), (m, m)).scale_mut(bottom);
    p.view_mut((0, n), (n, m)).copy_from(&(a.transpose() * -off));
    p.view_mut((n, 0), (m, n)).copy_from(&(a * -off));
    p
}

/// `Φ_{τ,σ}`; rejects `τσ‖A‖² ≥ 1`.
pub fn make_phi(tau: f64, sigma: f64, a: &Matrix) -> Result<Preconditioner> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::validation("tau", "must be positive and finite"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::validation("sigma", "must be positive and finite"));
    }
    let norm_a = linalg::spectral_norm(a);
    let product = tau * sigma * norm_a * norm_a;
    if product >= 1.0 {
        return Err(Error::step_bound("tau*sigma*|A|^2 < 1", product, 1.0));
    }
    let (m, n) = a.shape();
    finish(block(a, 1.0 / tau, 1.0, 1.0 / sigma), PrecondKind::PhiTauSigma { tau, sigma }, n, m, norm_a)
}

/// `Φη`; rejects `η ≥ 1/‖A‖`. `η = 0` gives the identity.
pub fn make_phi_eta(eta: f64, a: &Matrix) -> Result<Preconditioner> {
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(Error::validation("eta", "must be nonnegative and finite"));
    }
    let norm_a = linalg::spectral_norm(a);
    if eta * norm_a >= 1.0 {
        return Err(Error::step_bound("eta*|A| < 1", eta * norm_a, 1.0));
    }
    let (m, n) = a.shape();
    finish(block(a, 1.0, eta, 1.0), PrecondKind::PhiEta { eta }, n, m, norm_a)
}

/// Identity weighting on `R^{n+m}`.
pub fn identity(n: usize, m: usize) -> Preconditioner {
    Preconditioner {
        matrix: Matrix::identity(n + m, n + m),
        kind: PrecondKind::Identity,
        n,
        m,
        norm_a: 0.0,
        lambda_min: 1.0,
        lambda_max: 1.0,
    }
}

/// `ζ_{τ,σ} = max{1/τ, 1/σ} + ‖A‖`, an upper bound on `λmax(Φ_{τ,σ})`.
pub fn zeta(tau: f64, sigma: f64, norm_a: f64) -> f64 {
    (1.0 / tau).max(1.0 / sigma) + norm_a
}

impl Preconditioner {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> &PrecondKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// `Φ + Ψ`, e.g. the norm of a partially contractive splitting.
    pub fn with_shift(&self, psi: &PsiShift) -> Result<Preconditioner> {
        if psi.gamma_x < 0.0 || psi.gamma_y < 0.0 {
            return Err(Error::validation("psi", "shifts must be nonnegative"));
        }
        let kind = match self.kind {
            PrecondKind::PhiTauSigma { tau, sigma } => {
                PrecondKind::PhiPlusPsi { tau, sigma, gamma_x: psi.gamma_x, gamma_y: psi.gamma_y }
            }
            PrecondKind::PhiPlusPsi { tau, sigma, gamma_x, gamma_y } => PrecondKind::PhiPlusPsi {
                tau,
                sigma,
                gamma_x: gamma_x + psi.gamma_x,
                gamma_y: gamma_y + psi.gamma_y,
            },
            _ => return Err(Error::validation("psi", "shifts apply to Φ_{τ,σ} weightings only")),
        };
        finish(&self.matrix + psi.matrix(self.n, self.m), kind, self.n, self.m, self.norm_a)
    }

    /// `√(wᵀ P w)`; the caller guarantees the dimension.
    pub fn norm(&self, w: &Vector) -> f64 {
        self.inner(w, w).max(0.0).sqrt()
    }

    /// `uᵀ P w`; the caller guarantees the dimension.
    pub fn inner(&self, u: &Vector, w: &Vector) -> f64 {
        u.dot(&(&self.matrix * w))
    }

    /// Solve `P z = r` by Cholesky.
    pub fn solve(&self, r: &Vector) -> Vector {
        self.matrix.clone().cholesky().expect("preconditioner is SPD").solve(r)
    }
}

pub fn weighted_norm(p: &Preconditioner, w: &Vector) -> Result<f64> {
    if w.len() != p.dim() {
        return Err(Error::Dimension { expected: p.dim(), got: w.len() });
    }
    Ok(p.norm(w))
}

pub fn weighted_inner(p: &Preconditioner, u: &Vector, w: &Vector) -> Result<f64> {
    for v in [u, w] {
        if v.len() != p.dim() {
            return Err(Error::Dimension { expected: p.dim(), got: v.len() });
        }
    }
    Ok(p.inner(u, w))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub lambda_max: f64,
    pub zeta: f64,
    pub pass: bool,
}

/// Compare `λmax(Φ_{τ,σ})` with `ζ_{τ,σ}`.
pub fn check_phi_bounds(p: &Preconditioner) -> Result<BoundReport> {
    match p.kind {
        PrecondKind::PhiTauSigma { tau, sigma } => {
            let z = zeta(tau, sigma, p.norm_a);
            Ok(BoundReport { lambda_max: p.lambda_max, zeta: z, pass: p.lambda_max <= z + 1e-12 })
        }
        _ => Err(Error::validation("kind", "bound check applies to Φ_{τ,σ} only")),
    }
}

/// Largest `γ ∈ [0, 1]` with `Ψb + Ψf ⪰ γ (Φ + Ψb)`.
pub fn best_gamma(p: &Preconditioner, psi_b: &PsiShift, psi_f: &PsiShift) -> f64 {
    let (n, m) = (p.n, p.m);
    let left = psi_b.matrix(n, m) + psi_f.matrix(n, m);
    let right = &p.matrix + psi_b.matrix(n, m);
    linalg::generalized_min_eigenvalue(&left, &right).clamp(0.0, 1.0)
}
