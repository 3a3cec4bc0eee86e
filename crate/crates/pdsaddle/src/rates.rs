//! Contraction-rate certificates, their constituent constants, and step-size
//! selection.
//!
//! Every rate is certified in a specific norm; the certificate records it so
//! that the verification harness can check the claim in the same geometry.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::precond::{self, zeta, PrecondKind, Preconditioner, PsiShift};
use crate::problem::{Condition, ConditionProfile, SaddleProblem};
use crate::splitting::{AlgorithmId, StepSizes};

/// Relative slack for non-strict step-size bounds, absorbing rounding in closed-form steps.
const BOUND_SLACK: f64 = 1e-12;

/// A machine-checkable contraction claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCertificate {
    pub algorithm: AlgorithmId,
    pub condition: Condition,
    pub steps: StepSizes,
    pub rho: f64,
    /// Norm in which the one-step map contracts with factor `rho`.
    pub norm: PrecondKind,
    pub constants: BTreeMap<String, f64>,
    /// Identifies the rate statement: `<algorithm>.<regime>`.
    pub theorem: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RateCertificate {
    /// Materialize the certificate's norm for `problem`.
    pub fn norm_matrix(&self, problem: &SaddleProblem) -> Result<Preconditioner> {
        norm_for(&self.norm, problem.a())
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }
}

pub fn norm_for(kind: &PrecondKind, a: &Matrix) -> Result<Preconditioner> {
    let (m, n) = a.shape();
    match *kind {
        PrecondKind::PhiTauSigma { tau, sigma } => precond::make_phi(tau, sigma, a),
        PrecondKind::PhiPlusPsi { tau, sigma, gamma_x, gamma_y } => {
            precond::make_phi(tau, sigma, a)?.with_shift(&PsiShift::new(gamma_x, gamma_y))
        }
        PrecondKind::PhiEta { eta } => precond::make_phi_eta(eta, a),
        PrecondKind::Identity => Ok(precond::identity(n, m)),
    }
}

fn require(profile: &ConditionProfile, condition: Condition) -> Result<()> {
    if profile.holds(condition) {
        Ok(())
    } else {
        Err(Error::condition(&condition.to_string(), "flag is false for this problem"))
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(field, "must be positive and finite"))
    }
}

fn check_le(bound: &str, value: f64, limit: f64) -> Result<()> {
    if value <= limit * (1.0 + BOUND_SLACK) {
        Ok(())
    } else {
        Err(Error::step_bound(bound, value, limit))
    }
}

fn check_lt(bound: &str, value: f64, limit: f64) -> Result<()> {
    if value < limit {
        Ok(())
    } else {
        Err(Error::step_bound(bound, value, limit))
    }
}

/// `τσ‖A‖²`.
fn coupling_product(steps: &StepSizes, norm_a: f64) -> f64 {
    steps.tau * steps.sigma * norm_a * norm_a
}

/// Strict positivity of `Φ_{τ,σ}` plus the `(1 + ε)` slack bound.
fn check_phi_steps(steps: &StepSizes, norm_a: f64) -> Result<()> {
    positive("tau", steps.tau)?;
    positive("sigma", steps.sigma)?;
    if !(steps.epsilon >= 0.0) {
        return Err(Error::validation("epsilon", "must be nonnegative"));
    }
    let p = coupling_product(steps, norm_a);
    check_lt("tau*sigma*|A|^2 < 1", p, 1.0)?;
    let slack = (1.0 + steps.epsilon).powi(2);
    check_le("tau*sigma*|A|^2*(1+eps)^2 <= 1", p * slack, 1.0)
}

fn certificate(
    algorithm: AlgorithmId,
    condition: Condition,
    steps: &StepSizes,
    rho: f64,
    norm: PrecondKind,
    constants: &[(&str, f64)],
    theorem: &str,
) -> RateCertificate {
    let mut map: BTreeMap<String, f64> = constants.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    if let Some(g) = steps.grid_resolution {
        map.insert("grid_resolution".into(), g as f64);
    }
    RateCertificate {
        algorithm,
        condition,
        steps: steps.clone(),
        rho,
        norm,
        constants: map,
        theorem: theorem.to_string(),
        notes: Vec::new(),
    }
}

fn contraction(rho: f64) -> Result<f64> {
    if rho < 1.0 && rho >= 0.0 {
        Ok(rho)
    } else {
        Err(Error::step_bound("certified rate must be below 1", rho, 1.0))
    }
}

/// Resolvent rate `Lζ/√((Lζ)² + 1)` for an operator that is `1/L`-inverse Lipschitz.
fn resolvent_rate(l: f64, z: f64) -> f64 {
    let lz = l * z;
    lz / (lz * lz + 1.0).sqrt()
}

/// Strong-monotonicity constant of the proximal primal-dual method.
///
/// Evaluated as `2ab / (a + b + √((a − b)² + 4abτσ‖A‖²))` with `a = μf τ`, `b = μg σ`,
/// which equals the difference form divided by `2(1 − τσ‖A‖²)` without its cancellation.
pub fn kappa(mu_f: f64, mu_g: f64, tau: f64, sigma: f64, norm_a: f64) -> Result<f64> {
    positive("mu_f", mu_f)?;
    positive("mu_g", mu_g)?;
    positive("tau", tau)?;
    positive("sigma", sigma)?;
    let p = tau * sigma * norm_a * norm_a;
    check_lt("tau*sigma*|A|^2 < 1", p, 1.0)?;
    let (a, b) = (mu_f * tau, mu_g * sigma);
    Ok(2.0 * a * b / (a + b + ((a - b).powi(2) + 4.0 * a * b * p).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct R2 {
    pub r2: f64,
    pub alpha_free: f64,
}

fn min_eig_2x2(a: f64, b: f64, c: f64) -> f64 {
    0.5 * (a + c) - (0.25 * (a - c).powi(2) + b * b).sqrt()
}

/// Upper end of the admissible free parameter for the dual-smooth constant.
pub fn r2_alpha_max(profile: &ConditionProfile) -> f64 {
    let (mu_a, mu_g, mu_f, l_g, na) = (profile.mu_a, profile.mu_g, profile.mu_f, profile.l_g, profile.norm_a);
    let denom = l_g * l_g * na * na;
    if denom == 0.0 {
        return f64::INFINITY;
    }
    (2.0 * mu_a * mu_g + 2.0 * (mu_a * mu_a * mu_g * mu_g + l_g * l_g * na * na * mu_g * mu_f).sqrt()) / denom
}

/// `(1 + α‖A‖)/λmin(Mα)` with `Mα = [[μf + αμA, −αLg‖A‖/2], [−αLg‖A‖/2, μg]]`; `+inf` if `Mα` is not PD.
pub fn r2_objective(profile: &ConditionProfile, alpha: f64) -> f64 {
    let off = -alpha * profile.l_g * profile.norm_a / 2.0;
    let lam = min_eig_2x2(profile.mu_f + alpha * profile.mu_a, off, profile.mu_g);
    if lam > 0.0 {
        (1.0 + alpha * profile.norm_a) / lam
    } else {
        f64::INFINITY
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Inverse-Lipschitz constant of the saddle operator when `g` is strongly convex and smooth
/// and `A` has full column rank; minimized over the free parameter.
pub fn constant_r2(profile: &ConditionProfile) -> Result<R2> {
    require(profile, Condition::C2)?;
    let cap = r2_alpha_max(profile);
    let hi = if cap.is_finite() { 0.999 * cap } else { 1e6 / profile.norm_a.max(1e-300) };
    let lo = hi * 1e-9;
    // Coarse log grid to bracket the minimum, then golden-section refinement.
    let points = 200;
    let grid: Vec<f64> = (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect();
    let best = (0..points)
        .min_by(|&i, &j| r2_objective(profile, grid[i]).total_cmp(&r2_objective(profile, grid[j])))
        .expect("non-empty grid");
    let left = grid[best.saturating_sub(1)];
    let right = grid[(best + 1).min(points - 1)];
    let refined = golden_min(|a| r2_objective(profile, a), left, right, 120);
    let alpha = if r2_objective(profile, refined) <= r2_objective(profile, grid[best]) { refined } else { grid[best] };
    let r2 = r2_objective(profile, alpha);
    if !r2.is_finite() {
        return Err(Error::condition("C2", "no admissible free parameter"));
    }
    Ok(R2 { r2, alpha_free: alpha })
}

/// Which smoothness constant enters the smooth-square inverse-Lipschitz bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    /// `max(L_f, L_g)`, for the full saddle operator.
    Both,
    /// `L_f` only, for the operator without the `∇g` term.
    FOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct R3 {
    pub r3: f64,
    pub eps_free: f64,
    pub delta_free: f64,
}

fn r3_smoothness(profile: &ConditionProfile, smoothness: Smoothness) -> f64 {
    match smoothness {
        Smoothness::Both => profile.l_f.max(profile.l_g),
        Smoothness::FOnly => profile.l_f,
    }
}

/// `(1 + ε‖A‖) / (ε(μA − ‖A‖/(2δ)))`; `+inf` outside the feasible region.
pub fn r3_objective(profile: &ConditionProfile, smoothness: Smoothness, eps: f64, delta: f64) -> f64 {
    let na = profile.norm_a;
    let l = r3_smoothness(profile, smoothness);
    let c = eps * (profile.mu_a - na / (2.0 * delta));
    let eps_ok = l == 0.0 || eps < 2.0 / (l * na * delta);
    if eps > 0.0 && c > 0.0 && eps_ok {
        (1.0 + eps * na) / c
    } else {
        f64::INFINITY
    }
}

/// Inverse-Lipschitz constant in the smooth square regime, minimized over `(ε, δ)`.
pub fn constant_r3(profile: &ConditionProfile, smoothness: Smoothness) -> Result<R3> {
    match smoothness {
        Smoothness::Both => require(profile, Condition::C3)?,
        Smoothness::FOnly => {
            if !(profile.mu_a > 0.0 && profile.l_f.is_finite()) {
                return Err(Error::condition("C3", "needs mu_A > 0 and a smooth f"));
            }
        }
    }
    let na = profile.norm_a;
    let l = r3_smoothness(profile, smoothness);
    let delta_min = na / (2.0 * profile.mu_a);
    // δ = δmin(1 + s); ε is a fraction t of its cap, or free when L = 0.
    let to_point = |log_s: f64, u: f64| -> (f64, f64) {
        let delta = delta_min * (1.0 + 10f64.powf(log_s));
        let eps = if l == 0.0 {
            10f64.powf(u) / na
        } else {
            let t = 1.0 / (1.0 + 10f64.powf(-u));
            let t = t.min(1.0 - 1e-6);
            t * 2.0 / (l * na * delta)
        };
        (eps, delta)
    };
    let objective = |log_s: f64, u: f64| {
        let (e, d) = to_point(log_s, u);
        r3_objective(profile, smoothness, e, d)
    };
    let (s_lo, s_hi) = (-4.0, 6.0);
    let (u_lo, u_hi) = if l == 0.0 { (-4.0, 8.0) } else { (-6.0, 6.0) };
    let g = 64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..g {
        let ls = s_lo + (s_hi - s_lo) * i as f64 / (g - 1) as f64;
        for j in 0..g {
            let u = u_lo + (u_hi - u_lo) * j as f64 / (g - 1) as f64;
            let v = objective(ls, u);
            if v < best.0 {
                best = (v, ls, u);
            }
        }
    }
    // Pattern-search refinement inside the parameter box.
    let (mut fv, mut ls, mut u) = best;
    let mut h = ((s_hi - s_lo) / g as f64).max((u_hi - u_lo) / g as f64);
    while h > 1e-10 {
        let mut improved = false;
        for (ds, du) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let (cs, cu) = ((ls + ds).clamp(s_lo, s_hi), (u + du).clamp(u_lo, u_hi));
            let v = objective(cs, cu);
            if v < fv {
                fv = v;
                ls = cs;
                u = cu;
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    let (eps, delta) = to_point(ls, u);
    let r3 = r3_objective(profile, smoothness, eps, delta);
    if !r3.is_finite() {
        return Err(Error::condition("C3", "no admissible free parameters"));
    }
    Ok(R3 { r3, eps_free: eps, delta_free: delta })
}

/// `μA/ζ + 2μf` as a bare formula.
pub fn gamma_x_formula(mu_a: f64, mu_f: f64, zeta: f64) -> f64 {
    mu_a / zeta + 2.0 * mu_f
}

/// Backward-step gain on the primal block of the semi-implicit splitting.
pub fn gamma_x(profile: &ConditionProfile, steps: &StepSizes) -> Result<f64> {
    positive("tau", steps.tau)?;
    positive("sigma", steps.sigma)?;
    check_lt("tau*sigma*|A|^2 < 1", coupling_product(steps, profile.norm_a), 1.0)?;
    if !(profile.mu_f > 0.0 || profile.mu_a > 0.0) {
        return Err(Error::condition("C1/C2", "needs mu_f > 0 or mu_A > 0"));
    }
    Ok(gamma_x_formula(profile.mu_a, profile.mu_f, zeta(steps.tau, steps.sigma, profile.norm_a)))
}

/// Two-case formula for the forward-step gain on the dual block, given
/// `ξ1 = 1/σ − τ‖A‖²` and `ξ2 = 1/σ − τλmin(AAᵀ)`.
pub fn gamma_y_formula(mu_g: f64, l_g: f64, xi1: f64, xi2: f64) -> f64 {
    let s = l_g + mu_g;
    if xi1 >= s / 2.0 {
        2.0 * l_g * mu_g / s + mu_g * mu_g * (2.0 * xi1 - s) / (s * xi2)
    } else {
        2.0 * l_g * mu_g / s - l_g * l_g * (s - 2.0 * xi1) / (s * xi1)
    }
}

/// Forward-step gain on the dual block of the semi-implicit splitting.
///
/// The upper spectral end of the dual block of `Φ⁻¹` is governed by `λmin(AAᵀ)`,
/// which coincides with `μA` for square `A` and is the safe choice otherwise.
pub fn gamma_y(profile: &ConditionProfile, steps: &StepSizes) -> Result<f64> {
    positive("tau", steps.tau)?;
    positive("sigma", steps.sigma)?;
    if !(profile.mu_g > 0.0) {
        return Err(Error::condition("C1/C2", "needs mu_g > 0"));
    }
    if !profile.l_g.is_finite() {
        return Err(Error::condition("C1/C2", "needs a smooth g"));
    }
    let na2 = profile.norm_a * profile.norm_a;
    let limit = 2.0 / (2.0 * steps.tau * na2 + profile.l_g);
    check_lt("sigma < 2/(2*tau*|A|^2 + L_g)", steps.sigma, limit)?;
    let xi1 = 1.0 / steps.sigma - steps.tau * na2;
    let xi2 = 1.0 / steps.sigma - steps.tau * profile.lambda_min_aat;
    Ok(gamma_y_formula(profile.mu_g, profile.l_g, xi1, xi2))
}

/// Proximal primal-dual method (`θ = 1`).
pub fn rate_cp(profile: &ConditionProfile, steps: &StepSizes, condition: Condition) -> Result<RateCertificate> {
    require(profile, condition)?;
    check_phi_steps(steps, profile.norm_a)?;
    let z = zeta(steps.tau, steps.sigma, profile.norm_a);
    let norm = PrecondKind::PhiTauSigma { tau: steps.tau, sigma: steps.sigma };
    let alg = AlgorithmId::CP;
    match condition {
        Condition::C1 => {
            let k = kappa(profile.mu_f, profile.mu_g, steps.tau, steps.sigma, profile.norm_a)?;
            let m = (profile.mu_f * steps.tau).min(profile.mu_g * steps.sigma).min(k);
            let rho = contraction(1.0 / (1.0 + m))?;
            Ok(certificate(alg, condition, steps, rho, norm, &[("kappa", k), ("zeta", z)], "chambolle_pock.c1"))
        }
        Condition::C2 => {
            let r = constant_r2(profile)?;
            let rho = contraction(resolvent_rate(r.r2, z))?;
            let consts = [("R2", r.r2), ("alpha_free", r.alpha_free), ("zeta", z)];
            Ok(certificate(alg, condition, steps, rho, norm, &consts, "chambolle_pock.c2"))
        }
        Condition::C3 => {
            let r = constant_r3(profile, Smoothness::Both)?;
            let rho = contraction(resolvent_rate(r.r3, z))?;
            let consts = [("R3", r.r3), ("eps_free", r.eps_free), ("delta_free", r.delta_free), ("zeta", z)];
            Ok(certificate(alg, condition, steps, rho, norm, &consts, "chambolle_pock.c3"))
        }
    }
}

/// Semi-implicit method (`θ = 1`).
///
/// Under C1/C2 two candidate rates are computed, from `min{γx², γy²}` and from
/// `min{γx, γy}`; the larger one is certified and both are recorded.
pub fn rate_semi_implicit(profile: &ConditionProfile, steps: &StepSizes, condition: Condition) -> Result<RateCertificate> {
    require(profile, condition)?;
    positive("tau", steps.tau)?;
    positive("sigma", steps.sigma)?;
    if !profile.l_g.is_finite() {
        return Err(Error::condition(&condition.to_string(), "the semi-implicit method needs a smooth g"));
    }
    let na = profile.norm_a;
    let p = coupling_product(steps, na);
    let forward = p + profile.l_g * steps.sigma / 2.0;
    let z = zeta(steps.tau, steps.sigma, na);
    let alg = AlgorithmId::SEMI;
    match condition {
        Condition::C1 | Condition::C2 => {
            check_lt("tau*sigma*|A|^2 + L_g*sigma/2 < 1", forward, 1.0)?;
            let gx = gamma_x(profile, steps)?;
            let gy = gamma_y(profile, steps)?;
            let rho_stmt = (1.0 - gx.min(gy).powi(2) / (z + gx)).max(0.0).sqrt();
            let rho_proof = (1.0 - gx.min(gy) / (z + gx)).sqrt();
            let rho = contraction(rho_stmt.max(rho_proof))?;
            let norm = PrecondKind::PhiPlusPsi { tau: steps.tau, sigma: steps.sigma, gamma_x: gx, gamma_y: 0.0 };
            let consts = [
                ("gamma_x", gx),
                ("gamma_y", gy),
                ("zeta", z),
                ("rho_statement", rho_stmt),
                ("rho_proof", rho_proof),
            ];
            let mut cert = certificate(alg, condition, steps, rho, norm, &consts, "semi_implicit.c1_c2");
            cert.notes.push("rate is the larger of the squared-gain and linear-gain candidates".into());
            Ok(cert)
        }
        Condition::C3 => {
            check_le("tau*sigma*|A|^2 + L_g*sigma/2 <= 1", forward, 1.0)?;
            check_phi_steps(steps, na)?;
            let r = constant_r3(profile, Smoothness::FOnly)?;
            let rho = contraction(resolvent_rate(r.r3, z))?;
            let norm = PrecondKind::PhiTauSigma { tau: steps.tau, sigma: steps.sigma };
            let consts = [("R3_prime", r.r3), ("eps_free", r.eps_free), ("delta_free", r.delta_free), ("zeta", z)];
            Ok(certificate(alg, condition, steps, rho, norm, &consts, "semi_implicit.c3"))
        }
    }
}

fn beta_one(tau: f64, mu: f64, lip: f64, coupling: f64) -> f64 {
    if lip == 0.0 || mu == 0.0 {
        return 0.0;
    }
    let d = 1.0 - tau * coupling;
    let b = if tau <= 2.0 / (lip + mu + 2.0 * coupling) {
        2.0 * mu - tau * mu * mu / d
    } else {
        2.0 * lip - tau * lip * lip / d
    };
    b.max(0.0)
}

/// Forward-step gains `(βx, βy)` of the explicit method for balancing parameter `ν`.
pub fn beta_xy(profile: &ConditionProfile, steps: &StepSizes, nu: f64) -> Result<(f64, f64)> {
    positive("tau", steps.tau)?;
    positive("sigma", steps.sigma)?;
    positive("nu", nu)?;
    if !(profile.l_f.is_finite() && profile.l_g.is_finite()) {
        return Err(Error::condition("smoothness", "the explicit method needs smooth f and g"));
    }
    let na = profile.norm_a;
    check_le("tau <= 2/(L_f + 2|A|nu)", steps.tau, 2.0 / (profile.l_f + 2.0 * na * nu))?;
    check_le("sigma <= 2/(L_g + 2|A|/nu)", steps.sigma, 2.0 / (profile.l_g + 2.0 * na / nu))?;
    Ok((
        beta_one(steps.tau, profile.mu_f, profile.l_f, na * nu),
        beta_one(steps.sigma, profile.mu_g, profile.l_g, na / nu),
    ))
}

/// Explicit primal-dual gradient method (`θ = 1`).
///
/// Under C1 the gain `min{βxτ/(1+τ‖A‖ν), βyσ/(1+σ‖A‖/ν)}` bounds the decrease of
/// squared norms, so the certified factor is its square-root complement.
pub fn rate_explicit_pdg(profile: &ConditionProfile, steps: &StepSizes, condition: Condition) -> Result<RateCertificate> {
    require(profile, condition)?;
    let nu = steps.nu;
    let (bx, by) = beta_xy(profile, steps, nu)?;
    let na = profile.norm_a;
    let z = zeta(steps.tau, steps.sigma, na);
    let alg = AlgorithmId::EXPLICIT;
    let phi = PrecondKind::PhiTauSigma { tau: steps.tau, sigma: steps.sigma };
    match condition {
        Condition::C1 => {
            let qx = bx * steps.tau / (1.0 + steps.tau * na * nu);
            let qy = by * steps.sigma / (1.0 + steps.sigma * na / nu);
            let squared = 1.0 - qx.min(qy);
            let rho = contraction(squared.max(0.0).sqrt())?;
            let consts = [("beta_x", bx), ("beta_y", by), ("nu", nu), ("zeta", z), ("rho_squared", squared)];
            Ok(certificate(alg, condition, steps, rho, phi, &consts, "explicit_pdg.c1"))
        }
        Condition::C2 => {
            check_lt("tau*sigma*|A|^2 < 1", coupling_product(steps, na), 1.0)?;
            let mu_a = profile.mu_a;
            let shift = mu_a / z;
            let printed = (1.0 - mu_a.min(z * by) / (z * z + mu_a * z)).sqrt();
            // ‖Φ + Ψb‖ ≤ ζ + μA/ζ, which exceeds ζ + μA only when ζ < 1.
            let gain = shift.min(by) / (z + mu_a.max(shift));
            let rho = contraction((1.0 - gain).sqrt())?;
            let norm = PrecondKind::PhiPlusPsi { tau: steps.tau, sigma: steps.sigma, gamma_x: shift, gamma_y: 0.0 };
            let consts = [("beta_x", bx), ("beta_y", by), ("nu", nu), ("zeta", z), ("rho_printed", printed)];
            Ok(certificate(alg, condition, steps, rho, norm, &consts, "explicit_pdg.c2"))
        }
        Condition::C3 => {
            check_phi_steps(steps, na)?;
            let rho = contraction(z / (profile.mu_a + z * z).sqrt())?;
            let consts = [("beta_x", bx), ("beta_y", by), ("nu", nu), ("zeta", z)];
            Ok(certificate(alg, condition, steps, rho, phi, &consts, "explicit_pdg.c3"))
        }
    }
}

/// Constants of the `Φη` geometry used by the gradient descent-ascent methods.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiEtaConstants {
    pub eta: f64,
    pub m_eta_lambda_min: f64,
    pub c_m: f64,
    pub mu_eta: f64,
    pub l_eta: f64,
    pub phi_lambda_min: f64,
    pub phi_lambda_max: f64,
}

/// Upper limit on `η` for which the monotonicity matrix stays positive definite.
pub fn c_m(profile: &ConditionProfile) -> f64 {
    let na = profile.norm_a;
    let ls = profile.l_f + profile.l_g;
    profile.mu_g * profile.mu_a / (profile.mu_a * na * na + 0.25 * ls * ls * na * na)
}

pub fn phi_eta_constants(profile: &ConditionProfile, eta: f64) -> Result<PhiEtaConstants> {
    require(profile, Condition::C2)?;
    if !profile.l_f.is_finite() {
        return Err(Error::condition("C2", "needs a smooth f"));
    }
    positive("eta", eta)?;
    let na = profile.norm_a;
    let cm = c_m(profile);
    let limit = (1.0 / na).min(cm);
    check_lt("eta < min(1/|A|, C_M)", eta, limit)?;
    let off = -0.5 * eta * (profile.l_f + profile.l_g) * na;
    let m_min = min_eig_2x2(eta * profile.mu_a, off, profile.mu_g - eta * na * na);
    if !(m_min > 0.0) {
        return Err(Error::step_bound("eta < C_M (monotonicity matrix indefinite)", eta, cm));
    }
    let (lo, hi) = (1.0 - eta * na, 1.0 + eta * na);
    let l = profile.l_f.max(profile.l_g);
    Ok(PhiEtaConstants {
        eta,
        m_eta_lambda_min: m_min,
        c_m: cm,
        mu_eta: m_min / hi,
        l_eta: (hi / lo).sqrt() * (l * l + na * na).sqrt(),
        phi_lambda_min: lo,
        phi_lambda_max: hi,
    })
}

/// Rates of plain gradient descent-ascent (in the `Φη` norm) and of its
/// `Φη`-preconditioned variant (in the unweighted norm).
pub fn rate_appendix_gda(profile: &ConditionProfile, steps: &StepSizes, preconditioned: bool) -> Result<RateCertificate> {
    let k = phi_eta_constants(profile, steps.eta)?;
    positive("alpha", steps.alpha)?;
    let alpha = steps.alpha;
    let na = profile.norm_a;
    let l = profile.l_f.max(profile.l_g);
    let consts = [
        ("eta", k.eta),
        ("mu_eta", k.mu_eta),
        ("L_eta", k.l_eta),
        ("M_eta_lambda_min", k.m_eta_lambda_min),
        ("C_M", k.c_m),
    ];
    if preconditioned {
        let lip2 = k.phi_lambda_max.powi(2) * (l * l + na * na);
        check_lt("alpha < 2*lambda_min(M_eta)/((L^2+|A|^2)*lambda_max(Phi_eta)^2)", alpha, 2.0 * k.m_eta_lambda_min / lip2)?;
        let rho = contraction((1.0 - 2.0 * alpha * k.m_eta_lambda_min + alpha * alpha * lip2).sqrt())?;
        Ok(certificate(AlgorithmId::PrecondGda, Condition::C2, steps, rho, PrecondKind::Identity, &consts, "precond_gda.c2"))
    } else {
        check_lt("alpha < 2*mu_eta/L_eta^2", alpha, 2.0 * k.mu_eta / (k.l_eta * k.l_eta))?;
        let rho = contraction((1.0 - 2.0 * alpha * k.mu_eta + alpha * alpha * k.l_eta * k.l_eta).sqrt())?;
        let norm = PrecondKind::PhiEta { eta: k.eta };
        Ok(certificate(AlgorithmId::PlainPdg, Condition::C2, steps, rho, norm, &consts, "plain_pdg.c2"))
    }
}

/// Certificate for any supported `(algorithm, condition)` pair.
pub fn certify(
    profile: &ConditionProfile,
    algorithm: &AlgorithmId,
    steps: &StepSizes,
    condition: Condition,
) -> Result<RateCertificate> {
    if let Some(theta) = algorithm.theta() {
        if theta != 1.0 {
            return Err(Error::validation("theta", "rates are certified only for theta = 1"));
        }
    }
    match algorithm {
        AlgorithmId::ChambollePock { .. } => rate_cp(profile, steps, condition),
        AlgorithmId::SemiImplicit { .. } => rate_semi_implicit(profile, steps, condition),
        AlgorithmId::ExplicitPdg { .. } => rate_explicit_pdg(profile, steps, condition),
        AlgorithmId::PlainPdg | AlgorithmId::PrecondGda => {
            if condition != Condition::C2 {
                return Err(Error::condition(&condition.to_string(), "gradient descent-ascent rates need C2"));
            }
            rate_appendix_gda(profile, steps, matches!(algorithm, AlgorithmId::PrecondGda))
        }
    }
}

/// Balancing parameter that equalizes the explicit method's two step bounds.
pub fn nu_bar(profile: &ConditionProfile) -> f64 {
    let na = profile.norm_a;
    if na == 0.0 {
        return 1.0;
    }
    let (lf, lg) = (profile.l_f, profile.l_g);
    (lg - lf + ((lf - lg).powi(2) + 16.0 * na * na).sqrt()) / (4.0 * na)
}

/// Points per axis of the step-size grid searches.
pub const STEP_GRID: usize = 48;

/// Step sizes that optimize the certified rate of `algorithm` under `condition`.
///
/// Closed forms are used where available; otherwise a `STEP_GRID × STEP_GRID`
/// search maximizes the rate margin. With `A = 0` the primal-dual couplings impose
/// no limit and the steps of `fallback` are returned.
pub fn optimal_stepsizes(
    algorithm: &AlgorithmId,
    condition: Condition,
    profile: &ConditionProfile,
    epsilon: f64,
    fallback: &StepSizes,
) -> Result<StepSizes> {
    require(profile, condition)?;
    positive("epsilon", epsilon)?;
    let na = profile.norm_a;
    let base = StepSizes { epsilon, grid_resolution: None, ..fallback.clone() };
    let scaled = |t: f64| 1.0 / ((1.0 + epsilon) * na) * t;
    match (algorithm, condition) {
        (AlgorithmId::ChambollePock { .. }, Condition::C1) => {
            if na == 0.0 {
                return Ok(base);
            }
            let r = (profile.mu_g / profile.mu_f).sqrt();
            Ok(StepSizes { tau: scaled(r), sigma: scaled(1.0 / r), ..base })
        }
        (AlgorithmId::ChambollePock { .. }, _) => Ok(StepSizes { tau: scaled(1.0), sigma: scaled(1.0), ..base }),
        (AlgorithmId::SemiImplicit { .. }, Condition::C3) => {
            let lg = profile.l_g;
            let t = ((lg * lg + 16.0 * na * na).sqrt() - lg) / (4.0 * na * na);
            let t = t.min(scaled(1.0));
            Ok(StepSizes { tau: t, sigma: t, ..base })
        }
        (AlgorithmId::SemiImplicit { .. }, _) => search_semi(profile, condition, &base),
        (AlgorithmId::ExplicitPdg { .. }, Condition::C3) => {
            let nu = nu_bar(profile);
            let t = scaled(1.0).min(2.0 / (profile.l_f + 2.0 * na * nu));
            Ok(StepSizes { tau: t, sigma: t, nu, ..base })
        }
        (AlgorithmId::ExplicitPdg { .. }, _) => search_explicit(profile, condition, &base),
        (AlgorithmId::PlainPdg | AlgorithmId::PrecondGda, Condition::C2) => {
            if !profile.l_f.is_finite() {
                return Err(Error::condition("C2", "needs a smooth f"));
            }
            let eta = 0.5 * (1.0 / na).min(c_m(profile));
            let k = phi_eta_constants(profile, eta)?;
            let alpha = if matches!(algorithm, AlgorithmId::PlainPdg) {
                k.mu_eta / (k.l_eta * k.l_eta)
            } else {
                let l = profile.l_f.max(profile.l_g);
                k.m_eta_lambda_min / (k.phi_lambda_max.powi(2) * (l * l + na * na))
            };
            Ok(StepSizes { alpha, eta, ..base })
        }
        _ => Err(Error::condition(&condition.to_string(), "gradient descent-ascent rates need C2")),
    }
}

fn interior(i: usize) -> f64 {
    (i + 1) as f64 / (STEP_GRID + 1) as f64
}

fn search_semi(profile: &ConditionProfile, condition: Condition, base: &StepSizes) -> Result<StepSizes> {
    let na2 = profile.norm_a * profile.norm_a;
    let scale = profile.norm_a + profile.l_g + profile.mu_f + profile.mu_g;
    let mut best: Option<(f64, StepSizes)> = None;
    for i in 0..STEP_GRID {
        let tau = 10f64.powf(-3.0 + 6.0 * i as f64 / (STEP_GRID - 1) as f64) / scale;
        let cap = 1.0 / (tau * na2 + profile.l_g / 2.0);
        for j in 0..STEP_GRID {
            let sigma = cap * interior(j);
            let cand = StepSizes { tau, sigma, grid_resolution: Some(STEP_GRID), ..base.clone() };
            if let Ok(c) = rate_semi_implicit(profile, &cand, condition) {
                if best.as_ref().map_or(true, |(r, _)| c.rho < *r) {
                    best = Some((c.rho, cand));
                }
            }
        }
    }
    best.map(|(_, s)| s).ok_or_else(|| Error::condition(&condition.to_string(), "no admissible step sizes found"))
}

fn search_explicit(profile: &ConditionProfile, condition: Condition, base: &StepSizes) -> Result<StepSizes> {
    let na = profile.norm_a;
    let nu0 = nu_bar(profile);
    let mut best: Option<(f64, StepSizes)> = None;
    for k in -3..=3 {
        let nu = nu0 * 2f64.powi(k);
        let tcap = 2.0 / (profile.l_f + 2.0 * na * nu);
        let scap = 2.0 / (profile.l_g + 2.0 * na / nu);
        if !(tcap.is_finite() && scap.is_finite()) {
            continue;
        }
        for i in 0..STEP_GRID {
            for j in 0..STEP_GRID {
                let cand = StepSizes {
                    tau: tcap * interior(i),
                    sigma: scap * interior(j),
                    nu,
                    grid_resolution: Some(STEP_GRID),
                    ..base.clone()
                };
                if let Ok(c) = rate_explicit_pdg(profile, &cand, condition) {
                    if best.as_ref().map_or(true, |(r, _)| c.rho < *r) {
                        best = Some((c.rho, cand));
                    }
                }
            }
        }
    }
    best.map(|(_, s)| s).ok_or_else(|| Error::condition(&condition.to_string(), "no admissible step sizes found"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn profile(mu_f: f64, mu_g: f64, l_f: f64, l_g: f64, mu_a: f64, lam_aat: f64, norm_a: f64) -> ConditionProfile {
        ConditionProfile {
            mu_f,
            mu_g,
            l_f,
            l_g,
            mu_a,
            lambda_min_aat: lam_aat,
            norm_a,
            n: 1,
            m: 1,
            c1: mu_f > 0.0 && mu_g > 0.0,
            c2: mu_g > 0.0 && l_g.is_finite() && mu_a > 0.0,
            c3: l_f.is_finite() && l_g.is_finite() && mu_a > 0.0 && lam_aat > 0.0,
            warnings: vec![],
        }
    }

    fn pd(tau: f64, sigma: f64, eps: f64) -> StepSizes {
        StepSizes { epsilon: eps, ..StepSizes::primal_dual(tau, sigma) }
    }

    fn printed_kappa(mu_f: f64, mu_g: f64, tau: f64, sigma: f64, na: f64) -> f64 {
        let num = mu_f * tau + mu_g * sigma
            - ((mu_f * tau - mu_g * sigma).powi(2) + 4.0 * na * na * mu_f * mu_g * tau * tau * sigma * sigma).sqrt();
        num / (2.0 * (1.0 - sigma * tau * na * na))
    }

    #[test]
    fn kappa_hand_value() {
        let k = kappa(1.0, 1.0, 0.5, 0.5, 1.0).unwrap();
        assert!((k - 1.0 / 3.0).abs() < 1e-15);
        for &(mf, mg, t, s, na) in &[(0.3, 2.0, 0.7, 0.4, 1.1), (5.0, 0.1, 0.01, 3.0, 2.0), (1.0, 1.0, 2.0, 3.0, 0.0)] {
            let k = kappa(mf, mg, t, s, na).unwrap();
            assert!((k - printed_kappa(mf, mg, t, s, na)).abs() < 1e-12 * k.max(1.0));
        }
        assert!(kappa(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(kappa(0.0, 1.0, 0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn kappa_at_optimal_steps() {
        let p = profile(1.0, 4.0, 1.0, 4.0, 0.0, 0.0, 2.0);
        let s = optimal_stepsizes(&AlgorithmId::CP, Condition::C1, &p, 0.1, &StepSizes::default()).unwrap();
        assert!((s.tau - 2.0 / 2.2).abs() < 1e-12 && (s.sigma - 0.5 / 2.2).abs() < 1e-12);
        let k = kappa(1.0, 4.0, s.tau, s.sigma, 2.0).unwrap();
        assert!((k - 2.0 / (2.1 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn cp_examples() {
        let p = profile(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let c = rate_cp(&p, &pd(0.5, 0.5, 0.1), Condition::C1).unwrap();
        assert!((c.rho - 0.75).abs() < 1e-15);
        assert!((c.constant("kappa").unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let zero = profile(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0);
        let c = rate_cp(&zero, &pd(1.0, 1.0, 1e-3), Condition::C1).unwrap();
        assert!((c.rho - 0.5).abs() < 1e-15);
        let bad = rate_cp(&p, &pd(1.0, 1.0, 0.0), Condition::C1).unwrap_err();
        assert_eq!(bad.reason(), "step_bound");
    }

    #[test]
    fn cp_c3_orthogonal_skew() {
        let p = profile(0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0);
        let r = constant_r3(&p, Smoothness::Both).unwrap();
        assert!(r.r3 <= 1.01, "R3 = {}", r.r3);
        let c = rate_cp(&p, &pd(0.5, 0.5, 1.0), Condition::C3).unwrap();
        let z = 3.0;
        assert!((c.rho - r.r3 * z / ((r.r3 * z).powi(2) + 1.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn r2_matches_independent_grid() {
        let p = profile(0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0);
        let r = constant_r2(&p).unwrap();
        // Oracle: fine uniform grid with the explicit 2x2 eigenvalue of [[α, −α/2], [−α/2, 1]].
        let amax = r2_alpha_max(&p);
        let mut best = f64::INFINITY;
        for i in 1..200_000 {
            let a = amax * i as f64 / 200_000.0;
            let lam = 0.5 * (a + 1.0) - (0.25 * (a - 1.0).powi(2) + a * a / 4.0).sqrt();
            if lam > 0.0 {
                best = best.min((1.0 + a) / lam);
            }
        }
        assert!(r.r2 <= best * (1.0 + 1e-6) && r.r2 >= best * (1.0 - 1e-4), "{} vs {}", r.r2, best);
        assert_eq!(r2_objective(&p, r.alpha_free), r.r2);
        assert!(r.alpha_free > 0.0 && r.alpha_free < amax);
    }

    #[test]
    fn r2_nondecreasing_in_lg() {
        let mut prev = 0.0;
        for k in 0..30 {
            let lg = 1.0 + k as f64;
            let p = profile(0.2, 1.0, 1.0, lg, 0.5, 0.5, 2.0);
            let r = constant_r2(&p).unwrap().r2;
            assert!(r >= prev * (1.0 - 1e-9), "L_g = {lg}: {r} < {prev}");
            prev = r;
        }
    }

    #[test]
    fn r3_returns_feasible_interior_point() {
        for &(lf, lg, mu_a, na) in &[(1.0, 2.0, 0.5, 1.5), (0.0, 3.0, 1.0, 1.0), (10.0, 0.1, 0.01, 4.0)] {
            let p = profile(0.0, 0.0, lf, lg, mu_a, mu_a, na);
            for sm in [Smoothness::Both, Smoothness::FOnly] {
                let r = constant_r3(&p, sm).unwrap();
                assert!(r.delta_free > na / (2.0 * mu_a));
                let l = r3_smoothness(&p, sm);
                if l > 0.0 {
                    assert!(r.eps_free < 2.0 / (l * na * r.delta_free));
                }
                assert_eq!(r3_objective(&p, sm, r.eps_free, r.delta_free), r.r3);
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_x_formula(1.0, 0.0, 2.0), 0.5);
        assert_eq!(gamma_x_formula(0.0, 1.0, 3.0), 2.0);
        let zero = profile(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0);
        assert_eq!(gamma_x(&zero, &pd(1.0, 1.0, 0.0)).unwrap(), 2.0);
        assert!((gamma_y(&zero, &pd(1.0, 0.5, 0.0)).unwrap() - 1.5).abs() < 1e-15);
        assert!((gamma_y_formula(1.0, 2.0, 1.25, 1.25) - 0.8).abs() < 1e-15);
        let none = profile(0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0);
        assert_eq!(gamma_x(&none, &pd(0.5, 0.5, 0.0)).unwrap_err().reason(), "condition_not_satisfied");
        assert_eq!(gamma_y(&zero, &pd(1.0, 2.0, 0.0)).unwrap_err().reason(), "step_bound");
    }

    #[test]
    fn gamma_y_reduces_to_gradient_descent() {
        for &(mu, l, s) in &[(1.0, 1.0, 0.5), (0.5, 3.0, 0.2), (0.5, 3.0, 0.6), (2.0, 2.5, 0.7)] {
            let p = profile(1.0, mu, 1.0, l, 0.0, 0.0, 0.0);
            let g = gamma_y(&p, &pd(1.0, s, 0.0)).unwrap();
            let expect = (1.0 - s * mu).powi(2).max((1.0 - s * l).powi(2));
            assert!((1.0 - s * g - expect).abs() < 1e-12, "{} vs {}", 1.0 - s * g, expect);
        }
    }

    #[test]
    fn beta_examples() {
        let p = profile(2.0, 1.0, 2.0, 1.0, 0.0, 0.0, 0.0);
        let (bx, _) = beta_xy(&p, &pd(0.3, 0.5, 0.0), 1.0).unwrap();
        assert!((bx - (4.0 - 0.3 * 4.0)).abs() < 1e-15);
        let (bx, _) = beta_xy(&p, &pd(1.0, 0.5, 0.0), 1.0).unwrap();
        assert_eq!(bx, 0.0);
        let q = profile(0.0, 1.0, 2.0, 1.0, 0.0, 0.0, 0.0);
        assert_eq!(beta_xy(&q, &pd(0.3, 0.5, 0.0), 1.0).unwrap().0, 0.0);
        assert_eq!(beta_xy(&p, &pd(1.1, 0.5, 0.0), 1.0).unwrap_err().reason(), "step_bound");
    }

    #[test]
    fn explicit_c1_zero_coupling_is_gradient_rate() {
        for &(mf, lf, mg, lg, t, s) in &[(1.0, 2.0, 0.5, 1.0, 0.3, 0.9), (0.2, 5.0, 1.0, 1.0, 0.39, 1.5), (1.0, 1.0, 1.0, 3.0, 1.0, 0.1)] {
            let p = profile(mf, mg, lf, lg, 0.0, 0.0, 0.0);
            let c = rate_explicit_pdg(&p, &pd(t, s, 0.0), Condition::C1).unwrap();
            let expect = [1.0 - t * mf, 1.0 - t * lf, 1.0 - s * mg, 1.0 - s * lg]
                .iter()
                .fold(0.0f64, |a, v| a.max(v.abs()));
            assert!((c.rho - expect).abs() < 1e-12, "{} vs {}", c.rho, expect);
        }
    }

    #[test]
    fn explicit_c3_orthogonal() {
        let p = profile(0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0);
        let s = optimal_stepsizes(&AlgorithmId::EXPLICIT, Condition::C3, &p, 1.0, &StepSizes::default()).unwrap();
        assert_eq!(s.nu, 1.0);
        assert!((s.tau - 0.5).abs() < 1e-15 && (s.sigma - 0.5).abs() < 1e-15);
        let c = rate_explicit_pdg(&p, &s, Condition::C3).unwrap();
        assert!((c.rho - 3.0 / 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn optimal_cp_c2() {
        let p = profile(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0);
        let s = optimal_stepsizes(&AlgorithmId::CP, Condition::C2, &p, 0.5, &StepSizes::default()).unwrap();
        assert!((s.tau - 1.0 / 3.0).abs() < 1e-15 && (s.sigma - 1.0 / 3.0).abs() < 1e-15);
        assert!(rate_cp(&p, &s, Condition::C2).unwrap().rho < 1.0);
    }

    #[test]
    fn phi_eta_example() {
        let p = profile(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        assert!((c_m(&p) - 0.5).abs() < 1e-15);
        let k = phi_eta_constants(&p, 0.25).unwrap();
        assert!((k.m_eta_lambda_min - (1.0 - 0.5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((k.l_eta - (1.25f64 / 0.75).sqrt() * 2f64.sqrt()).abs() < 1e-12);
        assert!((k.l_eta - 1.826).abs() < 1e-3);
        assert!((k.mu_eta - 0.1171).abs() < 1e-4);
        assert_eq!(phi_eta_constants(&p, 0.6).unwrap_err().reason(), "step_bound");
    }

    #[test]
    fn gda_rates() {
        let p = profile(0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let k = phi_eta_constants(&p, 0.25).unwrap();
        let c = rate_appendix_gda(&p, &StepSizes::gradient(0.05, 0.25), false).unwrap();
        let expect = (1.0 - 0.1 * k.mu_eta + 0.0025 * k.l_eta * k.l_eta).sqrt();
        assert!((c.rho - expect).abs() < 1e-15 && c.rho < 1.0);
        let vertex = k.mu_eta / (k.l_eta * k.l_eta);
        let c = rate_appendix_gda(&p, &StepSizes::gradient(vertex, 0.25), false).unwrap();
        assert!((c.rho - (1.0 - (k.mu_eta / k.l_eta).powi(2)).sqrt()).abs() < 1e-12);
        let mut prev = 0.0;
        for e in 2..9 {
            let a = 10f64.powi(-e);
            let r = rate_appendix_gda(&p, &StepSizes::gradient(a, 0.25), true).unwrap().rho;
            assert!(r < 1.0 && r > prev);
            prev = r;
        }
    }

    #[test]
    fn semi_implicit_certifies_larger_candidate() {
        let p = profile(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0);
        let c = rate_semi_implicit(&p, &pd(1.0, 0.5, 0.0), Condition::C1).unwrap();
        let (a, b) = (c.constant("rho_statement").unwrap(), c.constant("rho_proof").unwrap());
        assert_eq!(c.rho, a.max(b));
        assert!(c.rho < 1.0);
    }

    #[test]
    fn grid_searches_are_feasible() {
        let p = profile(0.5, 1.0, 2.0, 3.0, 0.4, 0.4, 1.5);
        for alg in [AlgorithmId::SEMI, AlgorithmId::EXPLICIT] {
            for cond in [Condition::C1, Condition::C2] {
                let s = optimal_stepsizes(&alg, cond, &p, 1e-3, &StepSizes::default()).unwrap();
                assert_eq!(s.grid_resolution, Some(STEP_GRID));
                let c = certify(&p, &alg, &s, cond).unwrap();
                assert!(c.rho < 1.0);
                assert_eq!(c.constant("grid_resolution"), Some(STEP_GRID as f64));
            }
        }
    }
}
