//! Empirical verification: contraction in weighted norms, inverse-Lipschitz
//! moduli, the two partial-contractivity hypotheses, Q-linear envelopes and a
//! reference solver for quadratic instances.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::precond::{self, Preconditioner, PsiShift};
use crate::problem::{build_condition_profile, SaddleProblem, DEFAULT_RANK_TOL};
use crate::rates::{self, Smoothness};
use crate::sampling::{self, par_trials};
use crate::splitting::{self, AlgorithmId, FbEngine, Iterate, Split, StepSizes, Trajectory};

/// Relative tolerance on sampled contraction ratios.
pub const CONTRACTION_RTOL: f64 = 1e-9;
/// Tolerance on the exact operator norm of an affine step.
pub const EXACT_TOL: f64 = 1e-10;
/// Absolute tolerance for positive-semidefiniteness checks.
pub const PSD_ATOL: f64 = 1e-10;
/// Required fixed-point residual of a reference solution.
pub const REFERENCE_RESIDUAL: f64 = 1e-11;

type Pair = (Vec<f64>, Vec<f64>);

/// The one-step map of `algorithm` on stacked vectors.
pub fn step_map<'a>(
    problem: &'a SaddleProblem,
    algorithm: &'a AlgorithmId,
    steps: &'a StepSizes,
) -> impl Fn(&Vector) -> Result<Vector> + Sync + 'a {
    move |w: &Vector| {
        let it = Iterate::from_stacked(w, problem.n());
        Ok(splitting::step(problem, algorithm, steps, &it)?.stacked())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractionReport {
    pub pairs_tested: usize,
    pub max_ratio: f64,
    pub certified_rho: f64,
    pub pass: bool,
    pub worst_pair: Option<Pair>,
    pub seed: u64,
}

/// Finite-difference Jacobian of `map` at `w`, exact for affine maps.
fn linear_part<F>(map: &F, w: &Vector, h: f64) -> Result<Matrix>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    let d = w.len();
    let base = map(w)?;
    let mut jac = Matrix::zeros(base.len(), d);
    for j in 0..d {
        let mut e = w.clone();
        e[j] += h;
        jac.set_column(j, &((map(&e)? - &base) / h));
    }
    Ok(jac)
}

/// Directions that stress a map in the `norm` geometry: the top right singular
/// vector of its linearization at the origin and the extreme eigenvectors of the norm.
fn adversarial_directions<F>(map: &F, norm: &Preconditioner, scale: f64) -> Result<Vec<Vector>>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    let d = norm.dim();
    let jac = linear_part(map, &Vector::zeros(d), scale.max(1e-6))?;
    let (half, inv_half) = linalg::sqrt_and_inv_sqrt(norm.matrix());
    let scaled = &half * &jac * &inv_half;
    let mut dirs = Vec::new();
    let svd = scaled.svd(false, true);
    if let Some(vt) = svd.v_t {
        let top = (0..svd.singular_values.len())
            .max_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
            .unwrap_or(0);
        if top < vt.nrows() {
            dirs.push(&inv_half * vt.row(top).transpose());
        }
    }
    let (_, vecs) = linalg::sym_eigen(norm.matrix());
    dirs.push(vecs.column(0).into_owned());
    dirs.push(vecs.column(d - 1).into_owned());
    Ok(dirs.into_iter().filter(|v| v.norm() > 0.0).map(|v| v.normalize()).collect())
}

/// Sample pairs and compare `‖T(ω) − T(ω′)‖ / ‖ω − ω′‖` in `norm` with `rho`.
///
/// A quarter of the pairs are axis-aligned and a quarter follow adversarial directions;
/// the rest are uniform in the ball of `radius`.
pub fn check_contraction<F>(
    step: F,
    norm: &Preconditioner,
    rho: f64,
    pairs: usize,
    radius: f64,
    seed: u64,
) -> Result<ContractionReport>
where
    F: Fn(&Vector) -> Result<Vector> + Sync,
{
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::validation("rho", "must lie in [0, 1]"));
    }
    let d = norm.dim();
    let dirs = adversarial_directions(&step, norm, radius * 1e-3)?;
    let results = par_trials(pairs, |i| -> Result<Option<(f64, Vector, Vector)>> {
        let mut rng = sampling::trial_rng(seed, i as u64);
        let w = sampling::in_ball(&mut rng, d, radius);
        let w2 = match i % 4 {
            0 => {
                let mut v = w.clone();
                v[rng.gen_range(0..d)] += radius * rng.gen_range(-1.0..1.0);
                v
            }
            1 if !dirs.is_empty() => {
                let dir = &dirs[rng.gen_range(0..dirs.len())];
                &w + dir * (radius * rng.gen_range(-1.0..1.0))
            }
            _ => sampling::in_ball(&mut rng, d, radius),
        };
        let den = norm.norm(&(&w - &w2));
        if den == 0.0 {
            return Ok(None);
        }
        let num = norm.norm(&(step(&w)? - step(&w2)?));
        Ok(Some((num / den, w, w2)))
    });
    let mut tested = 0;
    let mut worst: Option<(f64, Vector, Vector)> = None;
    for r in results {
        if let Some(t) = r? {
            tested += 1;
            if worst.as_ref().map_or(true, |w| t.0 > w.0) {
                worst = Some(t);
            }
        }
    }
    let max_ratio = worst.as_ref().map_or(0.0, |w| w.0);
    let pass = max_ratio <= rho + CONTRACTION_RTOL * rho.max(1.0);
    Ok(ContractionReport {
        pairs_tested: tested,
        max_ratio,
        certified_rho: rho,
        pass,
        worst_pair: worst.map(|(_, a, b)| (a.iter().copied().collect(), b.iter().copied().collect())),
        seed,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineNormReport {
    pub operator_norm: f64,
    pub certified_rho: f64,
    /// Largest deviation of the map from its extracted affine model at probe points.
    pub affine_defect: f64,
    pub pass: bool,
}

/// Exact weighted operator norm of an affine one-step map.
///
/// The linear part is read off from the images of the unit vectors, so the map
/// must be affine; the defect at random probes confirms it.
pub fn exact_affine_contraction<F>(step: F, norm: &Preconditioner, rho: f64, seed: u64) -> Result<AffineNormReport>
where
    F: Fn(&Vector) -> Result<Vector>,
{
    let d = norm.dim();
    let origin = Vector::zeros(d);
    let offset = step(&origin)?;
    let lin = linear_part(&step, &origin, 1.0)?;
    let mut rng = sampling::trial_rng(seed, 0);
    let mut defect = 0.0f64;
    for _ in 0..4 {
        let w = sampling::in_ball(&mut rng, d, 1.0);
        let model = &lin * &w + &offset;
        let scale = 1.0 + model.norm();
        defect = defect.max((step(&w)? - model).norm() / scale);
    }
    let operator_norm = linalg::weighted_operator_norm(&lin, norm.matrix());
    Ok(AffineNormReport {
        operator_norm,
        certified_rho: rho,
        affine_defect: defect,
        pass: operator_norm <= rho + EXACT_TOL && defect < 1e-9,
    })
}

/// Which operator's inverse-Lipschitz modulus to estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorPart {
    /// `(∂f(x) + Aᵀy, ∂g(y) − Ax)`.
    FullF,
    /// `(∂f(x) + Aᵀy, −Ax)`.
    FbSemi,
    /// `(Aᵀy, −Ax)`.
    FbSkew,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulusReport {
    pub operator: OperatorPart,
    pub samples: usize,
    pub empirical_min_ratio: f64,
    pub certified_inverse_modulus: f64,
    pub pass: bool,
    pub worst_pair: Option<Pair>,
}

/// A point of the graph of `part` obtained from a probe.
fn graph_point(problem: &SaddleProblem, part: OperatorPart, probe: &Vector) -> Result<(Vector, Vector)> {
    let (px, py) = linalg::split(probe, problem.n());
    let a = problem.a();
    let (x, sx) = match part {
        OperatorPart::FbSkew => (px.clone(), Vector::zeros(px.len())),
        _ if problem.f().has_grad() => {
            let g = problem.f().grad(&px)?;
            (px.clone(), g)
        }
        _ => crate::oracle::subgradient_graph_sample(problem.f(), &px, 1.0)?,
    };
    let (y, sy) = match part {
        OperatorPart::FullF if problem.g().has_grad() => {
            let g = problem.g().grad(&py)?;
            (py.clone(), g)
        }
        OperatorPart::FullF => crate::oracle::subgradient_graph_sample(problem.g(), &py, 1.0)?,
        _ => (py.clone(), Vector::zeros(py.len())),
    };
    let value = linalg::stack(&(sx + a.transpose() * &y), &(sy - a * &x));
    Ok((linalg::stack(&x, &y), value))
}

/// The modulus certified for `part`: `1/R2` or `1/R3` (the larger when both hold),
/// `1/R3′`, or `√μA`.
pub fn certified_inverse_modulus(problem: &SaddleProblem, part: OperatorPart) -> Result<f64> {
    let profile = build_condition_profile(problem, DEFAULT_RANK_TOL);
    match part {
        OperatorPart::FullF => {
            let r2 = rates::constant_r2(&profile).map(|r| 1.0 / r.r2);
            let r3 = rates::constant_r3(&profile, Smoothness::Both).map(|r| 1.0 / r.r3);
            match (r2, r3) {
                (Ok(a), Ok(b)) => Ok(a.max(b)),
                (Ok(a), Err(_)) | (Err(_), Ok(a)) => Ok(a),
                (Err(e), Err(_)) => Err(e),
            }
        }
        OperatorPart::FbSemi => Ok(1.0 / rates::constant_r3(&profile, Smoothness::FOnly)?.r3),
        OperatorPart::FbSkew => Ok(profile.mu_a.sqrt()),
    }
}

/// Smallest `‖F(ω) − F(ω′)‖ / ‖ω − ω′‖` over sampled graph pairs.
pub fn estimate_inverse_lipschitz(
    problem: &SaddleProblem,
    part: OperatorPart,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Result<ModulusReport> {
    if part == OperatorPart::FbSemi && !problem.f().has_prox() {
        return Err(Error::Capability { capability: "prox".into(), function: "f".into() });
    }
    let certified = certified_inverse_modulus(problem, part)?;
    let d = problem.dim();
    let results = par_trials(samples, |i| -> Result<Option<(f64, Vector, Vector)>> {
        let mut rng = sampling::trial_rng(seed, i as u64);
        let p1 = sampling::in_ball(&mut rng, d, radius);
        let p2 = if i % 2 == 0 {
            &p1 + sampling::unit_vector(&mut rng, d) * (radius * rng.gen_range(1e-3..1.0))
        } else {
            sampling::in_ball(&mut rng, d, radius)
        };
        let (w1, v1) = graph_point(problem, part, &p1)?;
        let (w2, v2) = graph_point(problem, part, &p2)?;
        let den = (&w1 - &w2).norm();
        if den < 1e-12 * radius {
            return Ok(None);
        }
        Ok(Some(((v1 - v2).norm() / den, w1, w2)))
    });
    let mut tested = 0;
    let mut worst: Option<(f64, Vector, Vector)> = None;
    for r in results {
        if let Some(t) = r? {
            tested += 1;
            if worst.as_ref().map_or(true, |w| t.0 < w.0) {
                worst = Some(t);
            }
        }
    }
    let min_ratio = worst.as_ref().map_or(f64::INFINITY, |w| w.0);
    Ok(ModulusReport {
        operator: part,
        samples: tested,
        empirical_min_ratio: min_ratio,
        certified_inverse_modulus: certified,
        pass: min_ratio >= certified - CONTRACTION_RTOL * certified.max(1.0),
        worst_pair: worst.map(|(_, a, b)| (a.iter().copied().collect(), b.iter().copied().collect())),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub pairs: usize,
    /// Worst `(‖B(ω) − B(ω′)‖²_{Φ+Ψb} − ‖ω − ω′‖²_Φ) / ‖ω − ω′‖²_Φ`.
    pub backward_excess: f64,
    /// Worst `(‖Fw(ω) − Fw(ω′)‖²_Φ − ‖ω − ω′‖²_{Φ−Ψf}) / ‖ω − ω′‖²_Φ`.
    pub forward_excess: f64,
    pub lambda_min_phi_minus_psi_f: f64,
    /// Largest `γ` with `Ψb + Ψf ⪰ γ(Φ + Ψb)`, and the rate `√(1 − γ)` it implies.
    pub gamma: f64,
    pub rho: f64,
    pub pass: bool,
    pub worst_pair: Option<Pair>,
}

/// Check the backward and forward hypotheses of partial contractivity on sampled pairs.
#[allow(clippy::too_many_arguments)]
pub fn check_a1_a2(
    problem: &SaddleProblem,
    split: Split,
    steps: &StepSizes,
    psi_b: &PsiShift,
    psi_f: &PsiShift,
    pairs: usize,
    radius: f64,
    seed: u64,
) -> Result<HypothesisReport> {
    let engine = FbEngine::new(problem, split, steps)?;
    let phi = engine.phi().clone();
    let (n, m) = (problem.n(), problem.m());
    let lower = phi.matrix() - psi_f.matrix(n, m);
    let lam = linalg::extreme_eigenvalues(&lower).0;
    if lam < -PSD_ATOL {
        return Err(Error::NotPositiveDefinite { lambda_min: lam });
    }
    let shifted = phi.with_shift(psi_b)?;
    let d = problem.dim();
    let results = par_trials(pairs, |i| -> Result<Option<(f64, f64, Vector, Vector)>> {
        let mut rng = sampling::trial_rng(seed, i as u64);
        let w1 = sampling::in_ball(&mut rng, d, radius);
        let w2 = sampling::in_ball(&mut rng, d, radius);
        let dw = &w1 - &w2;
        let base = phi.inner(&dw, &dw);
        if base == 0.0 {
            return Ok(None);
        }
        let db = engine.backward_step(&w1)? - engine.backward_step(&w2)?;
        let df = engine.forward_step(&w1)? - engine.forward_step(&w2)?;
        let a1 = (shifted.inner(&db, &db) - base) / base;
        let a2 = (phi.inner(&df, &df) - dw.dot(&(&lower * &dw))) / base;
        Ok(Some((a1, a2, w1, w2)))
    });
    let mut tested = 0;
    let (mut b_ex, mut f_ex) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut worst: Option<(f64, Vector, Vector)> = None;
    for r in results {
        if let Some((a1, a2, w1, w2)) = r? {
            tested += 1;
            b_ex = b_ex.max(a1);
            f_ex = f_ex.max(a2);
            let e = a1.max(a2);
            if worst.as_ref().map_or(true, |w| e > w.0) {
                worst = Some((e, w1, w2));
            }
        }
    }
    let gamma = precond::best_gamma(&phi, psi_b, psi_f);
    Ok(HypothesisReport {
        pairs: tested,
        backward_excess: b_ex,
        forward_excess: f_ex,
        lambda_min_phi_minus_psi_f: lam,
        gamma,
        rho: (1.0 - gamma).sqrt(),
        pass: b_ex <= CONTRACTION_RTOL && f_ex <= CONTRACTION_RTOL,
        worst_pair: worst.map(|(_, a, b)| (a.iter().copied().collect(), b.iter().copied().collect())),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    LinearKkt,
    ActiveSet,
    Iterative,
}

#[derive(Clone, Debug)]
pub struct SaddleSolution {
    pub point: Iterate,
    /// `‖ω⋆ − T(ω⋆)‖_Φ` for the proximal primal-dual step at default steps.
    pub residual: f64,
    pub method: SolveMethod,
}

/// Steps used to measure reference residuals: `τ = σ = 0.9/‖A‖`, or 1 without coupling.
pub fn reference_steps(problem: &SaddleProblem) -> StepSizes {
    let t = if problem.norm_a() > 0.0 { 0.9 / problem.norm_a() } else { 1.0 };
    StepSizes::primal_dual(t, t)
}

fn reference_residual(problem: &SaddleProblem, w: &Iterate) -> Result<f64> {
    let steps = reference_steps(problem);
    let phi = precond::make_phi(steps.tau, steps.sigma, problem.a())?;
    let next = splitting::cp_step(problem, &steps, w)?;
    Ok(phi.norm(&(w.stacked() - next.stacked())))
}

fn kkt_matrix(hf: &Matrix, hg: &Matrix, a: &Matrix) -> Matrix {
    let (m, n) = a.shape();
    let mut k = Matrix::zeros(n + m, n + m);
    k.view_mut((0, 0), (n, n)).copy_from(hf);
    k.view_mut((0, n), (n, m)).copy_from(&a.transpose());
    k.view_mut((n, 0), (m, n)).copy_from(&(-a));
    k.view_mut((n, n), (m, m)).copy_from(hg);
    k
}

fn least_squares(k: &Matrix, rhs: &Vector) -> Option<Vector> {
    k.clone().svd(true, true).solve(rhs, 1e-13 * k.amax().max(1.0)).ok()
}

fn solve_linear_kkt(problem: &SaddleProblem) -> Option<Iterate> {
    let (hf, cf) = problem.f().affine_gradient()?;
    let (hg, cg) = problem.g().affine_gradient()?;
    let k = kkt_matrix(&hf, &hg, problem.a());
    let rhs = -linalg::stack(&cf, &cg);
    let sol = k.clone().lu().solve(&rhs).filter(|s| s.iter().all(|t| t.is_finite()));
    let sol = sol.or_else(|| least_squares(&k, &rhs))?;
    Some(Iterate::from_stacked(&sol, problem.n()))
}

/// Largest primal dimension handled by active-set enumeration.
pub const ACTIVE_SET_MAX_DIM: usize = 12;

fn solve_active_set(problem: &SaddleProblem) -> Option<Iterate> {
    let (scale, linear) = problem.f().orthant_quadratic()?;
    let (hg, cg) = problem.g().affine_gradient()?;
    let (n, m) = (problem.n(), problem.m());
    if n > ACTIVE_SET_MAX_DIM {
        return None;
    }
    let a = problem.a();
    let tol = 1e-12 * (1.0 + a.amax() + linear.amax() + cg.amax());
    for mask in 0u32..(1u32 << n) {
        let free: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = free.len();
        let a_s = Matrix::from_fn(m, k, |r, c| a[(r, free[c])]);
        let hf = Matrix::identity(k, k) * scale;
        let kkt = kkt_matrix(&hf, &hg, &a_s);
        let rhs = -linalg::stack(&Vector::from_fn(k, |i, _| linear[free[i]]), &cg);
        let sol = match kkt.clone().lu().solve(&rhs) {
            Some(s) if s.iter().all(|t| t.is_finite()) => s,
            _ => match least_squares(&kkt, &rhs) {
                Some(s) => s,
                None => continue,
            },
        };
        if (&kkt * &sol - &rhs).amax() > 1e-9 * (1.0 + rhs.amax()) {
            continue;
        }
        let (xs, y) = linalg::split(&sol, k);
        if xs.iter().any(|&v| v < -tol) {
            continue;
        }
        let mut x = Vector::zeros(n);
        for (i, &j) in free.iter().enumerate() {
            x[j] = xs[i].max(0.0);
        }
        let reduced = linear + a.transpose() * &y;
        if (0..n).filter(|i| mask & (1 << i) == 0).any(|i| reduced[i] < -tol) {
            continue;
        }
        return Some(Iterate::new(x, y));
    }
    None
}

/// Reference solution from the linear optimality system or active-set enumeration only.
pub fn solve_reference_direct(problem: &SaddleProblem) -> Option<SaddleSolution> {
    let (w, method) = solve_linear_kkt(problem)
        .map(|w| (w, SolveMethod::LinearKkt))
        .or_else(|| solve_active_set(problem).map(|w| (w, SolveMethod::ActiveSet)))?;
    let residual = reference_residual(problem, &w).ok()?;
    (residual <= REFERENCE_RESIDUAL).then_some(SaddleSolution { point: w, residual, method })
}

/// Iteration budget of the iterative fallback in [`solve_reference`].
pub const REFERENCE_MAX_ITERS: usize = 200_000;

/// A saddle point of `problem`, certified by its fixed-point residual.
///
/// Fully quadratic problems use the linear optimality system; an orthant-constrained
/// quadratic `f` with small `n` uses active-set enumeration; otherwise a long run of
/// the proximal primal-dual method is used.
pub fn solve_reference(problem: &SaddleProblem) -> Result<SaddleSolution> {
    if let Some(sol) = solve_reference_direct(problem) {
        return Ok(sol);
    }
    let steps = reference_steps(problem);
    let traj = splitting::run(problem, &AlgorithmId::CP, &steps, &Iterate::zeros(problem), REFERENCE_MAX_ITERS, 1e-13)?;
    let w = traj.iterates.last().cloned().expect("trajectory holds the start point");
    let residual = reference_residual(problem, &w)?;
    if residual <= REFERENCE_RESIDUAL {
        Ok(SaddleSolution { point: w, residual, method: SolveMethod::Iterative })
    } else {
        Err(Error::Unsolved(format!("fixed-point residual {residual:.3e} after {REFERENCE_MAX_ITERS} iterations")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QLinearReport {
    pub steps_checked: usize,
    pub max_ratio: f64,
    pub rho: f64,
    pub envelope_ok: bool,
    pub first_violation: Option<usize>,
    pub pass: bool,
}

/// Residual floor below which per-step ratios are not inspected.
pub const QLINEAR_FLOOR: f64 = 1e-12;

fn ratio_report(errors: &[f64], rho: f64, floor: f64) -> QLinearReport {
    let mut max_ratio = 0.0f64;
    let mut first = None;
    let mut checked = 0;
    let mut envelope_ok = true;
    let e0 = errors.first().copied().unwrap_or(0.0);
    for k in 0..errors.len().saturating_sub(1) {
        if errors[k] <= floor {
            break;
        }
        checked += 1;
        let r = errors[k + 1] / errors[k];
        max_ratio = max_ratio.max(r);
        if r > rho + CONTRACTION_RTOL && first.is_none() {
            first = Some(k);
        }
        let bound = rho.powi(k as i32 + 1) * e0 * (1.0 + CONTRACTION_RTOL) + floor;
        if errors[k + 1] > bound {
            envelope_ok = false;
        }
    }
    QLinearReport { steps_checked: checked, max_ratio, rho, envelope_ok, first_violation: first, pass: first.is_none() && envelope_ok }
}

/// Per-step ratios `‖ω^{k+1} − ω⋆‖ / ‖ω^k − ω⋆‖` and the envelope `ρ^k‖ω⁰ − ω⋆‖`.
pub fn check_qlinear(trajectory: &Trajectory, solution: &SaddleSolution, rho: f64, norm: &Preconditioner) -> QLinearReport {
    let star = solution.point.stacked();
    let errors: Vec<f64> = trajectory.iterates.iter().map(|w| norm.norm(&(w.stacked() - &star))).collect();
    ratio_report(&errors, rho, QLINEAR_FLOOR)
}

/// The same ratios on the fixed-point residuals `‖ω^k − T(ω^k)‖` recorded by the run.
///
/// A map that contracts in the run's norm contracts its residuals with the same factor,
/// so this needs no reference solution.
pub fn check_residual_qlinear(trajectory: &Trajectory, rho: f64, floor: f64) -> QLinearReport {
    ratio_report(&trajectory.residuals, rho, floor)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub samples: usize,
    pub min_ratio: f64,
    pub mu_eta: f64,
    pub pass: bool,
}

/// Sampled `⟨F(ω) − F(ω′), ω − ω′⟩_Φη / ‖ω − ω′‖²_Φη` against `μη`.
pub fn check_strong_monotonicity_phi_eta(
    problem: &SaddleProblem,
    eta: f64,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Result<MonotonicityReport> {
    let profile = build_condition_profile(problem, DEFAULT_RANK_TOL);
    let k = rates::phi_eta_constants(&profile, eta)?;
    let phi = precond::make_phi_eta(eta, problem.a())?;
    let d = problem.dim();
    let ratios = par_trials(samples, |i| -> Result<Option<f64>> {
        let mut rng = sampling::trial_rng(seed, i as u64);
        let w1 = sampling::in_ball(&mut rng, d, radius);
        let w2 = sampling::in_ball(&mut rng, d, radius);
        let dw = &w1 - &w2;
        let den = phi.inner(&dw, &dw);
        if den == 0.0 {
            return Ok(None);
        }
        let df = problem.operator(&w1)? - problem.operator(&w2)?;
        Ok(Some(phi.inner(&df, &dw) / den))
    });
    let mut tested = 0;
    let mut min_ratio = f64::INFINITY;
    for r in ratios {
        if let Some(v) = r? {
            tested += 1;
            min_ratio = min_ratio.min(v);
        }
    }
    Ok(MonotonicityReport {
        samples: tested,
        min_ratio,
        mu_eta: k.mu_eta,
        pass: min_ratio >= k.mu_eta - CONTRACTION_RTOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FunctionOracle;

    fn scalar(f: FunctionOracle, g: FunctionOracle, a: f64) -> SaddleProblem {
        SaddleProblem::new(f, g, Matrix::from_element(1, 1, a)).unwrap()
    }

    fn quad(scale: f64, center: f64) -> FunctionOracle {
        FunctionOracle::scaled_quadratic(scale, &[center]).unwrap()
    }

    #[test]
    fn contraction_of_trivial_maps() {
        let id = precond::identity(2, 1);
        let r = check_contraction(|w: &Vector| Ok(w.clone()), &id, 1.0, 200, 1.0, 3).unwrap();
        assert!(r.pass && (r.max_ratio - 1.0).abs() < 1e-12);
        let r = check_contraction(|w: &Vector| Ok(w * 0.5), &id, 0.5, 200, 1.0, 3).unwrap();
        assert!(r.pass && (r.max_ratio - 0.5).abs() < 1e-12);
        let r = check_contraction(|w: &Vector| Ok(w * 0.5), &id, 0.4, 200, 1.0, 3).unwrap();
        assert!(!r.pass && r.worst_pair.is_some());
    }

    #[test]
    fn plain_pdg_expands_on_bilinear() {
        let p = scalar(FunctionOracle::zero(1).unwrap(), FunctionOracle::zero(1).unwrap(), 1.0);
        let s = StepSizes::gradient(0.3, 0.0);
        let r = exact_affine_contraction(step_map(&p, &AlgorithmId::PlainPdg, &s), &precond::identity(1, 1), 0.99, 1).unwrap();
        assert!((r.operator_norm - (1.0f64 + 0.09).sqrt()).abs() < 1e-12);
        assert!(!r.pass);
    }

    #[test]
    fn reference_solutions() {
        let p = scalar(quad(1.0, 0.0), quad(1.0, 0.0), 1.0);
        let s = solve_reference(&p).unwrap();
        assert!(s.point.x[0].abs() < 1e-15 && s.point.y[0].abs() < 1e-15);
        let p = scalar(quad(1.0, 1.0), quad(1.0, 0.0), 1.0);
        let s = solve_reference(&p).unwrap();
        assert_eq!(s.method, SolveMethod::LinearKkt);
        assert!((s.point.x[0] - 0.5).abs() < 1e-14 && (s.point.y[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn skew_modulus_of_orthogonal_coupling() {
        let mut rng = sampling::trial_rng(5, 0);
        let q = sampling::orthogonal(&mut rng, 3);
        let p = SaddleProblem::new(FunctionOracle::zero(3).unwrap(), FunctionOracle::zero(3).unwrap(), q).unwrap();
        let r = estimate_inverse_lipschitz(&p, OperatorPart::FbSkew, 300, 1.0, 2).unwrap();
        assert!(r.pass && (r.empirical_min_ratio - 1.0).abs() < 1e-10);
        assert!((r.certified_inverse_modulus - 1.0).abs() < 1e-10);
    }

    #[test]
    fn a1_a2_without_shifts() {
        let p = scalar(quad(1.0, 0.0), quad(1.0, 0.0), 1.0);
        for split in [Split::Cp, Split::Semi, Split::Explicit] {
            let r = check_a1_a2(&p, split, &StepSizes::primal_dual(0.5, 0.5), &PsiShift::zero(), &PsiShift::zero(), 200, 1.0, 4)
                .unwrap();
            assert!(r.pass, "{split:?}: {r:?}");
            assert_eq!(r.gamma, 0.0);
        }
    }

    #[test]
    fn phi_eta_monotonicity_example() {
        let p = scalar(FunctionOracle::zero(1).unwrap().with_declared_constants(0.0, 1.0), quad(1.0, 0.0), 1.0);
        let r = check_strong_monotonicity_phi_eta(&p, 0.25, 500, 1.0, 9).unwrap();
        assert!(r.pass && r.min_ratio > r.mu_eta);
        assert_eq!(check_strong_monotonicity_phi_eta(&p, 0.6, 10, 1.0, 9).unwrap_err().reason(), "step_bound");
    }

    #[test]
    fn qlinear_from_solution() {
        let p = scalar(quad(1.0, 0.0), quad(1.0, 0.0), 1.0);
        let steps = StepSizes::primal_dual(0.5, 0.5);
        let profile = build_condition_profile(&p, DEFAULT_RANK_TOL);
        let cert = rates::rate_cp(&profile, &steps, crate::problem::Condition::C1).unwrap();
        let sol = solve_reference(&p).unwrap();
        let traj = splitting::run(&p, &AlgorithmId::CP, &steps, &Iterate::from_slices(&[1.0], &[-1.0]), 500, 1e-14).unwrap();
        let norm = cert.norm_matrix(&p).unwrap();
        assert!(check_qlinear(&traj, &sol, cert.rho, &norm).pass);
        assert!(check_residual_qlinear(&traj, cert.rho, 1e-13).pass);
        let still = splitting::run(&p, &AlgorithmId::CP, &steps, &sol.point, 5, 1e-14).unwrap();
        assert_eq!(check_qlinear(&still, &sol, cert.rho, &norm).steps_checked, 0);
    }
}
