//! The preconditioned forward-backward engine, the five algorithm steps and a
//! trajectory runner.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::precond::{self, Preconditioner};
use crate::problem::SaddleProblem;

/// Primal-dual state `ω = (x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Iterate {
    pub x: Vector,
    pub y: Vector,
}

impl Iterate {
    pub fn new(x: Vector, y: Vector) -> Self {
        Iterate { x, y }
    }

    pub fn zeros(problem: &SaddleProblem) -> Self {
        Iterate { x: Vector::zeros(problem.n()), y: Vector::zeros(problem.m()) }
    }

    pub fn from_slices(x: &[f64], y: &[f64]) -> Self {
        Iterate { x: Vector::from_column_slice(x), y: Vector::from_column_slice(y) }
    }

    pub fn stacked(&self) -> Vector {
        linalg::stack(&self.x, &self.y)
    }

    pub fn from_stacked(w: &Vector, n: usize) -> Self {
        let (x, y) = linalg::split(w, n);
        Iterate { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|t| t.is_finite())
    }

    fn check(&self, problem: &SaddleProblem) -> Result<()> {
        if self.x.len() != problem.n() {
            return Err(Error::Dimension { expected: problem.n(), got: self.x.len() });
        }
        if self.y.len() != problem.m() {
            return Err(Error::Dimension { expected: problem.m(), got: self.y.len() });
        }
        Ok(())
    }
}

fn unit_theta() -> f64 {
    1.0
}

/// Algorithm selector. `theta` is the extrapolation weight of the dual update;
/// rates are certified only for `theta = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum AlgorithmId {
    ChambollePock {
        #[serde(default = "unit_theta")]
        theta: f64,
    },
    SemiImplicit {
        #[serde(default = "unit_theta")]
        theta: f64,
    },
    ExplicitPdg {
        #[serde(default = "unit_theta")]
        theta: f64,
    },
    PlainPdg,
    PrecondGda,
}

impl AlgorithmId {
    pub const CP: AlgorithmId = AlgorithmId::ChambollePock { theta: 1.0 };
    pub const SEMI: AlgorithmId = AlgorithmId::SemiImplicit { theta: 1.0 };
    pub const EXPLICIT: AlgorithmId = AlgorithmId::ExplicitPdg { theta: 1.0 };
    pub const ALL: [AlgorithmId; 5] = [
        AlgorithmId::CP,
        AlgorithmId::SEMI,
        AlgorithmId::EXPLICIT,
        AlgorithmId::PlainPdg,
        AlgorithmId::PrecondGda,
    ];

    pub fn theta(&self) -> Option<f64> {
        match *self {
            AlgorithmId::ChambollePock { theta }
            | AlgorithmId::SemiImplicit { theta }
            | AlgorithmId::ExplicitPdg { theta } => Some(theta),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmId::ChambollePock { .. } => "chambolle_pock",
            AlgorithmId::SemiImplicit { .. } => "semi_implicit",
            AlgorithmId::ExplicitPdg { .. } => "explicit_pdg",
            AlgorithmId::PlainPdg => "plain_pdg",
            AlgorithmId::PrecondGda => "precond_gda",
        }
    }

    /// The forward-backward split realised by the first three algorithms.
    pub fn split(&self) -> Option<Split> {
        match self {
            AlgorithmId::ChambollePock { .. } => Some(Split::Cp),
            AlgorithmId::SemiImplicit { .. } => Some(Split::Semi),
            AlgorithmId::ExplicitPdg { .. } => Some(Split::Explicit),
            _ => None,
        }
    }

    /// Whether `problem` offers the oracles this algorithm calls.
    pub fn check_capabilities(&self, problem: &SaddleProblem) -> Result<()> {
        let need_grad = |which: &str, f: &crate::oracle::FunctionOracle| {
            if f.has_grad() {
                Ok(())
            } else {
                Err(Error::Capability { capability: format!("gradient of {which}"), function: f.kind_name().into() })
            }
        };
        match self {
            AlgorithmId::ChambollePock { .. } => Ok(()),
            AlgorithmId::SemiImplicit { .. } => need_grad("g", problem.g()),
            _ => {
                need_grad("f", problem.f())?;
                need_grad("g", problem.g())
            }
        }
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which parts of the saddle operator go into the backward (implicit) step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    /// Backward on all of `F`.
    Cp,
    /// Forward on `∇g`, backward on the rest.
    Semi,
    /// Forward on `(∇f, ∇g)`, backward on the skew coupling.
    Explicit,
}

fn default_unit() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    0.1
}

fn default_epsilon() -> f64 {
    1e-3
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSizes {
    #[serde(default = "default_unit")]
    pub tau: f64,
    #[serde(default = "default_unit")]
    pub sigma: f64,
    /// Single step of the gradient methods.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Coupling weight of the `Φη` geometry.
    #[serde(default)]
    pub eta: f64,
    /// Free balancing parameter of the explicit method's analysis.
    #[serde(default = "default_unit")]
    pub nu: f64,
    /// Slack in `(1 + ε)` step-size bounds.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Points per axis of the grid search that produced these steps, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_resolution: Option<usize>,
}

impl Default for StepSizes {
    fn default() -> Self {
        StepSizes {
            tau: 1.0,
            sigma: 1.0,
            alpha: default_alpha(),
            eta: 0.0,
            nu: 1.0,
            epsilon: default_epsilon(),
            grid_resolution: None,
        }
    }
}

impl StepSizes {
    pub fn primal_dual(tau: f64, sigma: f64) -> Self {
        StepSizes { tau, sigma, ..Default::default() }
    }

    pub fn gradient(alpha: f64, eta: f64) -> Self {
        StepSizes { alpha, eta, ..Default::default() }
    }

    fn check_primal_dual(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::validation("tau", "must be positive and finite"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::validation("sigma", "must be positive and finite"));
        }
        Ok(())
    }

    fn check_gradient(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::validation("alpha", "must be positive and finite"));
        }
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(Error::validation("eta", "must be nonnegative and finite"));
        }
        Ok(())
    }
}

fn extrapolate(x_new: &Vector, x: &Vector, theta: f64) -> Vector {
    x_new * (1.0 + theta) - x * theta
}

fn cp_theta(p: &SaddleProblem, s: &StepSizes, theta: f64, w: &Iterate) -> Result<Iterate> {
    s.check_primal_dual()?;
    w.check(p)?;
    let a = p.a();
    let x = p.f().prox(s.tau, &(&w.x - a.transpose() * &w.y * s.tau))?;
    let xbar = extrapolate(&x, &w.x, theta);
    let y = p.g().prox(s.sigma, &(&w.y + a * xbar * s.sigma))?;
    Ok(Iterate { x, y })
}

fn semi_theta(p: &SaddleProblem, s: &StepSizes, theta: f64, w: &Iterate) -> Result<Iterate> {
    s.check_primal_dual()?;
    w.check(p)?;
    let a = p.a();
    let x = p.f().prox(s.tau, &(&w.x - a.transpose() * &w.y * s.tau))?;
    let xbar = extrapolate(&x, &w.x, theta);
    let y = &w.y - (p.g().grad(&w.y)? - a * xbar) * s.sigma;
    Ok(Iterate { x, y })
}

fn explicit_theta(p: &SaddleProblem, s: &StepSizes, theta: f64, w: &Iterate) -> Result<Iterate> {
    s.check_primal_dual()?;
    w.check(p)?;
    let a = p.a();
    let x = &w.x - (p.f().grad(&w.x)? + a.transpose() * &w.y) * s.tau;
    let xbar = extrapolate(&x, &w.x, theta);
    let y = &w.y - (p.g().grad(&w.y)? - a * xbar) * s.sigma;
    Ok(Iterate { x, y })
}

/// One step of the proximal primal-dual method (Chambolle–Pock, `θ = 1`).
pub fn cp_step(problem: &SaddleProblem, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    cp_theta(problem, steps, 1.0, w)
}

/// Proximal primal step followed by an explicit dual gradient step.
pub fn semi_implicit_step(problem: &SaddleProblem, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    semi_theta(problem, steps, 1.0, w)
}

/// Gradient steps on both blocks with dual extrapolation.
pub fn explicit_pdg_step(problem: &SaddleProblem, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    explicit_theta(problem, steps, 1.0, w)
}

/// Simultaneous gradient descent-ascent with one step size.
pub fn plain_pdg_step(problem: &SaddleProblem, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    steps.check_gradient()?;
    w.check(problem)?;
    let a = problem.a();
    let x = &w.x - (problem.f().grad(&w.x)? + a.transpose() * &w.y) * steps.alpha;
    let y = &w.y - (problem.g().grad(&w.y)? - a * &w.x) * steps.alpha;
    Ok(Iterate { x, y })
}

/// Gradient descent-ascent preconditioned by `Φη`.
pub fn precond_gda_step(problem: &SaddleProblem, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    steps.check_gradient()?;
    w.check(problem)?;
    let a = problem.a();
    let ga = problem.f().grad(&w.x)? + a.transpose() * &w.y;
    let gb = problem.g().grad(&w.y)? - a * &w.x;
    let x = &w.x - (&ga - a.transpose() * &gb * steps.eta) * steps.alpha;
    let y = &w.y - (&gb - a * &ga * steps.eta) * steps.alpha;
    Ok(Iterate { x, y })
}

/// Dispatch on `algorithm`, honouring its `theta`.
pub fn step(problem: &SaddleProblem, algorithm: &AlgorithmId, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    match *algorithm {
        AlgorithmId::ChambollePock { theta } => cp_theta(problem, steps, theta, w),
        AlgorithmId::SemiImplicit { theta } => semi_theta(problem, steps, theta, w),
        AlgorithmId::ExplicitPdg { theta } => explicit_theta(problem, steps, theta, w),
        AlgorithmId::PlainPdg => plain_pdg_step(problem, steps, w),
        AlgorithmId::PrecondGda => precond_gda_step(problem, steps, w),
    }
}

/// Generic forward-backward iteration `(Φ + F_b)(ω⁺) ∋ (Φ − F_f)(ω)` on a materialized `Φ_{τ,σ}`.
#[derive(Clone, Debug)]
pub struct FbEngine<'a> {
    problem: &'a SaddleProblem,
    split: Split,
    phi: Preconditioner,
    /// `Φ + S` with `S = [[0, Aᵀ], [−A, 0]]`; block lower-triangular.
    system: Matrix,
}

impl<'a> FbEngine<'a> {
    pub fn new(problem: &'a SaddleProblem, split: Split, steps: &StepSizes) -> Result<Self> {
        steps.check_primal_dual()?;
        let caps = match split {
            Split::Cp => AlgorithmId::CP,
            Split::Semi => AlgorithmId::SEMI,
            Split::Explicit => AlgorithmId::EXPLICIT,
        };
        caps.check_capabilities(problem)?;
        let phi = precond::make_phi(steps.tau, steps.sigma, problem.a())?;
        let (n, m) = (problem.n(), problem.m());
        let mut system = phi.matrix().clone();
        let a = problem.a();
        {
            let mut upper = system.view_mut((0, n), (n, m));
            upper += a.transpose();
        }
        {
            let mut lower = system.view_mut((n, 0), (m, n));
            lower -= a;
        }
        let coupling = system.view((0, n), (n, m)).amax();
        if coupling > 1e-12 * (1.0 + a.amax()) {
            return Err(Error::validation("split", "backward system is not block lower-triangular"));
        }
        Ok(FbEngine { problem, split, phi, system })
    }

    pub fn phi(&self) -> &Preconditioner {
        &self.phi
    }

    pub fn split(&self) -> Split {
        self.split
    }

    /// `F_f(ω)`: the explicitly evaluated part of the saddle operator.
    pub fn forward_operator(&self, w: &Vector) -> Result<Vector> {
        let p = self.problem;
        let (x, y) = linalg::split(w, p.n());
        Ok(match self.split {
            Split::Cp => Vector::zeros(w.len()),
            Split::Semi => linalg::stack(&Vector::zeros(p.n()), &p.g().grad(&y)?),
            Split::Explicit => linalg::stack(&p.f().grad(&x)?, &p.g().grad(&y)?),
        })
    }

    /// Solve `(Φ + F_b)(u) ∋ r` row block by row block.
    pub fn backward_solve(&self, r: &Vector) -> Result<Vector> {
        let p = self.problem;
        let (n, m) = (p.n(), p.m());
        let (rx, ry) = linalg::split(r, n);
        let kxx = self.system.view((0, 0), (n, n)).into_owned();
        let kyx = self.system.view((n, 0), (m, n)).into_owned();
        let kyy = self.system.view((n, n), (m, m)).into_owned();

        let implicit_f = matches!(self.split, Split::Cp | Split::Semi);
        let implicit_g = matches!(self.split, Split::Cp);
        let x = if implicit_f {
            let d = scalar_diagonal(&kxx)?;
            p.f().prox(1.0 / d, &(rx / d))?
        } else {
            linear_solve(&kxx, &rx)?
        };
        let rhs = ry - kyx * &x;
        let y = if implicit_g {
            let d = scalar_diagonal(&kyy)?;
            p.g().prox(1.0 / d, &(rhs / d))?
        } else {
            linear_solve(&kyy, &rhs)?
        };
        Ok(linalg::stack(&x, &y))
    }

    /// Forward step `ω − Φ⁻¹F_f(ω)`.
    pub fn forward_step(&self, w: &Vector) -> Result<Vector> {
        let ff = self.forward_operator(w)?;
        Ok(w - self.phi.solve(&ff))
    }

    /// Backward step `(Id + Φ⁻¹F_b)⁻¹(v)`.
    pub fn backward_step(&self, v: &Vector) -> Result<Vector> {
        self.backward_solve(&(self.phi.matrix() * v))
    }

    /// Full step: forward image `Φω − F_f(ω)` then the backward solve.
    pub fn step(&self, w: &Vector) -> Result<Vector> {
        let r = self.phi.matrix() * w - self.forward_operator(w)?;
        self.backward_solve(&r)
    }
}

fn scalar_diagonal(block: &Matrix) -> Result<f64> {
    let d = block[(0, 0)];
    let off = (block - Matrix::identity(block.nrows(), block.ncols()) * d).amax();
    if off > 1e-12 * d.abs() {
        return Err(Error::validation("split", "implicit block is not a multiple of the identity"));
    }
    Ok(d)
}

fn linear_solve(block: &Matrix, rhs: &Vector) -> Result<Vector> {
    block
        .clone()
        .lu()
        .solve(rhs)
        .ok_or_else(|| Error::validation("split", "singular diagonal block"))
}

/// One generic forward-backward step for the given split.
pub fn generic_fb_step(problem: &SaddleProblem, split: Split, steps: &StepSizes, w: &Iterate) -> Result<Iterate> {
    w.check(problem)?;
    let engine = FbEngine::new(problem, split, steps)?;
    Ok(Iterate::from_stacked(&engine.step(&w.stacked())?, problem.n()))
}

/// The norm in which a run of `algorithm` measures its fixed-point residual.
pub fn default_norm(problem: &SaddleProblem, algorithm: &AlgorithmId, steps: &StepSizes) -> Result<Preconditioner> {
    match algorithm {
        AlgorithmId::PlainPdg => precond::make_phi_eta(steps.eta, problem.a()),
        AlgorithmId::PrecondGda => Ok(precond::identity(problem.n(), problem.m())),
        _ => precond::make_phi(steps.tau, steps.sigma, problem.a()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    ResidualTol,
    MaxIters,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub iterates: Vec<Iterate>,
    /// `‖ω^k − T(ω^k)‖` in the run's norm, one per iterate.
    pub residuals: Vec<f64>,
    pub stop_reason: StopReason,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_iters: usize,
    pub residual_tol: f64,
    /// Residual norm; `None` selects [`default_norm`].
    pub norm: Option<Preconditioner>,
    /// A run whose residual grows beyond this multiple of the first one is reported as divergent.
    pub blowup_factor: f64,
}

impl RunOptions {
    pub fn new(max_iters: usize, residual_tol: f64) -> Self {
        RunOptions { max_iters, residual_tol, norm: None, blowup_factor: 1e10 }
    }
}

/// Iterate until the fixed-point residual drops below `residual_tol` or `max_iters` steps were taken.
pub fn run(
    problem: &SaddleProblem,
    algorithm: &AlgorithmId,
    steps: &StepSizes,
    w0: &Iterate,
    max_iters: usize,
    residual_tol: f64,
) -> Result<Trajectory> {
    run_with(problem, algorithm, steps, w0, &RunOptions::new(max_iters, residual_tol))
}

pub fn run_with(
    problem: &SaddleProblem,
    algorithm: &AlgorithmId,
    steps: &StepSizes,
    w0: &Iterate,
    opts: &RunOptions,
) -> Result<Trajectory> {
    algorithm.check_capabilities(problem)?;
    w0.check(problem)?;
    let norm = match &opts.norm {
        Some(p) => p.clone(),
        None => default_norm(problem, algorithm, steps)?,
    };
    let mut iterates = vec![w0.clone()];
    let mut residuals = Vec::new();
    let mut current = w0.clone();
    let mut k = 0;
    loop {
        let next = step(problem, algorithm, steps, &current)?;
        if !next.is_finite() {
            return Err(Error::Divergence { iteration: k + 1 });
        }
        let res = norm.norm(&(current.stacked() - next.stacked()));
        residuals.push(res);
        if res <= opts.residual_tol {
            return Ok(Trajectory { iterates, residuals, stop_reason: StopReason::ResidualTol });
        }
        if k == opts.max_iters {
            return Ok(Trajectory { iterates, residuals, stop_reason: StopReason::MaxIters });
        }
        if !res.is_finite() || res > opts.blowup_factor * residuals[0] {
            return Err(Error::Divergence { iteration: k });
        }
        iterates.push(next.clone());
        current = next;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FunctionOracle;

    fn scalar_problem(f: FunctionOracle, g: FunctionOracle, a: f64) -> SaddleProblem {
        SaddleProblem::new(f, g, Matrix::from_element(1, 1, a)).unwrap()
    }

    fn halves() -> SaddleProblem {
        scalar_problem(
            FunctionOracle::scaled_quadratic(1.0, &[0.0]).unwrap(),
            FunctionOracle::scaled_quadratic(1.0, &[0.0]).unwrap(),
            1.0,
        )
    }

    fn zeros(a: f64) -> SaddleProblem {
        scalar_problem(FunctionOracle::zero(1).unwrap(), FunctionOracle::zero(1).unwrap(), a)
    }

    fn close(w: &Iterate, x: f64, y: f64) -> bool {
        (w.x[0] - x).abs() < 1e-14 && (w.y[0] - y).abs() < 1e-14
    }

    #[test]
    fn hand_iterations() {
        let p = halves();
        let s = StepSizes::primal_dual(0.5, 0.5);
        let w = Iterate::from_slices(&[1.0], &[1.0]);
        assert!(close(&cp_step(&p, &s, &w).unwrap(), 1.0 / 3.0, 5.0 / 9.0));
        assert!(close(&semi_implicit_step(&p, &s, &w).unwrap(), 1.0 / 3.0, 1.0 / 3.0));
        assert!(close(&generic_fb_step(&p, Split::Cp, &s, &w).unwrap(), 1.0 / 3.0, 5.0 / 9.0));
        assert!(close(&generic_fb_step(&p, Split::Semi, &s, &w).unwrap(), 1.0 / 3.0, 1.0 / 3.0));

        let z = zeros(1.0);
        let w = Iterate::from_slices(&[1.0], &[0.0]);
        assert!(close(&explicit_pdg_step(&z, &s, &w).unwrap(), 1.0, 0.5));
        assert!(close(&generic_fb_step(&z, Split::Explicit, &s, &w).unwrap(), 1.0, 0.5));
    }

    #[test]
    fn zero_problem_is_identity() {
        let p = zeros(0.0);
        let s = StepSizes::primal_dual(0.7, 1.3);
        let w = Iterate::from_slices(&[0.4], &[-2.0]);
        for alg in [AlgorithmId::CP, AlgorithmId::SEMI, AlgorithmId::EXPLICIT] {
            assert_eq!(step(&p, &alg, &s, &w).unwrap(), w);
        }
    }

    #[test]
    fn plain_pdg_rotation_scaling() {
        let p = zeros(1.0);
        let alpha = 0.3;
        let s = StepSizes::gradient(alpha, 0.0);
        let w = Iterate::from_slices(&[0.6], &[-0.8]);
        let next = plain_pdg_step(&p, &s, &w).unwrap();
        let ratio = next.stacked().norm() / w.stacked().norm();
        assert!((ratio - (1.0 + alpha * alpha).sqrt()).abs() < 1e-14);
        assert_eq!(precond_gda_step(&p, &s, &w).unwrap(), next);
    }

    #[test]
    fn decoupled_gradient_steps() {
        let p = scalar_problem(
            FunctionOracle::scaled_quadratic(2.0, &[0.0]).unwrap(),
            FunctionOracle::scaled_quadratic(1.0, &[0.0]).unwrap(),
            0.0,
        );
        let s = StepSizes::gradient(0.25, 0.5);
        let w = Iterate::from_slices(&[1.0], &[1.0]);
        let a = plain_pdg_step(&p, &s, &w).unwrap();
        let b = precond_gda_step(&p, &s, &w).unwrap();
        assert!(close(&a, 0.5, 0.75) && close(&b, 0.5, 0.75));
    }

    #[test]
    fn capability_errors() {
        let g = crate::oracle::make_oracle(crate::oracle::OracleCatalogEntry::IndicatorNonneg { dim: 1 }).unwrap();
        let p = scalar_problem(FunctionOracle::zero(1).unwrap(), g, 1.0);
        let s = StepSizes::primal_dual(0.5, 0.5);
        let w = Iterate::from_slices(&[1.0], &[1.0]);
        assert!(matches!(semi_implicit_step(&p, &s, &w), Err(Error::Capability { .. })));
        assert!(cp_step(&p, &s, &w).is_ok());
    }

    #[test]
    fn run_from_solution_stops_immediately() {
        let p = halves();
        let s = StepSizes::primal_dual(0.5, 0.5);
        let t = run(&p, &AlgorithmId::CP, &s, &Iterate::zeros(&p), 100, 1e-12).unwrap();
        assert_eq!(t.iterates.len(), 1);
        assert_eq!(t.residuals.len(), 1);
        assert_eq!(t.stop_reason, StopReason::ResidualTol);
    }

    #[test]
    fn plain_pdg_diverges_on_bilinear() {
        let p = zeros(1.0);
        let s = StepSizes::gradient(0.5, 0.0);
        let w = Iterate::from_slices(&[1.0], &[0.0]);
        let r = run(&p, &AlgorithmId::PlainPdg, &s, &w, 100_000, 1e-12);
        assert!(matches!(r, Err(Error::Divergence { .. })));
    }

    #[test]
    fn algorithm_json() {
        let text = serde_json::to_string(&AlgorithmId::CP).unwrap();
        assert_eq!(text, r#"{"name":"chambolle_pock","theta":1.0}"#);
        let back: AlgorithmId = serde_json::from_str(r#"{"name":"explicit_pdg"}"#).unwrap();
        assert_eq!(back, AlgorithmId::EXPLICIT);
    }
}
