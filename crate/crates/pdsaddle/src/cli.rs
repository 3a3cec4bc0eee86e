//! Command-line front end: experiment configs, the four commands and their exit codes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::precond::{PrecondKind, PsiShift};
use crate::problem::{self, build_condition_profile, Condition, ConditionProfile, ProblemDocument, RandomConstants, SaddleProblem, DEFAULT_RANK_TOL};
use crate::rates::{self, RateCertificate};
use crate::sampling;
use crate::splitting::{self, AlgorithmId, Iterate, RunOptions, StepSizes, StopReason};
use crate::verify::{self, OperatorPart};

pub const SCHEMA: &str = "1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Divergence { .. } => EXIT_DIVERGED,
        Error::Unsolved(_) => EXIT_VERIFY_FAIL,
        _ => EXIT_INVALID,
    }
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub problem: ProblemSpec,
    #[serde(default = "default_algorithm")]
    pub algorithm: AlgorithmId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<Condition>,
    #[serde(default)]
    pub steps: StepsSpec,
    #[serde(default)]
    pub run: RunSpec,
    #[serde(default)]
    pub verify: VerifySpec,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_algorithm() -> AlgorithmId {
    AlgorithmId::CP
}

/// A problem given inline or by a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemSpec {
    Generator(Generator),
    Inline(ProblemDocument),
}

fn default_seed() -> u64 {
    0
}

fn default_noise() -> f64 {
    0.1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum Generator {
    Random {
        condition: Condition,
        n: usize,
        m: usize,
        constants: RandomConstants,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    /// Synthetic piecewise-constant image plus Gaussian noise.
    HuberRof {
        rows: usize,
        cols: usize,
        lambda: f64,
        alpha: f64,
        #[serde(default = "default_noise")]
        noise: f64,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    /// Quadratic `g` with eigenvalues in `[mu_g, L_g]`, coupling with singular values in `[sing_min, sing_max]`.
    AffineConstrained {
        n: usize,
        m: usize,
        mu_g: f64,
        #[serde(rename = "L_g")]
        l_g: f64,
        sing_min: f64,
        sing_max: f64,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    /// Independent Gaussian features along a trajectory of `T` transitions.
    PolicyEval {
        n: usize,
        #[serde(rename = "T")]
        t: usize,
        gamma: f64,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    Counterexample { which: problem::Counterexample },
}

impl Generator {
    fn with_seed(&self, new_seed: u64) -> Generator {
        let mut g = self.clone();
        match &mut g {
            Generator::Random { seed, .. }
            | Generator::HuberRof { seed, .. }
            | Generator::AffineConstrained { seed, .. }
            | Generator::PolicyEval { seed, .. } => *seed = new_seed,
            Generator::Counterexample { .. } => {}
        }
        g
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Generator::Random { seed, .. }
            | Generator::HuberRof { seed, .. }
            | Generator::AffineConstrained { seed, .. }
            | Generator::PolicyEval { seed, .. } => Some(*seed),
            Generator::Counterexample { .. } => None,
        }
    }

    pub fn build(&self) -> Result<SaddleProblem> {
        match self {
            Generator::Random { condition, n, m, constants, seed } => problem::make_random(*condition, *n, *m, *constants, *seed),
            Generator::HuberRof { rows, cols, lambda, alpha, noise, seed } => {
                let image = synthetic_image(*rows, *cols, *noise, *seed);
                problem::make_huber_rof(&image, *lambda, *alpha, (*rows, *cols))
            }
            Generator::AffineConstrained { n, m, mu_g, l_g, sing_min, sing_max, seed } => {
                affine_instance(*n, *m, *mu_g, *l_g, *sing_min, *sing_max, *seed)
            }
            Generator::PolicyEval { n, t, gamma, seed } => {
                let mut rng = sampling::trial_rng(*seed, 0);
                let features = Matrix::from_fn(t + 1, *n, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
                let rewards: Vec<f64> = (0..*t).map(|_| rng.gen_range(-1.0..1.0)).collect();
                problem::make_policy_eval(&features, &rewards, *gamma)
            }
            Generator::Counterexample { which } => Ok(problem::make_counterexample(*which)),
        }
    }
}

/// A bright square on a dark background with additive Gaussian noise.
pub fn synthetic_image(rows: usize, cols: usize, noise: f64, seed: u64) -> Vec<f64> {
    let mut rng = sampling::trial_rng(seed, 0);
    let mut img = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let inside = 4 * r >= rows && 4 * r < 3 * rows && 4 * c >= cols && 4 * c < 3 * cols;
            let clean = if inside { 1.0 } else { 0.0 };
            img.push(clean + noise * rng.sample::<f64, _>(rand_distr::StandardNormal));
        }
    }
    img
}

fn affine_instance(n: usize, m: usize, mu_g: f64, l_g: f64, s_min: f64, s_max: f64, seed: u64) -> Result<SaddleProblem> {
    // Borrow the random generator for g and A, then replace f by the constraint term.
    let constants = RandomConstants { mu_f: 0.0, mu_g, l_f: 0.0, l_g, sing_min: s_min, sing_max: s_max };
    let base = problem::make_random(Condition::C2, n, m, constants, seed)?;
    let mut rng = sampling::trial_rng(seed, 1);
    let b: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
    problem::make_affine_constrained(base.g().clone(), base.a().clone(), &b)
}

impl ProblemSpec {
    pub fn build(&self) -> Result<SaddleProblem> {
        match self {
            ProblemSpec::Generator(g) => g.build(),
            ProblemSpec::Inline(doc) => SaddleProblem::from_document(doc),
        }
    }
}

fn default_epsilon() -> f64 {
    1e-3
}

/// Step sizes given explicitly or selected to optimize the certified rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StepsSpec {
    Optimal {
        #[serde(default = "default_epsilon")]
        epsilon: f64,
    },
    Explicit(StepSizes),
}

impl Default for StepsSpec {
    fn default() -> Self {
        StepsSpec::Optimal { epsilon: default_epsilon() }
    }
}

/// Initial point: an explicit stacked vector, `"zero"` or `"random(seed)"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StartPoint {
    Vector(Vec<f64>),
    Named(String),
}

impl Default for StartPoint {
    fn default() -> Self {
        StartPoint::Named("zero".into())
    }
}

impl StartPoint {
    pub fn resolve(&self, problem: &SaddleProblem, seed_override: Option<u64>) -> Result<Iterate> {
        match self {
            StartPoint::Vector(v) => {
                if v.len() != problem.dim() {
                    return Err(Error::Dimension { expected: problem.dim(), got: v.len() });
                }
                Ok(Iterate::from_stacked(&Vector::from_column_slice(v), problem.n()))
            }
            StartPoint::Named(s) if s == "zero" => Ok(Iterate::zeros(problem)),
            StartPoint::Named(s) => {
                let seed = s
                    .strip_prefix("random(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::validation("run.w0", "expected a vector, \"zero\" or \"random(<seed>)\""))?;
                let mut rng = sampling::trial_rng(seed_override.unwrap_or(seed), 0);
                Ok(Iterate::from_stacked(&sampling::gaussian_vector(&mut rng, problem.dim()), problem.n()))
            }
        }
    }
}

fn default_max_iters() -> usize {
    10_000
}

fn default_residual_tol() -> f64 {
    1e-10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_residual_tol")]
    pub residual_tol: f64,
    #[serde(default)]
    pub w0: StartPoint,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec { max_iters: default_max_iters(), residual_tol: default_residual_tol(), w0: StartPoint::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Sampled ratios in the certificate norm.
    Contraction,
    /// Exact operator norm of an affine step map.
    Exact,
    /// Backward and forward hypotheses with the certificate's shifts.
    Hypotheses,
    /// Inverse-Lipschitz modulus of the saddle operator.
    Modulus,
    /// Strong monotonicity in the `Φη` geometry.
    Monotonicity,
}

fn default_pairs() -> usize {
    1000
}

fn default_radius() -> f64 {
    1.0
}

fn default_problems() -> usize {
    1
}

fn default_checks() -> Vec<CheckKind> {
    vec![CheckKind::Contraction, CheckKind::Exact]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Number of generated instances, seeded consecutively from the generator's seed.
    #[serde(default = "default_problems")]
    pub problems: usize,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckKind>,
    /// Replace the certified rate, e.g. to confirm that a tightened claim is refuted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_override: Option<f64>,
}

impl Default for VerifySpec {
    fn default() -> Self {
        VerifySpec {
            pairs: default_pairs(),
            radius: default_radius(),
            seed: default_seed(),
            problems: default_problems(),
            checks: default_checks(),
            rho_override: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { path: None, format: None }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::validation("config", e.to_string()))?;
        if cfg.schema != SCHEMA {
            return Err(Error::validation("schema", format!("unsupported schema {:?}", cfg.schema)));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Apply command-line overrides.
    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.verify.seed = seed;
            if let ProblemSpec::Generator(g) = &self.problem {
                self.problem = ProblemSpec::Generator(g.with_seed(seed));
            }
        }
        if let Some(eps) = overrides.eps {
            match &mut self.steps {
                StepsSpec::Optimal { epsilon } => *epsilon = eps,
                StepsSpec::Explicit(s) => s.epsilon = eps,
            }
        }
        if let Some(pairs) = overrides.pairs {
            self.verify.pairs = pairs;
        }
        if let Some(out) = &overrides.out {
            self.output.path = Some(out.clone());
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub eps: Option<f64>,
    pub pairs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Compute the rate certificate.
    Rates,
    /// Run the algorithm and write its trajectory.
    Run,
    /// Execute the verification checks.
    Verify,
    /// Compare all applicable algorithms on an application instance.
    Bench,
}

#[derive(Debug, Parser)]
#[command(name = "pdsaddle", about = "Certified primal-dual saddle-point solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true)]
    pub pairs: Option<usize>,
}

/// Result of a command: exit code and the document to write.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

fn error_outcome(err: &Error) -> Outcome {
    let doc = json!({
        "schema": SCHEMA,
        "status": "error",
        "reason": err.reason(),
        "message": err.to_string(),
    });
    Outcome { code: exit_code(err), body: pretty(&doc) }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Conditions the algorithm's certificates can use, in preference order.
fn candidate_conditions(config: &ExperimentConfig, profile: &ConditionProfile) -> Vec<Condition> {
    if let Some(c) = config.condition {
        return vec![c];
    }
    let all = match config.algorithm {
        AlgorithmId::PlainPdg | AlgorithmId::PrecondGda => vec![Condition::C2],
        _ => vec![Condition::C1, Condition::C2, Condition::C3],
    };
    let holding: Vec<Condition> = all.iter().copied().filter(|c| profile.holds(*c)).collect();
    if holding.is_empty() {
        all
    } else {
        holding
    }
}

fn resolve_steps(config: &ExperimentConfig, profile: &ConditionProfile, condition: Condition) -> Result<StepSizes> {
    match &config.steps {
        StepsSpec::Explicit(s) => Ok(s.clone()),
        StepsSpec::Optimal { epsilon } => {
            rates::optimal_stepsizes(&config.algorithm, condition, profile, *epsilon, &StepSizes::default())
        }
    }
}

/// Steps and certificate for the config; the condition giving the smallest rate wins.
pub fn certify_config(config: &ExperimentConfig, problem: &SaddleProblem) -> Result<(StepSizes, RateCertificate)> {
    let profile = build_condition_profile(problem, DEFAULT_RANK_TOL);
    let mut best: Option<(StepSizes, RateCertificate)> = None;
    let mut first_err = None;
    for cond in candidate_conditions(config, &profile) {
        let attempt = resolve_steps(config, &profile, cond)
            .and_then(|s| rates::certify(&profile, &config.algorithm, &s, cond).map(|c| (s, c)));
        match attempt {
            Ok((s, c)) => {
                if best.as_ref().map_or(true, |(_, b)| c.rho < b.rho) {
                    best = Some((s, c));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.expect("at least one condition was tried"))
}

pub fn cmd_rates(config: &ExperimentConfig) -> Outcome {
    let result = config.problem.build().and_then(|p| {
        let profile = build_condition_profile(&p, DEFAULT_RANK_TOL);
        certify_config(config, &p).map(|(_, c)| (profile, c))
    });
    match result {
        Ok((profile, cert)) => {
            let doc = json!({
                "schema": SCHEMA,
                "status": "ok",
                "certificate": to_value(&cert),
                "profile": to_value(&profile),
            });
            Outcome { code: EXIT_PASS, body: pretty(&doc) }
        }
        Err(e) => error_outcome(&e),
    }
}

/// One row of a trajectory table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub iter: usize,
    pub residual_phi: f64,
    pub dist_to_ref_phi: Option<f64>,
    pub ratio: Option<f64>,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn trajectory_csv(rows: &[TrajectoryRow], with_dist: bool) -> String {
    let mut s = String::from(if with_dist { "iter,residual_phi,dist_to_ref_phi,ratio\n" } else { "iter,residual_phi,ratio\n" });
    for r in rows {
        if with_dist {
            let _ = writeln!(s, "{},{:e},{},{}", r.iter, r.residual_phi, fmt_opt(r.dist_to_ref_phi), fmt_opt(r.ratio));
        } else {
            let _ = writeln!(s, "{},{:e},{}", r.iter, r.residual_phi, fmt_opt(r.ratio));
        }
    }
    s
}

pub fn cmd_run(config: &ExperimentConfig, overrides: &Overrides) -> Outcome {
    let result = (|| -> Result<Outcome> {
        let p = config.problem.build()?;
        config.algorithm.check_capabilities(&p)?;
        // Explicit steps without a certificate still run, measured in the default norm.
        let (steps, cert) = match (certify_config(config, &p), &config.steps) {
            (Ok((s, c)), _) => (s, Some(c)),
            (Err(_), StepsSpec::Explicit(s)) => (s.clone(), None),
            (Err(e), StepsSpec::Optimal { .. }) => return Err(e),
        };
        let norm = match &cert {
            Some(c) => c.norm_matrix(&p)?,
            None => splitting::default_norm(&p, &config.algorithm, &steps)?,
        };
        let w0 = config.run.w0.resolve(&p, overrides.seed)?;
        let opts = RunOptions { norm: Some(norm.clone()), ..RunOptions::new(config.run.max_iters, config.run.residual_tol) };
        let traj = splitting::run_with(&p, &config.algorithm, &steps, &w0, &opts)?;
        let reference = verify::solve_reference_direct(&p);
        let rows: Vec<TrajectoryRow> = traj
            .residuals
            .iter()
            .enumerate()
            .map(|(k, &r)| TrajectoryRow {
                iter: k,
                residual_phi: r,
                dist_to_ref_phi: reference.as_ref().map(|s| norm.norm(&(traj.iterates[k].stacked() - s.point.stacked()))),
                ratio: if k == 0 { None } else { Some(r / traj.residuals[k - 1]) },
            })
            .collect();
        let body = match config.output.format.unwrap_or(OutputFormat::Csv) {
            OutputFormat::Csv => trajectory_csv(&rows, reference.is_some()),
            OutputFormat::Json => pretty(&json!({
                "schema": SCHEMA,
                "status": "ok",
                "algorithm": config.algorithm.name(),
                "certificate": cert.as_ref().map(to_value),
                "stop_reason": to_value(&traj.stop_reason),
                "rows": to_value(&rows),
            })),
        };
        Ok(Outcome { code: EXIT_PASS, body })
    })();
    result.unwrap_or_else(|e| error_outcome(&e))
}

/// The shifts `(Ψb, Ψf)` behind a partial-contractivity certificate.
pub fn certificate_shifts(cert: &RateCertificate) -> (PsiShift, PsiShift) {
    let c = |k: &str| cert.constant(k).unwrap_or(0.0);
    match cert.theorem.as_str() {
        "semi_implicit.c1_c2" => (PsiShift::new(c("gamma_x"), 0.0), PsiShift::new(0.0, c("gamma_y"))),
        "explicit_pdg.c1" => (PsiShift::zero(), PsiShift::new(c("beta_x"), c("beta_y"))),
        "explicit_pdg.c2" => (PsiShift::new(norm_shift(cert), 0.0), PsiShift::new(c("beta_x"), c("beta_y"))),
        _ => (PsiShift::zero(), PsiShift::zero()),
    }
}

fn norm_shift(cert: &RateCertificate) -> f64 {
    match cert.norm {
        PrecondKind::PhiPlusPsi { gamma_x, .. } => gamma_x,
        _ => 0.0,
    }
}

fn verify_instance(config: &ExperimentConfig, p: &SaddleProblem, seed: u64) -> Result<(bool, Value)> {
    let (steps, cert) = certify_config(config, p)?;
    let rho = config.verify.rho_override.unwrap_or(cert.rho);
    let norm = cert.norm_matrix(p)?;
    let v = &config.verify;
    let mut pass = true;
    let mut checks = serde_json::Map::new();
    for kind in &v.checks {
        let (ok, report) = match kind {
            CheckKind::Contraction => {
                let r = verify::check_contraction(verify::step_map(p, &config.algorithm, &steps), &norm, rho, v.pairs, v.radius, seed)?;
                (r.pass, to_value(&r))
            }
            CheckKind::Exact => {
                if !p.is_quadratic() {
                    continue;
                }
                let r = verify::exact_affine_contraction(verify::step_map(p, &config.algorithm, &steps), &norm, rho, seed)?;
                (r.pass, to_value(&r))
            }
            CheckKind::Hypotheses => {
                let Some(split) = config.algorithm.split() else { continue };
                let (psi_b, psi_f) = certificate_shifts(&cert);
                let r = verify::check_a1_a2(p, split, &steps, &psi_b, &psi_f, v.pairs, v.radius, seed)?;
                (r.pass, to_value(&r))
            }
            CheckKind::Modulus => {
                let r = verify::estimate_inverse_lipschitz(p, OperatorPart::FullF, v.pairs, v.radius, seed)?;
                (r.pass, to_value(&r))
            }
            CheckKind::Monotonicity => {
                if steps.eta <= 0.0 {
                    continue;
                }
                let r = verify::check_strong_monotonicity_phi_eta(p, steps.eta, v.pairs, v.radius, seed)?;
                (r.pass, to_value(&r))
            }
        };
        pass &= ok;
        checks.insert(to_value(kind).as_str().unwrap_or("check").to_string(), report);
    }
    let doc = json!({
        "certificate": to_value(&cert),
        "rho_checked": rho,
        "pass": pass,
        "checks": Value::Object(checks),
    });
    Ok((pass, doc))
}

pub fn cmd_verify(config: &ExperimentConfig) -> Outcome {
    let result = (|| -> Result<Outcome> {
        let count = config.verify.problems.max(1);
        let mut instances = Vec::new();
        let mut all = true;
        for k in 0..count {
            let spec = match &config.problem {
                ProblemSpec::Generator(g) => match g.seed() {
                    Some(s) => ProblemSpec::Generator(g.with_seed(s + k as u64)),
                    None => config.problem.clone(),
                },
                inline => inline.clone(),
            };
            let p = spec.build()?;
            let (ok, doc) = verify_instance(config, &p, config.verify.seed.wrapping_add(k as u64))?;
            all &= ok;
            instances.push(doc);
        }
        let doc = json!({
            "schema": SCHEMA,
            "status": if all { "pass" } else { "fail" },
            "algorithm": config.algorithm.name(),
            "instances": instances,
        });
        Ok(Outcome { code: if all { EXIT_PASS } else { EXIT_VERIFY_FAIL }, body: pretty(&doc) })
    })();
    result.unwrap_or_else(|e| error_outcome(&e))
}

/// One algorithm's line in a benchmark table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub status: String,
    pub condition: Option<Condition>,
    pub theorem: Option<String>,
    pub rho: Option<f64>,
    pub iters_to_tol: Option<usize>,
    pub observed_worst_ratio: Option<f64>,
}

/// Residual level reported by the benchmark.
pub const BENCH_TOL: f64 = 1e-8;

fn bench_one(config: &ExperimentConfig, p: &SaddleProblem, alg: AlgorithmId) -> BenchRow {
    let mut row = BenchRow {
        algorithm: alg.name().into(),
        status: String::new(),
        condition: None,
        theorem: None,
        rho: None,
        iters_to_tol: None,
        observed_worst_ratio: None,
    };
    if let Err(e) = alg.check_capabilities(p) {
        row.status = e.reason().into();
        return row;
    }
    let cfg = ExperimentConfig { algorithm: alg, steps: StepsSpec::Optimal { epsilon: config.steps_epsilon() }, ..config.clone() };
    let (steps, cert) = match certify_config(&cfg, p) {
        Ok(v) => v,
        Err(e) => {
            row.status = e.reason().into();
            return row;
        }
    };
    row.condition = Some(cert.condition);
    row.theorem = Some(cert.theorem.clone());
    row.rho = Some(cert.rho);
    let run = cert.norm_matrix(p).and_then(|norm| {
        let w0 = config.run.w0.resolve(p, None)?;
        let opts = RunOptions { norm: Some(norm), ..RunOptions::new(config.run.max_iters, BENCH_TOL) };
        splitting::run_with(p, &alg, &steps, &w0, &opts)
    });
    match run {
        Ok(t) => {
            row.status = match t.stop_reason {
                StopReason::ResidualTol => "ok".into(),
                StopReason::MaxIters => "max_iters".into(),
            };
            if t.stop_reason == StopReason::ResidualTol {
                row.iters_to_tol = Some(t.residuals.len() - 1);
            }
            row.observed_worst_ratio = t
                .residuals
                .windows(2)
                .filter(|w| w[0] > 0.0)
                .map(|w| w[1] / w[0])
                .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
        }
        Err(e) => row.status = e.reason().into(),
    }
    row
}

impl ExperimentConfig {
    fn steps_epsilon(&self) -> f64 {
        match &self.steps {
            StepsSpec::Optimal { epsilon } => *epsilon,
            StepsSpec::Explicit(s) => s.epsilon.max(default_epsilon()),
        }
    }
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("algorithm,status,condition,theorem,rho,iters_to_tol,observed_worst_ratio\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.algorithm,
            r.status,
            r.condition.map(|c| c.to_string()).unwrap_or_default(),
            r.theorem.clone().unwrap_or_default(),
            fmt_opt(r.rho),
            r.iters_to_tol.map(|k| k.to_string()).unwrap_or_default(),
            fmt_opt(r.observed_worst_ratio),
        );
    }
    s
}

pub fn cmd_bench(config: &ExperimentConfig) -> Outcome {
    let result = (|| -> Result<Outcome> {
        match &config.problem {
            ProblemSpec::Generator(Generator::HuberRof { .. } | Generator::AffineConstrained { .. } | Generator::PolicyEval { .. }) => {}
            _ => return Err(Error::validation("problem", "bench needs a huber_rof, affine_constrained or policy_eval generator")),
        }
        let p = config.problem.build()?;
        let rows: Vec<BenchRow> = AlgorithmId::ALL.iter().map(|alg| bench_one(config, &p, *alg)).collect();
        let body = match config.output.format.unwrap_or(OutputFormat::Csv) {
            OutputFormat::Csv => bench_csv(&rows),
            OutputFormat::Json => pretty(&json!({ "schema": SCHEMA, "status": "ok", "rows": to_value(&rows) })),
        };
        Ok(Outcome { code: EXIT_PASS, body })
    })();
    result.unwrap_or_else(|e| error_outcome(&e))
}

pub fn execute(command: CommandKind, config: &ExperimentConfig, overrides: &Overrides) -> Outcome {
    match command {
        CommandKind::Rates => cmd_rates(config),
        CommandKind::Run => cmd_run(config, overrides),
        CommandKind::Verify => cmd_verify(config),
        CommandKind::Bench => cmd_bench(config),
    }
}

fn emit(outcome: &Outcome, path: Option<&Path>) -> i32 {
    match path {
        Some(p) => match std::fs::write(p, &outcome.body) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("pdsaddle: cannot write {}: {e}", p.display());
                EXIT_INVALID
            }
        },
        None => {
            print!("{}", outcome.body);
            outcome.code
        }
    }
}

/// Parse arguments, run the command, write its output and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
        }
    };
    let overrides = Overrides { out: cli.out.clone(), seed: cli.seed, eps: cli.eps, pairs: cli.pairs };
    let config = match &cli.config {
        Some(path) => ExperimentConfig::load(path),
        None => Err(Error::validation("config", "--config <path> is required")),
    };
    let mut config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("pdsaddle: {e}");
            return emit(&error_outcome(&e), cli.out.as_deref());
        }
    };
    config.apply(&overrides);
    let outcome = execute(cli.command, &config, &overrides);
    if outcome.code != EXIT_PASS {
        eprintln!("pdsaddle: exit {}", outcome.code);
    }
    emit(&outcome, config.output.path.as_deref())
}
