//! Saddle-point instances `min_x max_y f(x) + yᵀAx − g(y)`, their regularity
//! profile, and generators for benchmark and counterexample instances.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real;
use crate::linalg::{self, Matrix, Vector};
use crate::oracle::{make_oracle, ConvexSet, FunctionOracle, OracleCatalogEntry, QuadraticWeight};
use crate::sampling;

/// Default relative threshold below which singular values of `A` count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SaddleProblem {
    f: FunctionOracle,
    g: FunctionOracle,
    a: Matrix,
    /// Singular values of `A`, descending.
    singular_values: Vec<f64>,
    norm_a: f64,
    mu_ata: f64,
    mu_aat: f64,
    notes: Vec<String>,
}

/// Serializable form of a problem: two catalog entries and `A` as row-major rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemDocument {
    pub f: OracleCatalogEntry,
    pub g: OracleCatalogEntry,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
}

impl SaddleProblem {
    pub fn new(f: FunctionOracle, g: FunctionOracle, a: Matrix) -> Result<Self> {
        let (n, m) = (f.dim(), g.dim());
        if a.nrows() != m {
            return Err(Error::validation("A", format!("expected {m} rows (dimension of g), got {}", a.nrows())));
        }
        if a.ncols() != n {
            return Err(Error::validation("A", format!("expected {n} columns (dimension of f), got {}", a.ncols())));
        }
        if a.iter().any(|t| !t.is_finite()) {
            return Err(Error::validation("A", "entries must be finite"));
        }
        let singular_values = linalg::singular_values(&a);
        let norm_a = singular_values.first().copied().unwrap_or(0.0);
        let smallest = singular_values.last().copied().unwrap_or(0.0);
        let mu_ata = if m >= n { smallest * smallest } else { 0.0 };
        let mu_aat = if n >= m { smallest * smallest } else { 0.0 };
        Ok(SaddleProblem { f, g, a, singular_values, norm_a, mu_ata, mu_aat, notes: Vec::new() })
    }

    pub fn from_document(doc: &ProblemDocument) -> Result<Self> {
        let f = make_oracle(doc.f.clone())?;
        let g = make_oracle(doc.g.clone())?;
        let a = linalg::from_rows(&doc.a, f.dim()).ok_or_else(|| Error::validation("A", "rows have unequal length"))?;
        Self::new(f, g, a)
    }

    pub fn to_document(&self) -> ProblemDocument {
        ProblemDocument { f: self.f.entry().clone(), g: self.g.entry().clone(), a: linalg::to_rows(&self.a) }
    }

    pub fn f(&self) -> &FunctionOracle {
        &self.f
    }

    pub fn g(&self) -> &FunctionOracle {
        &self.g
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.f.dim()
    }

    pub fn m(&self) -> usize {
        self.g.dim()
    }

    pub fn dim(&self) -> usize {
        self.n() + self.m()
    }

    pub fn norm_a(&self) -> f64 {
        self.norm_a
    }

    /// `λmin(AᵀA)`, zero when `m < n`.
    pub fn mu_ata(&self) -> f64 {
        self.mu_ata
    }

    /// `λmin(AAᵀ)`, zero when `n < m`.
    pub fn mu_aat(&self) -> f64 {
        self.mu_aat
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Both `f` and `g` have affine gradients, so every algorithm step is an affine map.
    pub fn is_quadratic(&self) -> bool {
        self.f.is_quadratic() && self.g.is_quadratic()
    }

    /// `F(x, y) = (∇f(x) + Aᵀy, ∇g(y) − Ax)` for smooth `f`, `g`.
    pub fn operator(&self, w: &Vector) -> Result<Vector> {
        let (x, y) = linalg::split(w, self.n());
        let fx = self.f.grad(&x)? + self.a.transpose() * &y;
        let gy = self.g.grad(&y)? - &self.a * &x;
        Ok(linalg::stack(&fx, &gy))
    }

    /// Skew part `(Aᵀy, −Ax)` of the saddle operator.
    pub fn skew_operator(&self, w: &Vector) -> Vector {
        let (x, y) = linalg::split(w, self.n());
        linalg::stack(&(self.a.transpose() * &y), &(-(&self.a * &x)))
    }
}

/// Regularity constants and the three alternative conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionProfile {
    pub mu_f: f64,
    pub mu_g: f64,
    #[serde(rename = "L_f", with = "ext_real")]
    pub l_f: f64,
    #[serde(rename = "L_g", with = "ext_real")]
    pub l_g: f64,
    /// `λmin(AᵀA)` after rank thresholding.
    #[serde(rename = "mu_A")]
    pub mu_a: f64,
    /// `λmin(AAᵀ)` after rank thresholding.
    #[serde(rename = "lambda_min_AAt")]
    pub lambda_min_aat: f64,
    #[serde(rename = "norm_A")]
    pub norm_a: f64,
    pub n: usize,
    pub m: usize,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub warnings: Vec<String>,
}

impl ConditionProfile {
    pub fn holds(&self, condition: Condition) -> bool {
        match condition {
            Condition::C1 => self.c1,
            Condition::C2 => self.c2,
            Condition::C3 => self.c3,
        }
    }

    /// `λmax(AAᵀ) = ‖A‖²`.
    pub fn lambda_max_aat(&self) -> f64 {
        self.norm_a * self.norm_a
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    C1,
    C2,
    C3,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
        };
        f.write_str(s)
    }
}

pub fn build_condition_profile(problem: &SaddleProblem, rank_tol: f64) -> ConditionProfile {
    let (n, m) = (problem.n(), problem.m());
    let norm_a = problem.norm_a();
    let smallest = problem.singular_values().last().copied().unwrap_or(0.0);
    let full_rank = norm_a > 0.0 && smallest > rank_tol * norm_a;
    let mu_a = if full_rank && m >= n { problem.mu_ata() } else { 0.0 };
    let lambda_min_aat = if full_rank && n >= m { problem.mu_aat() } else { 0.0 };
    let (mu_f, mu_g, l_f, l_g) = (problem.f().mu(), problem.g().mu(), problem.f().lip(), problem.g().lip());
    let c1 = mu_f > 0.0 && mu_g > 0.0;
    let c2 = mu_g > 0.0 && l_g.is_finite() && mu_a > 0.0;
    let c3 = l_f.is_finite() && l_g.is_finite() && n == m && mu_a > 0.0;
    ConditionProfile {
        mu_f,
        mu_g,
        l_f,
        l_g,
        mu_a,
        lambda_min_aat,
        norm_a,
        n,
        m,
        c1,
        c2,
        c3,
        warnings: problem.notes().to_vec(),
    }
}

/// Forward-difference operator with Neumann boundary on a `rows × cols` grid.
///
/// Horizontal differences come first, then vertical ones; pixels are row-major.
/// Boundary rows that would be identically zero are omitted.
pub fn difference_operator(rows: usize, cols: usize) -> Matrix {
    let n = rows * cols;
    let m = rows * cols.saturating_sub(1) + rows.saturating_sub(1) * cols;
    let mut d = Matrix::zeros(m, n);
    let mut k = 0;
    for r in 0..rows {
        for c in 0..cols.saturating_sub(1) {
            d[(k, r * cols + c)] = -1.0;
            d[(k, r * cols + c + 1)] = 1.0;
            k += 1;
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols {
            d[(k, r * cols + c)] = -1.0;
            d[(k, (r + 1) * cols + c)] = 1.0;
            k += 1;
        }
    }
    d
}

/// Dualized Huber–ROF denoising: `f = λ/2‖x − x̂‖²`, `g = α/2‖y‖² + ι_{‖y‖∞ ≤ 1}`, coupling `−Δ`.
pub fn make_huber_rof(noisy_image: &[f64], lambda: f64, alpha: f64, grid: (usize, usize)) -> Result<SaddleProblem> {
    let (rows, cols) = grid;
    if rows * cols != noisy_image.len() {
        return Err(Error::validation(
            "grid",
            format!("{rows}×{cols} grid does not match image of length {}", noisy_image.len()),
        ));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::validation("lambda", "must be positive"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::validation("alpha", "must be positive"));
    }
    let delta = difference_operator(rows, cols);
    let m = delta.nrows();
    if m == 0 {
        return Err(Error::validation("grid", "image has no adjacent pixel pairs"));
    }
    let f = FunctionOracle::scaled_quadratic(lambda, noisy_image)?;
    let g = make_oracle(OracleCatalogEntry::QuadraticIndicator {
        scale: alpha,
        linear: vec![0.0; m],
        set: ConvexSet::Box { lo: vec![-1.0; m], hi: vec![1.0; m] },
    })?;
    SaddleProblem::new(f, g, -delta)
}

/// Lagrangian form of `min g(y)` subject to `Aᵀy ≥ b`: `f(x) = −bᵀx + ι_{x ≥ 0}`.
pub fn make_affine_constrained(g: FunctionOracle, a: Matrix, b: &[f64]) -> Result<SaddleProblem> {
    if b.len() != a.ncols() {
        return Err(Error::Dimension { expected: a.ncols(), got: b.len() });
    }
    if a.nrows() != g.dim() {
        return Err(Error::Dimension { expected: g.dim(), got: a.nrows() });
    }
    let f = make_oracle(OracleCatalogEntry::QuadraticIndicator {
        scale: 0.0,
        linear: b.iter().map(|t| -t).collect(),
        set: ConvexSet::Nonneg,
    })?;
    SaddleProblem::new(f, g, a)
}

/// Policy evaluation by the empirical projected Bellman error.
///
/// `features` has `T + 1` rows `φ(s_t)`; `rewards` has `T` entries. The stored
/// coupling is the negated `C − γ Σ φ_t φ_{t+1}ᵀ`, `f = 0` and `g = ½‖y‖²_C + bᵀy`.
pub fn make_policy_eval(features: &Matrix, rewards: &[f64], gamma: f64) -> Result<SaddleProblem> {
    let t = rewards.len();
    if t == 0 {
        return Err(Error::validation("rewards", "need at least one transition"));
    }
    if features.nrows() != t + 1 {
        return Err(Error::validation("features", format!("expected {} rows, got {}", t + 1, features.nrows())));
    }
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::validation("gamma", "discount must lie in [0, 1)"));
    }
    let n = features.ncols();
    let mut c = Matrix::zeros(n, n);
    let mut cross = Matrix::zeros(n, n);
    let mut b = Vector::zeros(n);
    for k in 0..t {
        let phi = features.row(k).transpose();
        let next = features.row(k + 1).transpose();
        c += &phi * phi.transpose();
        cross += &phi * next.transpose();
        b += &phi * rewards[k];
    }
    let a = &c - cross * gamma;
    let g = make_oracle(OracleCatalogEntry::QuadraticPlusLinear {
        matrix: linalg::to_rows(&c),
        linear: b.iter().copied().collect(),
    })?;
    let f = FunctionOracle::zero(n)?;
    let problem = SaddleProblem::new(f, g, -a)?;
    let (lo, hi) = linalg::extreme_eigenvalues(&c);
    if lo <= DEFAULT_RANK_TOL * hi.max(0.0) {
        Ok(problem.with_note("feature covariance C is singular: g is not strongly convex"))
    } else {
        Ok(problem)
    }
}

/// Constants requested from `make_random`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomConstants {
    pub mu_f: f64,
    pub mu_g: f64,
    #[serde(rename = "L_f")]
    pub l_f: f64,
    #[serde(rename = "L_g")]
    pub l_g: f64,
    pub sing_min: f64,
    pub sing_max: f64,
}

fn spread<R: Rng>(rng: &mut R, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..count)
        .map(|i| match i {
            0 => lo,
            _ if i + 1 == count => hi,
            _ => lo + (hi - lo) * rng.gen::<f64>(),
        })
        .collect()
}

fn random_quadratic<R: Rng>(rng: &mut R, dim: usize, mu: f64, lip: f64, name: &str) -> Result<FunctionOracle> {
    if !(mu >= 0.0 && lip.is_finite() && mu <= lip) {
        return Err(Error::validation(name, format!("need 0 ≤ mu ≤ L < ∞, got mu={mu}, L={lip}")));
    }
    if dim == 1 && mu != lip {
        return Err(Error::validation(name, "a one-dimensional quadratic needs mu = L"));
    }
    if lip == 0.0 {
        let coef: Vec<f64> = sampling::gaussian_vector(rng, dim).iter().copied().collect();
        return make_oracle(OracleCatalogEntry::Linear { coef });
    }
    let q = sampling::orthogonal(rng, dim);
    let eig = Vector::from_vec(spread(rng, dim, mu, lip));
    let w = linalg::symmetrize(&(&q * Matrix::from_diagonal(&eig) * q.transpose()));
    let center: Vec<f64> = sampling::gaussian_vector(rng, dim).iter().copied().collect();
    FunctionOracle::matrix_quadratic(&w, &center)
}

/// Random quadratic instance with prescribed constants and singular values of `A`.
pub fn make_random(condition: Condition, n: usize, m: usize, constants: RandomConstants, seed: u64) -> Result<SaddleProblem> {
    let RandomConstants { mu_f, mu_g, l_f, l_g, sing_min, sing_max } = constants;
    if n == 0 || m == 0 {
        return Err(Error::validation("n", "dimensions must be positive"));
    }
    if !(sing_min >= 0.0 && sing_min <= sing_max && sing_max.is_finite()) {
        return Err(Error::validation("sing_min", "need 0 ≤ sing_min ≤ sing_max < ∞"));
    }
    let rank = n.min(m);
    if rank == 1 && sing_min != sing_max {
        return Err(Error::validation("sing_min", "a rank-one coupling needs sing_min = sing_max"));
    }
    match condition {
        Condition::C1 => {
            if !(mu_f > 0.0 && mu_g > 0.0) {
                return Err(Error::validation("mu_f", "C1 needs mu_f > 0 and mu_g > 0"));
            }
        }
        Condition::C2 => {
            if !(mu_g > 0.0) {
                return Err(Error::validation("mu_g", "C2 needs mu_g > 0"));
            }
            if m < n {
                return Err(Error::validation("m", "C2 needs m ≥ n so that AᵀA can be invertible"));
            }
            if !(sing_min > 0.0) {
                return Err(Error::validation("sing_min", "C2 needs sing_min > 0"));
            }
        }
        Condition::C3 => {
            if n != m {
                return Err(Error::validation("m", "C3 needs n = m"));
            }
            if !(sing_min > 0.0) {
                return Err(Error::validation("sing_min", "C3 needs sing_min > 0"));
            }
        }
    }
    let mut rng = sampling::trial_rng(seed, 0);
    let f = random_quadratic(&mut rng, n, mu_f, l_f, "L_f")?;
    let g = random_quadratic(&mut rng, m, mu_g, l_g, "L_g")?;
    let u = sampling::orthogonal(&mut rng, m);
    let v = sampling::orthogonal(&mut rng, n);
    let mut s = spread(&mut rng, rank, sing_max, sing_min);
    s.sort_by(|p, q| q.total_cmp(p));
    let mut a = Matrix::zeros(m, n);
    for (k, &sk) in s.iter().enumerate() {
        a += u.column(k) * v.column(k).transpose() * sk;
    }
    let problem = SaddleProblem::new(f, g, a)?;
    let profile = build_condition_profile(&problem, DEFAULT_RANK_TOL);
    if !profile.holds(condition) {
        return Err(Error::condition(&condition.to_string(), "generated instance does not satisfy the request"));
    }
    Ok(problem)
}

/// Instances with non-unique saddle points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Counterexample {
    /// `f = g = 0`, `A = (0, 1)ᵀ`: solutions `x = 0`, `y₂ = 0`, `y₁` free.
    I,
    /// `f = 0`, `g = ι_[0,1] + y²`, `A = 1`: solutions `y = 0`, `x ≤ 0`.
    II,
    /// `f = 0`, `g = y²`, `A = 0`: solutions `y = 0`, `x` free.
    III,
}

pub fn make_counterexample(which: Counterexample) -> SaddleProblem {
    let built = match which {
        Counterexample::I => SaddleProblem::new(
            FunctionOracle::zero(1).expect("zero"),
            FunctionOracle::zero(2).expect("zero"),
            Matrix::from_row_slice(2, 1, &[0.0, 1.0]),
        ),
        Counterexample::II => SaddleProblem::new(
            FunctionOracle::zero(1).expect("zero"),
            make_oracle(OracleCatalogEntry::QuadraticIndicator {
                scale: 2.0,
                linear: vec![0.0],
                set: ConvexSet::Box { lo: vec![0.0], hi: vec![1.0] },
            })
            .expect("box"),
            Matrix::from_element(1, 1, 1.0),
        ),
        Counterexample::III => SaddleProblem::new(
            FunctionOracle::zero(1).expect("zero"),
            make_oracle(OracleCatalogEntry::Quadratic { weight: QuadraticWeight::Scalar(2.0), center: vec![0.0] })
                .expect("quadratic"),
            Matrix::zeros(1, 1),
        ),
    };
    built.expect("counterexample instances are well-formed")
}
