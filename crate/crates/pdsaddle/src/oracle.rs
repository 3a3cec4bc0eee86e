//! Convex functions exposed through prox, gradient and value oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::sampling;

/// Tolerance of the membership test used by indicator values.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Weight of a quadratic `½ (x − c)ᵀ W (x − c)`: a scalar multiple of the identity or a PSD matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuadraticWeight {
    Scalar(f64),
    Matrix(Vec<Vec<f64>>),
}

/// Closed convex set used by the composite `quadratic_indicator` entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConvexSet {
    Nonneg,
    /// Euclidean ball centred at the origin.
    Ball { radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

/// JSON-serializable description of a catalog function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleCatalogEntry {
    Zero { dim: usize },
    /// `½ (x − center)ᵀ W (x − center)`; a scalar weight `s` means `W = s·I`.
    Quadratic { weight: QuadraticWeight, center: Vec<f64> },
    /// `coefᵀ x`.
    Linear { coef: Vec<f64> },
    IndicatorNonneg { dim: usize },
    /// Indicator of the Euclidean ball of the given radius around the origin.
    IndicatorBall { dim: usize, radius: f64 },
    IndicatorBox { lo: Vec<f64>, hi: Vec<f64> },
    /// `½ xᵀ C x + bᵀ x`.
    QuadraticPlusLinear { matrix: Vec<Vec<f64>>, linear: Vec<f64> },
    /// `weight · ‖x‖₁`.
    L1 { dim: usize, weight: f64 },
    /// `(scale/2)‖x‖² + linearᵀ x + ι_set(x)`.
    QuadraticIndicator { scale: f64, linear: Vec<f64>, set: ConvexSet },
}

#[derive(Clone, Debug)]
enum Kind {
    Zero,
    ScaledQuadratic { scale: f64, center: Vector },
    /// `½ xᵀ W x + lᵀ x` with cached eigen-decomposition of `W`.
    MatrixQuadratic { weight: Matrix, linear: Vector, eigvals: Vector, eigvecs: Matrix },
    Linear { coef: Vector },
    Set(SetKind),
    L1 { weight: f64 },
    QuadraticOnSet { scale: f64, linear: Vector, set: SetKind },
}

#[derive(Clone, Debug)]
enum SetKind {
    Nonneg,
    Ball { radius: f64 },
    Box { lo: Vector, hi: Vector },
}

impl SetKind {
    fn project(&self, v: &Vector) -> Vector {
        match self {
            SetKind::Nonneg => v.map(|t| t.max(0.0)),
            SetKind::Ball { radius } => {
                let norm = v.norm();
                if norm <= *radius {
                    v.clone()
                } else {
                    v * (*radius / norm)
                }
            }
            SetKind::Box { lo, hi } => Vector::from_fn(v.len(), |i, _| v[i].clamp(lo[i], hi[i])),
        }
    }

    fn contains(&self, v: &Vector) -> bool {
        match self {
            SetKind::Nonneg => v.iter().all(|&t| t >= -MEMBERSHIP_TOL),
            SetKind::Ball { radius } => v.norm() <= radius + MEMBERSHIP_TOL,
            SetKind::Box { lo, hi } => v
                .iter()
                .enumerate()
                .all(|(i, &t)| t >= lo[i] - MEMBERSHIP_TOL && t <= hi[i] + MEMBERSHIP_TOL),
        }
    }
}

/// A proper closed convex function with declared regularity constants.
///
/// `lip = +inf` encodes a nonsmooth function.
#[derive(Clone, Debug)]
pub struct FunctionOracle {
    entry: OracleCatalogEntry,
    kind: Kind,
    dim: usize,
    mu: f64,
    lip: f64,
}

fn finite_vec(field: &str, v: &[f64]) -> Result<Vector> {
    if v.iter().any(|t| !t.is_finite()) {
        return Err(Error::validation(field, "entries must be finite"));
    }
    Ok(Vector::from_column_slice(v))
}

fn psd_matrix(field: &str, rows: &[Vec<f64>]) -> Result<(Matrix, Vector, Matrix)> {
    let m = linalg::from_rows(rows, 0).ok_or_else(|| Error::validation(field, "rows have unequal length"))?;
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return Err(Error::validation(field, "matrix must be square and non-empty"));
    }
    if m.iter().any(|t| !t.is_finite()) {
        return Err(Error::validation(field, "entries must be finite"));
    }
    let scale = m.amax().max(1.0);
    if (&m - m.transpose()).amax() > 1e-12 * scale {
        return Err(Error::validation(field, "matrix must be symmetric"));
    }
    let m = linalg::symmetrize(&m);
    let (vals, vecs) = linalg::sym_eigen(&m);
    if vals[0] < -1e-12 * scale {
        return Err(Error::validation(field, format!("matrix must be PSD (smallest eigenvalue {})", vals[0])));
    }
    let vals = vals.map(|v| v.max(0.0));
    Ok((m, vals, vecs))
}

fn make_set(set: &ConvexSet, dim: usize) -> Result<SetKind> {
    Ok(match set {
        ConvexSet::Nonneg => SetKind::Nonneg,
        ConvexSet::Ball { radius } => {
            if !(radius.is_finite() && *radius > 0.0) {
                return Err(Error::validation("radius", "must be a positive finite number"));
            }
            SetKind::Ball { radius: *radius }
        }
        ConvexSet::Box { lo, hi } => box_kind(lo, hi, Some(dim))?,
    })
}

fn box_kind(lo: &[f64], hi: &[f64], dim: Option<usize>) -> Result<SetKind> {
    if lo.len() != hi.len() {
        return Err(Error::validation("hi", "lo and hi must have the same length"));
    }
    if let Some(d) = dim {
        if lo.len() != d {
            return Err(Error::validation("lo", format!("expected length {d}")));
        }
    }
    if lo.is_empty() {
        return Err(Error::validation("lo", "box must have positive dimension"));
    }
    for (i, (&l, &h)) in lo.iter().zip(hi).enumerate() {
        if l.is_nan() || h.is_nan() || l > h {
            return Err(Error::validation("lo", format!("lo[{i}] must not exceed hi[{i}]")));
        }
    }
    Ok(SetKind::Box {
        lo: Vector::from_column_slice(lo),
        hi: Vector::from_column_slice(hi),
    })
}

/// Build an oracle from a catalog entry, validating its parameters.
pub fn make_oracle(entry: OracleCatalogEntry) -> Result<FunctionOracle> {
    let nonempty = |field: &str, d: usize| {
        if d == 0 {
            Err(Error::validation(field, "dimension must be positive"))
        } else {
            Ok(d)
        }
    };
    let (kind, dim, mu, lip) = match &entry {
        OracleCatalogEntry::Zero { dim } => (Kind::Zero, nonempty("dim", *dim)?, 0.0, 0.0),
        OracleCatalogEntry::Quadratic { weight, center } => {
            let c = finite_vec("center", center)?;
            let dim = nonempty("center", c.len())?;
            match weight {
                QuadraticWeight::Scalar(s) => {
                    if !(s.is_finite() && *s >= 0.0) {
                        return Err(Error::validation("weight", "scalar weight must be finite and nonnegative"));
                    }
                    (Kind::ScaledQuadratic { scale: *s, center: c }, dim, *s, *s)
                }
                QuadraticWeight::Matrix(rows) => {
                    let (w, vals, vecs) = psd_matrix("weight", rows)?;
                    if w.nrows() != dim {
                        return Err(Error::validation("center", format!("expected length {}", w.nrows())));
                    }
                    let linear = -(&w * &c);
                    let (mu, lip) = (vals[0], vals[dim - 1]);
                    (Kind::MatrixQuadratic { weight: w, linear, eigvals: vals, eigvecs: vecs }, dim, mu, lip)
                }
            }
        }
        OracleCatalogEntry::Linear { coef } => {
            let c = finite_vec("coef", coef)?;
            let dim = nonempty("coef", c.len())?;
            (Kind::Linear { coef: c }, dim, 0.0, 0.0)
        }
        OracleCatalogEntry::IndicatorNonneg { dim } => {
            (Kind::Set(SetKind::Nonneg), nonempty("dim", *dim)?, 0.0, f64::INFINITY)
        }
        OracleCatalogEntry::IndicatorBall { dim, radius } => {
            let set = make_set(&ConvexSet::Ball { radius: *radius }, *dim)?;
            (Kind::Set(set), nonempty("dim", *dim)?, 0.0, f64::INFINITY)
        }
        OracleCatalogEntry::IndicatorBox { lo, hi } => {
            let set = box_kind(lo, hi, None)?;
            (Kind::Set(set), lo.len(), 0.0, f64::INFINITY)
        }
        OracleCatalogEntry::QuadraticPlusLinear { matrix, linear } => {
            let (w, vals, vecs) = psd_matrix("matrix", matrix)?;
            let l = finite_vec("linear", linear)?;
            let dim = w.nrows();
            if l.len() != dim {
                return Err(Error::validation("linear", format!("expected length {dim}")));
            }
            let (mu, lip) = (vals[0], vals[dim - 1]);
            (Kind::MatrixQuadratic { weight: w, linear: l, eigvals: vals, eigvecs: vecs }, dim, mu, lip)
        }
        OracleCatalogEntry::L1 { dim, weight } => {
            if !(weight.is_finite() && *weight >= 0.0) {
                return Err(Error::validation("weight", "must be finite and nonnegative"));
            }
            (Kind::L1 { weight: *weight }, nonempty("dim", *dim)?, 0.0, f64::INFINITY)
        }
        OracleCatalogEntry::QuadraticIndicator { scale, linear, set } => {
            if !(scale.is_finite() && *scale >= 0.0) {
                return Err(Error::validation("scale", "must be finite and nonnegative"));
            }
            let l = finite_vec("linear", linear)?;
            let dim = nonempty("linear", l.len())?;
            let set = make_set(set, dim)?;
            (Kind::QuadraticOnSet { scale: *scale, linear: l, set }, dim, *scale, f64::INFINITY)
        }
    };
    Ok(FunctionOracle { entry, kind, dim, mu, lip })
}

impl FunctionOracle {
    pub fn zero(dim: usize) -> Result<Self> {
        make_oracle(OracleCatalogEntry::Zero { dim })
    }

    /// `(scale/2)‖x − center‖²`.
    pub fn scaled_quadratic(scale: f64, center: &[f64]) -> Result<Self> {
        make_oracle(OracleCatalogEntry::Quadratic {
            weight: QuadraticWeight::Scalar(scale),
            center: center.to_vec(),
        })
    }

    /// `½ (x − center)ᵀ W (x − center)`.
    pub fn matrix_quadratic(weight: &Matrix, center: &[f64]) -> Result<Self> {
        make_oracle(OracleCatalogEntry::Quadratic {
            weight: QuadraticWeight::Matrix(linalg::to_rows(weight)),
            center: center.to_vec(),
        })
    }

    pub fn entry(&self) -> &OracleCatalogEntry {
        &self.entry
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lip(&self) -> f64 {
        self.lip
    }

    pub fn has_prox(&self) -> bool {
        true
    }

    pub fn has_grad(&self) -> bool {
        matches!(
            self.kind,
            Kind::Zero | Kind::ScaledQuadratic { .. } | Kind::MatrixQuadratic { .. } | Kind::Linear { .. }
        )
    }

    /// True when the gradient is affine, i.e. the function is a quadratic, linear or zero.
    pub fn is_quadratic(&self) -> bool {
        self.has_grad()
    }

    /// Nonnegative orthant constraint with an isotropic quadratic-plus-linear objective.
    pub(crate) fn orthant_quadratic(&self) -> Option<(f64, &Vector)> {
        match &self.kind {
            Kind::QuadraticOnSet { scale, linear, set: SetKind::Nonneg } => Some((*scale, linear)),
            _ => None,
        }
    }

    /// Hessian and constant term of an affine gradient `∇ψ(x) = H x + c`.
    pub fn affine_gradient(&self) -> Option<(Matrix, Vector)> {
        let d = self.dim;
        match &self.kind {
            Kind::Zero => Some((Matrix::zeros(d, d), Vector::zeros(d))),
            Kind::ScaledQuadratic { scale, center } => {
                Some((Matrix::identity(d, d) * *scale, -(center * *scale)))
            }
            Kind::MatrixQuadratic { weight, linear, .. } => Some((weight.clone(), linear.clone())),
            Kind::Linear { coef } => Some((Matrix::zeros(d, d), coef.clone())),
            _ => None,
        }
    }

    /// Replace the declared constants, keeping the evaluation oracles.
    ///
    /// Used to probe `validate_oracle` with deliberately wrong metadata.
    pub fn with_declared_constants(mut self, mu: f64, lip: f64) -> Self {
        self.mu = mu;
        self.lip = lip;
        self
    }

    /// Directions along which the declared constants are attained.
    pub fn principal_directions(&self) -> Vec<Vector> {
        match &self.kind {
            Kind::MatrixQuadratic { eigvecs, .. } => eigvecs.column_iter().map(|c| c.into_owned()).collect(),
            _ => (0..self.dim)
                .map(|i| {
                    let mut e = Vector::zeros(self.dim);
                    e[i] = 1.0;
                    e
                })
                .collect(),
        }
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// `prox_{step·ψ}(v) = argmin_u ψ(u) + ‖u − v‖²/(2·step)`.
    pub fn prox(&self, step: f64, v: &Vector) -> Result<Vector> {
        self.check_dim(v)?;
        if !(step > 0.0) {
            return Err(Error::Domain(format!("prox step must be positive, got {step}")));
        }
        Ok(match &self.kind {
            Kind::Zero => v.clone(),
            Kind::ScaledQuadratic { scale, center } => (v + center * (step * scale)) / (1.0 + step * scale),
            Kind::MatrixQuadratic { linear, eigvals, eigvecs, .. } => {
                let rhs = v - linear * step;
                let coeffs = eigvecs.transpose() * rhs;
                let scaled = Vector::from_fn(coeffs.len(), |i, _| coeffs[i] / (1.0 + step * eigvals[i]));
                eigvecs * scaled
            }
            Kind::Linear { coef } => v - coef * step,
            Kind::Set(set) => set.project(v),
            Kind::L1 { weight } => {
                let t = step * weight;
                v.map(|z| z.signum() * (z.abs() - t).max(0.0))
            }
            Kind::QuadraticOnSet { scale, linear, set } => {
                set.project(&((v - linear * step) / (1.0 + step * scale)))
            }
        })
    }

    pub fn grad(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        match &self.kind {
            Kind::Zero => Ok(Vector::zeros(self.dim)),
            Kind::ScaledQuadratic { scale, center } => Ok((x - center) * *scale),
            Kind::MatrixQuadratic { weight, linear, .. } => Ok(weight * x + linear),
            Kind::Linear { coef } => Ok(coef.clone()),
            _ => Err(Error::Capability {
                capability: "gradient".into(),
                function: self.kind_name().into(),
            }),
        }
    }

    /// Function value; `+inf` outside the domain.
    pub fn value(&self, x: &Vector) -> f64 {
        if x.len() != self.dim {
            return f64::NAN;
        }
        match &self.kind {
            Kind::Zero => 0.0,
            Kind::ScaledQuadratic { scale, center } => 0.5 * scale * (x - center).norm_squared(),
            Kind::MatrixQuadratic { weight, linear, .. } => 0.5 * x.dot(&(weight * x)) + linear.dot(x),
            Kind::Linear { coef } => coef.dot(x),
            Kind::Set(set) => {
                if set.contains(x) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Kind::L1 { weight } => weight * x.lp_norm(1),
            Kind::QuadraticOnSet { scale, linear, set } => {
                if set.contains(x) {
                    0.5 * scale * x.norm_squared() + linear.dot(x)
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.entry {
            OracleCatalogEntry::Zero { .. } => "zero",
            OracleCatalogEntry::Quadratic { .. } => "quadratic",
            OracleCatalogEntry::Linear { .. } => "linear",
            OracleCatalogEntry::IndicatorNonneg { .. } => "indicator_nonneg",
            OracleCatalogEntry::IndicatorBall { .. } => "indicator_ball",
            OracleCatalogEntry::IndicatorBox { .. } => "indicator_box",
            OracleCatalogEntry::QuadraticPlusLinear { .. } => "quadratic_plus_linear",
            OracleCatalogEntry::L1 { .. } => "l1",
            OracleCatalogEntry::QuadraticIndicator { .. } => "quadratic_indicator",
        }
    }
}

/// Sample a point of the graph of `∂ψ` through the resolvent identity.
///
/// Returns `(u, s)` with `u = prox(step, probe)` and `s = (probe − u)/step ∈ ∂ψ(u)`.
pub fn subgradient_graph_sample(oracle: &FunctionOracle, probe: &Vector, step: f64) -> Result<(Vector, Vector)> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("graph-sample step must be positive, got {step}")));
    }
    let u = oracle.prox(step, probe)?;
    let s = (probe - &u) / step;
    Ok((u, s))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub gradient_checked: bool,
    /// Largest `‖∇ψ(v) − ∇ψ(v′)‖ / ‖v − v′‖` seen.
    pub max_lipschitz_ratio: Option<f64>,
    /// Smallest `⟨∇ψ(v) − ∇ψ(v′), v − v′⟩ / ‖v − v′‖²` seen.
    pub min_monotonicity_ratio: Option<f64>,
    /// Worst `(‖p − p′‖² − ⟨p − p′, v − v′⟩) / ‖v − v′‖²` over prox pairs.
    pub max_firm_violation: f64,
    /// Worst relative excess of the prox objective at `u` over a competitor `z`.
    pub max_prox_violation: f64,
    pub pass: bool,
    pub failures: Vec<String>,
    /// The pair `(v, v′)` behind the worst failing check.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

const VALIDATION_TOL: f64 = 1e-8;

/// Check the declared constants and prox invariants on sampled pairs.
pub fn validate_oracle(oracle: &FunctionOracle, samples: usize, radius: f64, seed: u64) -> ValidationReport {
    let dim = oracle.dim();
    let mut rng = sampling::trial_rng(seed, 0);
    let mut pairs: Vec<(Vector, Vector)> = Vec::with_capacity(samples + 2 * dim);
    for d in oracle.principal_directions() {
        let base = sampling::in_ball(&mut rng, dim, radius * 0.5);
        let other = &base + &d * (radius * 0.5);
        pairs.push((base, other));
    }
    for _ in 0..samples {
        let v = sampling::in_ball(&mut rng, dim, radius);
        let w = sampling::in_ball(&mut rng, dim, radius);
        pairs.push((v, w));
    }

    let mut failures = Vec::new();
    let mut witness: Option<(f64, Vector, Vector)> = None;
    let mut note = |severity: f64, v: &Vector, w: &Vector| {
        if witness.as_ref().map_or(true, |(s, _, _)| severity > *s) {
            witness = Some((severity, v.clone(), w.clone()));
        }
    };

    let gradient_checked = oracle.has_grad();
    let mut max_lip = 0.0f64;
    let mut min_mono = f64::INFINITY;
    let mut max_firm = f64::NEG_INFINITY;
    let mut max_prox = f64::NEG_INFINITY;
    let (mu, lip) = (oracle.mu(), oracle.lip());
    let mut lip_failed = false;
    let mut mono_failed = false;

    for (v, w) in &pairs {
        let delta = v - w;
        let dn2 = delta.norm_squared();
        if dn2 == 0.0 {
            continue;
        }
        if gradient_checked {
            let gd = oracle.grad(v).expect("gradient") - oracle.grad(w).expect("gradient");
            let ratio = gd.norm() / dn2.sqrt();
            let mono = gd.dot(&delta) / dn2;
            max_lip = max_lip.max(ratio);
            min_mono = min_mono.min(mono);
            if lip.is_finite() && ratio > lip * (1.0 + VALIDATION_TOL) + 1e-12 {
                lip_failed = true;
                note((ratio - lip) / lip.max(1e-300), v, w);
            }
            if mono < mu * (1.0 - VALIDATION_TOL) - 1e-12 {
                mono_failed = true;
                note((mu - mono) / mu.max(1e-300), v, w);
            }
        }
        let step: f64 = 10f64.powf(rand::Rng::gen_range(&mut rng, -1.0..1.0));
        let p = oracle.prox(step, v).expect("prox");
        let q = oracle.prox(step, w).expect("prox");
        let pd = &p - &q;
        let firm = (pd.norm_squared() - pd.dot(&delta)) / dn2;
        max_firm = max_firm.max(firm);
        if firm > VALIDATION_TOL {
            note(firm, v, w);
        }

        // Competitors: a nearby domain point and a projected random point.
        let obj = |z: &Vector| oracle.value(z) + (v - z).norm_squared() / (2.0 * step);
        let at_u = obj(&p);
        let near = oracle.prox(1.0, &(&p + sampling::in_ball(&mut rng, dim, radius * 1e-2))).expect("prox");
        let far = oracle.prox(1.0, &sampling::in_ball(&mut rng, dim, radius)).expect("prox");
        for z in [near, far] {
            let other = obj(&z);
            if other.is_finite() {
                let excess = (at_u - other) / other.abs().max(1.0);
                max_prox = max_prox.max(excess);
                if excess > VALIDATION_TOL {
                    note(excess, v, w);
                }
            }
        }
    }

    if lip_failed {
        failures.push(format!("declared lip {lip} is exceeded (max ratio {max_lip})"));
    }
    if mono_failed {
        failures.push(format!("declared mu {mu} is not attained (min ratio {min_mono})"));
    }
    if max_firm > VALIDATION_TOL {
        failures.push(format!("prox is not firmly nonexpansive (violation {max_firm})"));
    }
    if max_prox > VALIDATION_TOL {
        failures.push(format!("prox optimality violated (excess {max_prox})"));
    }
    let pass = failures.is_empty();
    ValidationReport {
        samples: pairs.len(),
        gradient_checked,
        max_lipschitz_ratio: gradient_checked.then_some(max_lip),
        min_monotonicity_ratio: gradient_checked.then_some(min_mono),
        max_firm_violation: max_firm.max(0.0),
        max_prox_violation: max_prox.max(0.0),
        pass,
        failures,
        witness: if pass {
            None
        } else {
            witness.map(|(_, v, w)| (v.iter().copied().collect(), w.iter().copied().collect()))
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn zero_prox_is_identity() {
        let f = FunctionOracle::zero(2).unwrap();
        assert_eq!(f.prox(3.7, &v(&[3.0, -2.0])).unwrap(), v(&[3.0, -2.0]));
    }

    #[test]
    fn scalar_quadratic_prox_by_hand() {
        let f = FunctionOracle::scaled_quadratic(2.0, &[1.0]).unwrap();
        let u = f.prox(0.5, &v(&[0.0])).unwrap();
        assert!((u[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn nonneg_projection() {
        let f = make_oracle(OracleCatalogEntry::IndicatorNonneg { dim: 2 }).unwrap();
        assert_eq!(f.prox(1.0, &v(&[-1.0, 2.0])).unwrap(), v(&[0.0, 2.0]));
        assert_eq!(f.value(&v(&[-1.0, 2.0])), f64::INFINITY);
        assert_eq!(f.value(&v(&[-1e-13, 2.0])), 0.0);
    }

    #[test]
    fn matrix_quadratic_metadata_and_prox() {
        let c = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let f = FunctionOracle::matrix_quadratic(&c, &[1.0, 0.0]).unwrap();
        assert!((f.mu() - 1.0).abs() < 1e-14);
        assert!((f.lip() - 3.0).abs() < 1e-14);
        let x = v(&[0.3, -0.7]);
        let u = f.prox(0.4, &x).unwrap();
        // optimality: u − x + 0.4·∇f(u) = 0
        let resid = &u - &x + f.grad(&u).unwrap() * 0.4;
        assert!(resid.norm() < 1e-14);
    }

    #[test]
    fn graph_samples_by_hand() {
        let z = FunctionOracle::zero(2).unwrap();
        let (u, s) = subgradient_graph_sample(&z, &v(&[1.0, 2.0]), 1.0).unwrap();
        assert_eq!(u, v(&[1.0, 2.0]));
        assert_eq!(s, v(&[0.0, 0.0]));

        let nn = make_oracle(OracleCatalogEntry::IndicatorNonneg { dim: 1 }).unwrap();
        let (u, s) = subgradient_graph_sample(&nn, &v(&[-2.0]), 1.0).unwrap();
        assert_eq!((u[0], s[0]), (0.0, -2.0));

        let q = FunctionOracle::scaled_quadratic(1.0, &[0.0]).unwrap();
        let (u, s) = subgradient_graph_sample(&q, &v(&[3.0]), 0.5).unwrap();
        assert!((u[0] - 2.0).abs() < 1e-15 && (s[0] - 2.0).abs() < 1e-15);
        assert!(subgradient_graph_sample(&q, &v(&[3.0]), 0.0).is_err());
    }

    #[test]
    fn malformed_entries_name_the_field() {
        let bad = make_oracle(OracleCatalogEntry::IndicatorBall { dim: 2, radius: -1.0 });
        assert!(matches!(bad, Err(Error::Validation { ref field, .. }) if field == "radius"));
        let bad = make_oracle(OracleCatalogEntry::IndicatorBox { lo: vec![1.0], hi: vec![0.0] });
        assert!(matches!(bad, Err(Error::Validation { ref field, .. }) if field == "lo"));
        let bad = make_oracle(OracleCatalogEntry::Quadratic {
            weight: QuadraticWeight::Matrix(vec![vec![1.0, 0.0], vec![0.0, -1.0]]),
            center: vec![0.0, 0.0],
        });
        assert!(matches!(bad, Err(Error::Validation { ref field, .. }) if field == "weight"));
    }

    #[test]
    fn quadratic_indicator_prox_shift_then_project() {
        let f = make_oracle(OracleCatalogEntry::QuadraticIndicator {
            scale: 0.0,
            linear: vec![-2.0, -2.0],
            set: ConvexSet::Nonneg,
        })
        .unwrap();
        assert_eq!(f.prox(1.0, &v(&[-1.0, 3.0])).unwrap(), v(&[1.0, 5.0]));
    }

    #[test]
    fn entries_roundtrip_through_json() {
        let entries = vec![
            OracleCatalogEntry::Zero { dim: 3 },
            OracleCatalogEntry::Quadratic { weight: QuadraticWeight::Scalar(2.0), center: vec![1.0] },
            OracleCatalogEntry::QuadraticIndicator {
                scale: 1.0,
                linear: vec![0.0],
                set: ConvexSet::Box { lo: vec![-1.0], hi: vec![1.0] },
            },
        ];
        for e in entries {
            let text = serde_json::to_string(&e).unwrap();
            let back: OracleCatalogEntry = serde_json::from_str(&text).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn validation_passes_for_identity_quadratic() {
        let f = FunctionOracle::scaled_quadratic(1.0, &[0.5, -0.5]).unwrap();
        let report = validate_oracle(&f, 100, 2.0, 3);
        assert!(report.pass, "{:?}", report.failures);
        assert!((report.max_lipschitz_ratio.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_flags_understated_lip() {
        let c = Matrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let f = FunctionOracle::matrix_quadratic(&c, &[0.0, 0.0]).unwrap().with_declared_constants(1.0, 2.0);
        let report = validate_oracle(&f, 20, 1.0, 3);
        assert!(!report.pass);
        assert!(report.witness.is_some());
    }

    #[test]
    fn validation_skips_gradient_for_indicator() {
        let f = make_oracle(OracleCatalogEntry::IndicatorNonneg { dim: 3 }).unwrap();
        let report = validate_oracle(&f, 100, 2.0, 5);
        assert!(!report.gradient_checked);
        assert!(report.pass, "{:?}", report.failures);
    }
}
