//! Membership-graded norms on finite-dimensional real spaces.
//!
//! A norm here is a pair of maps (x, t) -> mu and (x, t) -> nu grading how
//! strongly "x is small relative to t" holds and fails to hold. The standard
//! construction mu = t/(t + ||x||), nu = 1 - mu turns any classical norm into
//! such a pair. [`check_ifn_axioms`] verifies the sixteen defining laws on
//! sampled data and reports reproducible witnesses for violations.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::CheckParams;
use crate::sample::SampleStream;
use crate::tnorm::{TConorm, TNorm};
use crate::vector::{ClassicalNorm, Vector};

/// Pointwise value of a membership norm: degree of membership mu in (0, 1]
/// and degree of non-membership nu in [0, 1) with mu + nu <= 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembershipPair {
    pub mu: f64,
    pub nu: f64,
}

impl MembershipPair {
    /// Why a raw (mu, nu) pair is not a valid membership value, if it isn't.
    pub fn violation(mu: f64, nu: f64) -> Option<String> {
        if !mu.is_finite() || !nu.is_finite() {
            return Some("membership values must be finite".into());
        }
        if mu <= 0.0 {
            return Some(format!("mu = {mu} must be positive"));
        }
        if mu > 1.0 {
            return Some(format!("mu = {mu} exceeds 1"));
        }
        if nu < 0.0 {
            return Some(format!("nu = {nu} is negative"));
        }
        if nu >= 1.0 {
            return Some(format!("nu = {nu} must stay below 1"));
        }
        // One ulp of slack: independent rounding of the two maps may push
        // an exact sum of 1 just past it.
        if mu + nu > 1.0 + 1e-12 {
            return Some(format!("mu + nu = {} exceeds 1", mu + nu));
        }
        None
    }

    fn new_at(mu: f64, nu: f64, x: &Vector, t: f64) -> Result<Self> {
        match Self::violation(mu, nu) {
            None => Ok(MembershipPair { mu, nu }),
            Some(detail) => Err(Error::MembershipViolation {
                mu,
                nu,
                x: x.entries().to_vec(),
                t,
                detail,
            }),
        }
    }
}

/// Map from (vector, positive time) to a raw membership degree.
pub type MembershipMap = Arc<dyn Fn(&Vector, f64) -> f64 + Send + Sync>;

/// A membership norm: two maps over V x R+ plus a label for reports.
#[derive(Clone)]
pub struct IFNorm {
    mu_map: MembershipMap,
    nu_map: MembershipMap,
    label: String,
}

impl IFNorm {
    pub fn custom(
        label: impl Into<String>,
        mu_map: impl Fn(&Vector, f64) -> f64 + Send + Sync + 'static,
        nu_map: impl Fn(&Vector, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        IFNorm {
            mu_map: Arc::new(mu_map),
            nu_map: Arc::new(nu_map),
            label: label.into(),
        }
    }

    /// The standard construction over a classical norm:
    /// mu(x, t) = t / (t + ||x||). nu is computed as 1 - mu, which keeps
    /// mu + nu = 1 exact in floating point.
    pub fn standard(norm: ClassicalNorm) -> Self {
        let label = format!("standard({})", norm.label());
        let norm_mu = norm.clone();
        let norm_nu = norm;
        let mu = move |x: &Vector, t: f64| match norm_mu.evaluate(x) {
            Ok(r) => t / (t + r),
            Err(_) => f64::NAN,
        };
        let nu = move |x: &Vector, t: f64| match norm_nu.evaluate(x) {
            Ok(r) => 1.0 - t / (t + r),
            Err(_) => f64::NAN,
        };
        IFNorm {
            mu_map: Arc::new(mu),
            nu_map: Arc::new(nu),
            label,
        }
    }

    pub fn mu_raw(&self, x: &Vector, t: f64) -> f64 {
        (self.mu_map)(x, t)
    }

    pub fn nu_raw(&self, x: &Vector, t: f64) -> f64 {
        (self.nu_map)(x, t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl std::fmt::Debug for IFNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IFNorm({})", self.label)
    }
}

/// Build the standard membership norm over a classical norm.
pub fn standard_ifnorm(norm: ClassicalNorm) -> IFNorm {
    IFNorm::standard(norm)
}

/// Ambient structure for every check: a dimension, a membership norm, and
/// the (t-norm, t-conorm) pair used by the addition laws.
#[derive(Debug, Clone)]
pub struct IFNSpace {
    dim: usize,
    norm: IFNorm,
    tnorm: TNorm,
    tconorm: TConorm,
}

/// Largest supported dimension; checks are desk-scale by construction.
pub const MAX_DIM: usize = 8;

impl IFNSpace {
    pub fn new(dim: usize, norm: IFNorm, tnorm: TNorm, tconorm: TConorm) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidParams {
                field: "dim".into(),
                message: format!("dimension must lie in 1..={MAX_DIM}, got {dim}"),
            });
        }
        Ok(IFNSpace {
            dim,
            norm,
            tnorm,
            tconorm,
        })
    }

    /// Standard-construction space over a classical norm with the given
    /// algebra pair.
    pub fn standard(
        dim: usize,
        classical: ClassicalNorm,
        tnorm: TNorm,
        tconorm: TConorm,
    ) -> Result<Self> {
        if let ClassicalNorm::Abs = classical {
            if dim != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    got: dim,
                });
            }
        }
        if let ClassicalNorm::WeightedEuclidean(w) = &classical {
            if w.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: w.len(),
                });
            }
        }
        IFNSpace::new(dim, IFNorm::standard(classical), tnorm, tconorm)
    }

    /// Dimension-1 space with the standard absolute-value norm and the
    /// (minimum, maximum) pair; the workhorse of the scalar checks.
    pub fn scalar_standard() -> IFNSpace {
        IFNSpace::standard(1, ClassicalNorm::Abs, TNorm::Minimum, TConorm::Maximum)
            .expect("static construction is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> &IFNorm {
        &self.norm
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn tconorm(&self) -> &TConorm {
        &self.tconorm
    }

    pub fn label(&self) -> String {
        format!(
            "{} on R^{} with ({}, {})",
            self.norm.label(),
            self.dim,
            self.tnorm.label(),
            self.tconorm.label()
        )
    }

    /// Evaluate the membership pair at (x, t), enforcing the pair
    /// invariants. Violating maps surface as errors carrying (x, t).
    pub fn membership(&self, x: &Vector, t: f64) -> Result<MembershipPair> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonPositiveT { t });
        }
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let mu = self.norm.mu_raw(x, t);
        let nu = self.norm.nu_raw(x, t);
        MembershipPair::new_at(mu, nu, x, t)
    }
}

/// Evaluate the membership pair of a space at (x, t).
pub fn membership(space: &IFNSpace, x: &Vector, t: f64) -> Result<MembershipPair> {
    space.membership(x, t)
}

/// The sixteen laws, in paper-free report vocabulary: lowercase roman ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IfnAxiom {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
    X,
    Xi,
    Xii,
    Xiii,
    Xiv,
    Xv,
    Xvi,
}

pub const ALL_IFN_AXIOMS: [IfnAxiom; 16] = [
    IfnAxiom::I,
    IfnAxiom::Ii,
    IfnAxiom::Iii,
    IfnAxiom::Iv,
    IfnAxiom::V,
    IfnAxiom::Vi,
    IfnAxiom::Vii,
    IfnAxiom::Viii,
    IfnAxiom::Ix,
    IfnAxiom::X,
    IfnAxiom::Xi,
    IfnAxiom::Xii,
    IfnAxiom::Xiii,
    IfnAxiom::Xiv,
    IfnAxiom::Xv,
    IfnAxiom::Xvi,
];

impl IfnAxiom {
    pub fn id(&self) -> &'static str {
        match self {
            IfnAxiom::I => "i",
            IfnAxiom::Ii => "ii",
            IfnAxiom::Iii => "iii",
            IfnAxiom::Iv => "iv",
            IfnAxiom::V => "v",
            IfnAxiom::Vi => "vi",
            IfnAxiom::Vii => "vii",
            IfnAxiom::Viii => "viii",
            IfnAxiom::Ix => "ix",
            IfnAxiom::X => "x",
            IfnAxiom::Xi => "xi",
            IfnAxiom::Xii => "xii",
            IfnAxiom::Xiii => "xiii",
            IfnAxiom::Xiv => "xiv",
            IfnAxiom::Xv => "xv",
            IfnAxiom::Xvi => "xvi",
        }
    }

    /// Limits at infinity and strict monotonicity are only sampled; their
    /// entries are flagged heuristic.
    pub fn is_heuristic(&self) -> bool {
        matches!(
            self,
            IfnAxiom::Vi | IfnAxiom::Xi | IfnAxiom::Xv | IfnAxiom::Xvi
        )
    }
}

/// Sample tuple reproducing an axiom violation.
#[derive(Debug, Clone, Serialize)]
pub struct IfnWitness {
    pub x: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
    pub c: Option<f64>,
    pub s: Option<f64>,
    pub t: Option<f64>,
    pub observed: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IfnAxiomOutcome {
    pub axiom: IfnAxiom,
    pub pass: bool,
    pub heuristic: bool,
    pub witness: Option<IfnWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub space_label: String,
    pub outcomes: Vec<IfnAxiomOutcome>,
    pub samples_used: usize,
    pub seed: u64,
}

impl AxiomReport {
    pub fn outcome(&self, axiom: IfnAxiom) -> &IfnAxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("all sixteen axioms are always reported")
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn non_heuristic_violations(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| !o.pass && !o.heuristic)
            .count()
    }
}

struct AxiomChecker<'a> {
    space: &'a IFNSpace,
    params: &'a CheckParams,
    samples_used: usize,
}

impl<'a> AxiomChecker<'a> {
    fn mu(&mut self, x: &Vector, t: f64) -> Result<f64> {
        self.samples_used += 1;
        let v = self.space.norm().mu_raw(x, t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEval {
                at: format!("mu({x}, {t})"),
            })
        }
    }

    fn nu(&mut self, x: &Vector, t: f64) -> Result<f64> {
        self.samples_used += 1;
        let v = self.space.norm().nu_raw(x, t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEval {
                at: format!("nu({x}, {t})"),
            })
        }
    }

    /// Fixed probes followed by seeded samples bounded away from the null
    /// vector; the null vector itself is handled by the axioms that name it.
    fn vector_pool(&self, count: usize, tag: u64) -> Vec<Vector> {
        let dim = self.space.dim();
        let mut pool = Vec::with_capacity(count + 4 * dim + 1);
        for i in 0..dim {
            pool.push(Vector::axis(dim, i));
            pool.push(Vector::axis(dim, i).scale(-1.0));
            pool.push(Vector::axis(dim, i).scale(10.0));
            pool.push(Vector::axis(dim, i).scale(0.1));
        }
        pool.push(Vector::new(vec![0.5; dim]).expect("constant vector is finite"));
        let mut stream = SampleStream::new(self.params.seed, tag);
        while pool.len() < count {
            pool.push(stream.nonnull_vector(dim, -10.0, 10.0, 0.01));
        }
        pool
    }

    fn times_for(&self, stream: &mut SampleStream) -> Vec<f64> {
        let mut times = self.params.t_grid.clone();
        times.push(stream.positive_time());
        times
    }

    fn scalar_pool(&self, count: usize, tag: u64) -> Vec<f64> {
        let mut pool = vec![1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 10.0, -10.0];
        let mut stream = SampleStream::new(self.params.seed, tag);
        while pool.len() < count {
            pool.push(stream.nonzero_scalar());
        }
        pool
    }

    /// mu + nu <= 1 on all samples, the null vector included.
    fn check_sum_bound(&mut self) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mut pool = self.vector_pool(self.params.sample_count, 0x21);
        pool.push(Vector::zero(self.space.dim()));
        let mut stream = SampleStream::new(self.params.seed, 0x21 ^ 0xFF);
        for x in &pool {
            for t in self.times_for(&mut stream) {
                let mu = self.mu(x, t)?;
                let nu = self.nu(x, t)?;
                if mu + nu > 1.0 + tol {
                    return Ok(fail_at(IfnAxiom::I)
                        .x(x)
                        .t(t)
                        .observed(vec![mu, nu, mu + nu]));
                }
            }
        }
        Ok(pass_at(IfnAxiom::I))
    }

    /// Range of a single membership map: mu in (0, 1] or nu in [0, 1).
    fn check_range(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let mu_side = axiom == IfnAxiom::Ii;
        let mut pool = self.vector_pool(self.params.sample_count, 0x22);
        pool.push(Vector::zero(self.space.dim()));
        let mut stream = SampleStream::new(self.params.seed, 0x22 ^ 0xFF);
        for x in &pool {
            for t in self.times_for(&mut stream) {
                let v = if mu_side {
                    self.mu(x, t)?
                } else {
                    self.nu(x, t)?
                };
                let ok = if mu_side {
                    v > 0.0 && v <= 1.0
                } else {
                    (0.0..1.0).contains(&v)
                };
                if !ok {
                    return Ok(fail_at(axiom).x(x).t(t).observed(vec![v]));
                }
            }
        }
        Ok(pass_at(axiom))
    }

    /// mu = 1 exactly at the null vector and nowhere else (nu = 0 dually).
    fn check_null_characterization(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mu_side = axiom == IfnAxiom::Iii;
        let theta = Vector::zero(self.space.dim());
        let mut stream = SampleStream::new(self.params.seed, 0x23 ^ 0xFF);
        for t in self.times_for(&mut stream) {
            let v = if mu_side {
                self.mu(&theta, t)?
            } else {
                self.nu(&theta, t)?
            };
            let target = if mu_side { 1.0 } else { 0.0 };
            if (v - target).abs() > tol {
                return Ok(fail_at(axiom).x(&theta).t(t).observed(vec![v]));
            }
        }
        let pool = self.vector_pool(self.params.sample_count, 0x23);
        for x in &pool {
            for t in self.times_for(&mut stream) {
                let v = if mu_side {
                    self.mu(x, t)?
                } else {
                    self.nu(x, t)?
                };
                let saturated = if mu_side { v >= 1.0 - tol } else { v <= tol };
                if saturated {
                    return Ok(fail_at(axiom).x(x).t(t).observed(vec![v]));
                }
            }
        }
        Ok(pass_at(axiom))
    }

    /// Scaling law: value at (c x, t) equals value at (x, t / |c|).
    fn check_scaling(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mu_side = axiom == IfnAxiom::Iv;
        let pool = self.vector_pool(self.params.sample_count, 0x24);
        let scalars = self.scalar_pool(pool.len(), 0x24 ^ 0xAB);
        let mut stream = SampleStream::new(self.params.seed, 0x24 ^ 0xFF);
        for (x, &c) in pool.iter().zip(scalars.iter().cycle()) {
            for t in self.times_for(&mut stream) {
                let scaled = x.scale(c);
                let lhs = if mu_side {
                    self.mu(&scaled, t)?
                } else {
                    self.nu(&scaled, t)?
                };
                let rhs_t = t / c.abs();
                let rhs = if mu_side {
                    self.mu(x, rhs_t)?
                } else {
                    self.nu(x, rhs_t)?
                };
                if (lhs - rhs).abs() > tol {
                    return Ok(fail_at(axiom).x(x).c(c).t(t).observed(vec![lhs, rhs]));
                }
            }
        }
        Ok(pass_at(axiom))
    }

    /// Addition law: mu(x, s) * mu(y, t) <= mu(x + y, s + t), and the
    /// t-conorm-side dual with the inequality reversed.
    fn check_addition(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mu_side = axiom == IfnAxiom::V;
        let pool = self.vector_pool(self.params.sample_count, 0x25);
        let mut stream = SampleStream::new(self.params.seed, 0x25 ^ 0xFF);
        let times = {
            let mut grid = self.params.t_grid.clone();
            grid.push(stream.positive_time());
            grid
        };
        for (i, x) in pool.iter().enumerate() {
            let y = &pool[(i + 1) % pool.len()];
            let sum = x.add(y)?;
            let s = times[stream.index(times.len())];
            let t = times[stream.index(times.len())];
            if mu_side {
                let mx = self.mu(x, s)?;
                let my = self.mu(y, t)?;
                let combined = self
                    .space
                    .tnorm()
                    .eval_f64(mx.clamp(0.0, 1.0), my.clamp(0.0, 1.0))?;
                let bound = self.mu(&sum, s + t)?;
                if combined > bound + tol {
                    return Ok(fail_at(axiom)
                        .x(x)
                        .y(y)
                        .s(s)
                        .t(t)
                        .observed(vec![combined, bound]));
                }
            } else {
                let nx = self.nu(x, s)?;
                let ny = self.nu(y, t)?;
                let combined = self
                    .space
                    .tconorm()
                    .eval_f64(nx.clamp(0.0, 1.0), ny.clamp(0.0, 1.0))?;
                let bound = self.nu(&sum, s + t)?;
                if combined < bound - tol {
                    return Ok(fail_at(axiom)
                        .x(x)
                        .y(y)
                        .s(s)
                        .t(t)
                        .observed(vec![combined, bound]));
                }
            }
        }
        Ok(pass_at(axiom))
    }

    /// Monotonicity over the t-grid plus the heuristic limit at t_max.
    fn check_time_monotonicity(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mu_side = axiom == IfnAxiom::Vi;
        let pool = self.vector_pool(self.params.sample_count, 0x26);
        for x in &pool {
            for pair in self.params.t_grid.windows(2) {
                let (t0, t1) = (pair[0], pair[1]);
                let v0 = if mu_side {
                    self.mu(x, t0)?
                } else {
                    self.nu(x, t0)?
                };
                let v1 = if mu_side {
                    self.mu(x, t1)?
                } else {
                    self.nu(x, t1)?
                };
                let ok = if mu_side {
                    v1 >= v0 - tol
                } else {
                    v1 <= v0 + tol
                };
                if !ok {
                    return Ok(fail_at(axiom).x(x).s(t0).t(t1).observed(vec![v0, v1]));
                }
            }
            let at_big = if mu_side {
                self.mu(x, self.params.t_max)?
            } else {
                self.nu(x, self.params.t_max)?
            };
            let ok = if mu_side {
                at_big >= 1.0 - self.params.limit_tol
            } else {
                at_big <= self.params.limit_tol
            };
            if !ok {
                return Ok(fail_at(axiom)
                    .x(x)
                    .t(self.params.t_max)
                    .observed(vec![at_big]));
            }
        }
        Ok(pass_at(axiom))
    }

    /// Idempotency of the space's algebra pair on unit-interval probes.
    fn check_idempotency(&mut self) -> Result<IfnAxiomOutcome> {
        let tol = self.params.algebra_tol;
        let mut values = vec![0.0, 1.0, 0.5, 0.1, 0.25, 0.75, 0.9];
        let mut stream = SampleStream::new(self.params.seed, 0x2C);
        while values.len() < self.params.sample_count {
            values.push(stream.unit_interval());
        }
        for &a in &values {
            let star = self.space.tnorm().eval_f64(a, a)?;
            if (star - a).abs() > tol {
                return Ok(fail_at(IfnAxiom::Xii).c(a).observed(vec![star, a]));
            }
            let diamond = self.space.tconorm().eval_f64(a, a)?;
            if (diamond - a).abs() > tol {
                return Ok(fail_at(IfnAxiom::Xii).c(a).observed(vec![diamond, a]));
            }
        }
        Ok(pass_at(IfnAxiom::Xii))
    }

    /// Strictness away from the null vector: every nonnull sample must show
    /// some grid time where mu drops below 1 (nu rises above 0).
    fn check_strictness(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let strict = self.params.strict_tol;
        let mu_side = axiom == IfnAxiom::Xiii;
        let pool = self.vector_pool(self.params.sample_count, 0x2D);
        for x in &pool {
            let mut found = false;
            let mut last = f64::NAN;
            for &t in &self.params.t_grid {
                let v = if mu_side {
                    self.mu(x, t)?
                } else {
                    self.nu(x, t)?
                };
                last = v;
                let witness_found = if mu_side {
                    v < 1.0 - strict
                } else {
                    v > strict
                };
                if witness_found {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(fail_at(axiom).x(x).observed(vec![last]));
            }
        }
        Ok(pass_at(axiom))
    }

    /// Strict monotonicity on adjacent grid times where the value is
    /// interior to (0, 1).
    fn check_strict_monotonicity(&mut self, axiom: IfnAxiom) -> Result<IfnAxiomOutcome> {
        let mu_side = axiom == IfnAxiom::Xv;
        let pool = self.vector_pool(self.params.sample_count, 0x2E);
        for x in &pool {
            for pair in self.params.t_grid.windows(2) {
                let (t0, t1) = (pair[0], pair[1]);
                let v0 = if mu_side {
                    self.mu(x, t0)?
                } else {
                    self.nu(x, t0)?
                };
                let v1 = if mu_side {
                    self.mu(x, t1)?
                } else {
                    self.nu(x, t1)?
                };
                let interior = v0 > 0.0 && v0 < 1.0 && v1 > 0.0 && v1 < 1.0;
                if !interior {
                    continue;
                }
                let ok = if mu_side { v1 > v0 } else { v1 < v0 };
                if !ok {
                    return Ok(fail_at(axiom).x(x).s(t0).t(t1).observed(vec![v0, v1]));
                }
            }
        }
        Ok(pass_at(axiom))
    }
}

struct OutcomeBuilder {
    axiom: IfnAxiom,
    witness: IfnWitness,
}

impl OutcomeBuilder {
    fn x(mut self, x: &Vector) -> Self {
        self.witness.x = Some(x.entries().to_vec());
        self
    }

    fn y(mut self, y: &Vector) -> Self {
        self.witness.y = Some(y.entries().to_vec());
        self
    }

    fn c(mut self, c: f64) -> Self {
        self.witness.c = Some(c);
        self
    }

    fn s(mut self, s: f64) -> Self {
        self.witness.s = Some(s);
        self
    }

    fn t(mut self, t: f64) -> Self {
        self.witness.t = Some(t);
        self
    }

    fn observed(mut self, observed: Vec<f64>) -> IfnAxiomOutcome {
        self.witness.observed = observed;
        IfnAxiomOutcome {
            axiom: self.axiom,
            pass: false,
            heuristic: self.axiom.is_heuristic(),
            witness: Some(self.witness),
        }
    }
}

fn fail_at(axiom: IfnAxiom) -> OutcomeBuilder {
    OutcomeBuilder {
        axiom,
        witness: IfnWitness {
            x: None,
            y: None,
            c: None,
            s: None,
            t: None,
            observed: vec![],
        },
    }
}

fn pass_at(axiom: IfnAxiom) -> IfnAxiomOutcome {
    IfnAxiomOutcome {
        axiom,
        pass: true,
        heuristic: axiom.is_heuristic(),
        witness: None,
    }
}

/// Sampled verification of all sixteen membership-norm laws.
pub fn check_ifn_axioms(space: &IFNSpace, params: &CheckParams) -> Result<AxiomReport> {
    let params = params.normalized()?;
    let mut checker = AxiomChecker {
        space,
        params: &params,
        samples_used: 0,
    };
    let outcomes = vec![
        checker.check_sum_bound()?,
        checker.check_range(IfnAxiom::Ii)?,
        checker.check_null_characterization(IfnAxiom::Iii)?,
        checker.check_scaling(IfnAxiom::Iv)?,
        checker.check_addition(IfnAxiom::V)?,
        checker.check_time_monotonicity(IfnAxiom::Vi)?,
        checker.check_range(IfnAxiom::Vii)?,
        checker.check_null_characterization(IfnAxiom::Viii)?,
        checker.check_scaling(IfnAxiom::Ix)?,
        checker.check_addition(IfnAxiom::X)?,
        checker.check_time_monotonicity(IfnAxiom::Xi)?,
        checker.check_idempotency()?,
        checker.check_strictness(IfnAxiom::Xiii)?,
        checker.check_strictness(IfnAxiom::Xiv)?,
        checker.check_strict_monotonicity(IfnAxiom::Xv)?,
        checker.check_strict_monotonicity(IfnAxiom::Xvi)?,
    ];
    Ok(AxiomReport {
        space_label: space.label(),
        outcomes,
        samples_used: checker.samples_used,
        seed: params.seed,
    })
}
