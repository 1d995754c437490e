//! Continuous t-norms and t-conorms as first-class values, with sampled
//! axiom verification.
//!
//! Built-in kinds evaluate their closed forms with care for two exactness
//! guarantees the rest of the crate leans on: evaluation is bit-commutative,
//! and the identity laws a * 1 = a, a <> 0 = a hold exactly in floating
//! point.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::CheckParams;
use crate::sample::SampleStream;
use crate::unit::UnitInterval;

/// Binary map on the unit interval supplied by the caller.
pub type CustomOp = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Triangular norm: the conjunction-like operation of a membership algebra.
#[derive(Clone)]
pub enum TNorm {
    Minimum,
    Product,
    /// max(a + b - 1, 0)
    Lukasiewicz,
    Custom {
        label: String,
        op: CustomOp,
    },
}

/// Triangular conorm: the disjunction-like dual with identity 0.
#[derive(Clone)]
pub enum TConorm {
    Maximum,
    /// a + b - ab
    ProbabilisticSum,
    /// min(a + b, 1)
    BoundedSum,
    Custom {
        label: String,
        op: CustomOp,
    },
}

impl TNorm {
    pub fn custom(
        label: impl Into<String>,
        op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TNorm::Custom {
            label: label.into(),
            op: Arc::new(op),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TNorm::Minimum => "minimum".into(),
            TNorm::Product => "product".into(),
            TNorm::Lukasiewicz => "lukasiewicz".into(),
            TNorm::Custom { label, .. } => format!("custom({label})"),
        }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self, TNorm::Custom { .. })
    }

    pub fn eval(&self, a: UnitInterval, b: UnitInterval) -> Result<UnitInterval> {
        let (a, b) = (a.value(), b.value());
        let value = match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => {
                // Identity cases kept exact; the generic branch rounds
                // a + b before subtracting 1.
                if b == 1.0 {
                    a
                } else if a == 1.0 {
                    b
                } else {
                    (a + b - 1.0).max(0.0)
                }
            }
            TNorm::Custom { label, op } => {
                let v = op(a, b);
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::OperatorRange {
                        op: format!("custom t-norm '{label}'"),
                        a,
                        b,
                        value: v,
                    });
                }
                v
            }
        };
        UnitInterval::new(value)
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self
            .eval(UnitInterval::new(a)?, UnitInterval::new(b)?)?
            .value())
    }
}

impl TConorm {
    pub fn custom(
        label: impl Into<String>,
        op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TConorm::Custom {
            label: label.into(),
            op: Arc::new(op),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TConorm::Maximum => "maximum".into(),
            TConorm::ProbabilisticSum => "probabilistic-sum".into(),
            TConorm::BoundedSum => "bounded-sum".into(),
            TConorm::Custom { label, .. } => format!("custom({label})"),
        }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self, TConorm::Custom { .. })
    }

    pub fn eval(&self, a: UnitInterval, b: UnitInterval) -> Result<UnitInterval> {
        let (a, b) = (a.value(), b.value());
        let value = match self {
            TConorm::Maximum => a.max(b),
            // (a + b) - ab is symmetric in (a, b) and exact at b = 0; the
            // clamp shaves at most one ulp of upward rounding.
            TConorm::ProbabilisticSum => ((a + b) - a * b).min(1.0),
            TConorm::BoundedSum => (a + b).min(1.0),
            TConorm::Custom { label, op } => {
                let v = op(a, b);
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::OperatorRange {
                        op: format!("custom t-conorm '{label}'"),
                        a,
                        b,
                        value: v,
                    });
                }
                v
            }
        };
        UnitInterval::new(value)
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self
            .eval(UnitInterval::new(a)?, UnitInterval::new(b)?)?
            .value())
    }
}

impl std::fmt::Debug for TNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TNorm({})", self.label())
    }
}

impl std::fmt::Debug for TConorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TConorm({})", self.label())
    }
}

/// Evaluate a t-norm on unit-interval operands.
pub fn eval_tnorm(op: &TNorm, a: UnitInterval, b: UnitInterval) -> Result<UnitInterval> {
    op.eval(a, b)
}

/// Evaluate a t-conorm on unit-interval operands.
pub fn eval_tconorm(op: &TConorm, a: UnitInterval, b: UnitInterval) -> Result<UnitInterval> {
    op.eval(a, b)
}

/// Axioms covered by the sampled algebra check. Idempotency is
/// supplemental: its failure is reported but does not fail the core set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraAxiom {
    Commutative,
    Associative,
    Boundary,
    Monotone,
    Idempotent,
}

pub const CORE_ALGEBRA_AXIOMS: [AlgebraAxiom; 4] = [
    AlgebraAxiom::Commutative,
    AlgebraAxiom::Associative,
    AlgebraAxiom::Boundary,
    AlgebraAxiom::Monotone,
];

/// Inputs and observed values of a failed sample. Re-evaluating the
/// operation on the stored inputs reproduces the violation.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraWitness {
    pub a: f64,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub observed: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomOutcome {
    pub axiom: AlgebraAxiom,
    pub pass: bool,
    pub witness: Option<AlgebraWitness>,
}

/// Outcome of the modulus-of-continuity heuristic: bounded output jumps
/// under input perturbations no larger than `step`.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityOutcome {
    pub pass: bool,
    pub heuristic: bool,
    pub step: f64,
    pub bound: f64,
    pub witness: Option<AlgebraWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraCheckReport {
    pub op_label: String,
    pub axiom_results: Vec<AxiomOutcome>,
    pub continuity: ContinuityOutcome,
    pub samples_used: usize,
    pub seed: u64,
}

impl AlgebraCheckReport {
    pub fn outcome(&self, axiom: AlgebraAxiom) -> &AxiomOutcome {
        self.axiom_results
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("all axioms are always reported")
    }

    /// Commutativity, associativity, boundary, monotonicity and the
    /// continuity heuristic; idempotency is excluded by design.
    pub fn core_axioms_pass(&self) -> bool {
        CORE_ALGEBRA_AXIOMS
            .iter()
            .all(|axiom| self.outcome(*axiom).pass)
            && self.continuity.pass
    }

    pub fn idempotent_passes(&self) -> bool {
        self.outcome(AlgebraAxiom::Idempotent).pass
    }
}

/// Fixed probe values tried before any seeded sample, in this order. The
/// leading 0, 1, 0.5 make witnesses of the common failures deterministic
/// (a non-idempotent operation is caught at exactly a = 0.5).
const UNIT_PROBES: [f64; 12] = [0.0, 1.0, 0.5, 0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9, 0.25];

struct AlgebraChecker<'a> {
    eval: Box<dyn Fn(f64, f64) -> Result<f64> + 'a>,
    identity: f64,
    tol: f64,
    params: &'a CheckParams,
    samples_used: usize,
}

impl<'a> AlgebraChecker<'a> {
    fn op(&mut self, a: f64, b: f64) -> Result<f64> {
        self.samples_used += 1;
        (self.eval)(a, b)
    }

    fn values(&mut self, count: usize, tag: u64) -> Vec<f64> {
        let mut stream = SampleStream::new(self.params.seed, tag);
        let mut out: Vec<f64> = UNIT_PROBES.to_vec();
        out.extend((0..count).map(|_| stream.unit_interval()));
        out
    }

    fn check_commutative(&mut self) -> Result<AxiomOutcome> {
        let values = self.values(self.params.sample_count, 0x11);
        for (i, &a) in values.iter().enumerate() {
            // Pair each value with its successor so probe pairs come first.
            let b = values[(i + 1) % values.len()];
            let ab = self.op(a, b)?;
            let ba = self.op(b, a)?;
            if (ab - ba).abs() > self.tol {
                return Ok(fail(
                    AlgebraAxiom::Commutative,
                    a,
                    Some(b),
                    None,
                    None,
                    vec![ab, ba],
                ));
            }
        }
        Ok(pass(AlgebraAxiom::Commutative))
    }

    fn check_associative(&mut self) -> Result<AxiomOutcome> {
        let values = self.values(self.params.sample_count, 0x12);
        for (i, &a) in values.iter().enumerate() {
            let b = values[(i + 1) % values.len()];
            let c = values[(i + 2) % values.len()];
            let ab = self.op(a, b)?;
            let left = self.op(ab, c)?;
            let bc = self.op(b, c)?;
            let right = self.op(a, bc)?;
            if (left - right).abs() > self.tol {
                return Ok(fail(
                    AlgebraAxiom::Associative,
                    a,
                    Some(b),
                    Some(c),
                    None,
                    vec![left, right],
                ));
            }
        }
        Ok(pass(AlgebraAxiom::Associative))
    }

    fn check_boundary(&mut self) -> Result<AxiomOutcome> {
        let values = self.values(self.params.sample_count, 0x13);
        let identity = self.identity;
        for &a in &values {
            let v = self.op(a, identity)?;
            if (v - a).abs() > self.tol {
                return Ok(fail(
                    AlgebraAxiom::Boundary,
                    a,
                    Some(identity),
                    None,
                    None,
                    vec![v, a],
                ));
            }
        }
        Ok(pass(AlgebraAxiom::Boundary))
    }

    fn check_monotone(&mut self) -> Result<AxiomOutcome> {
        let values = self.values(self.params.sample_count, 0x14);
        for (i, &x) in values.iter().enumerate() {
            let y = values[(i + 1) % values.len()];
            let z = values[(i + 2) % values.len()];
            let w = values[(i + 3) % values.len()];
            let (a, c) = (x.min(z), x.max(z));
            let (b, d) = (y.min(w), y.max(w));
            let low = self.op(a, b)?;
            let high = self.op(c, d)?;
            if low > high + self.tol {
                return Ok(fail(
                    AlgebraAxiom::Monotone,
                    a,
                    Some(b),
                    Some(c),
                    Some(d),
                    vec![low, high],
                ));
            }
        }
        Ok(pass(AlgebraAxiom::Monotone))
    }

    fn check_idempotent(&mut self) -> Result<AxiomOutcome> {
        let values = self.values(self.params.sample_count, 0x15);
        for &a in &values {
            let v = self.op(a, a)?;
            if (v - a).abs() > self.tol {
                return Ok(fail(
                    AlgebraAxiom::Idempotent,
                    a,
                    None,
                    None,
                    None,
                    vec![v, a],
                ));
            }
        }
        Ok(pass(AlgebraAxiom::Idempotent))
    }

    fn check_continuity(&mut self) -> Result<ContinuityOutcome> {
        let step = self.params.continuity_step;
        let bound = self.params.continuity_bound;
        let mut stream = SampleStream::new(self.params.seed, 0x16);
        let count = self.params.sample_count.max(1);
        for _ in 0..count {
            let a = stream.unit_interval();
            let b = stream.unit_interval();
            let a2 = (a + stream.uniform(-step, step)).clamp(0.0, 1.0);
            let b2 = (b + stream.uniform(-step, step)).clamp(0.0, 1.0);
            let v = self.op(a, b)?;
            let v2 = self.op(a2, b2)?;
            if (v - v2).abs() > bound {
                return Ok(ContinuityOutcome {
                    pass: false,
                    heuristic: true,
                    step,
                    bound,
                    witness: Some(AlgebraWitness {
                        a,
                        b: Some(b),
                        c: Some(a2),
                        d: Some(b2),
                        observed: vec![v, v2],
                    }),
                });
            }
        }
        Ok(ContinuityOutcome {
            pass: true,
            heuristic: true,
            step,
            bound,
            witness: None,
        })
    }

    fn run(mut self, label: String) -> Result<AlgebraCheckReport> {
        let axiom_results = vec![
            self.check_commutative()?,
            self.check_associative()?,
            self.check_boundary()?,
            self.check_monotone()?,
            self.check_idempotent()?,
        ];
        let continuity = self.check_continuity()?;
        Ok(AlgebraCheckReport {
            op_label: label,
            axiom_results,
            continuity,
            samples_used: self.samples_used,
            seed: self.params.seed,
        })
    }
}

fn pass(axiom: AlgebraAxiom) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        pass: true,
        witness: None,
    }
}

fn fail(
    axiom: AlgebraAxiom,
    a: f64,
    b: Option<f64>,
    c: Option<f64>,
    d: Option<f64>,
    observed: Vec<f64>,
) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        pass: false,
        witness: Some(AlgebraWitness {
            a,
            b,
            c,
            d,
            observed,
        }),
    }
}

fn effective_tol(params: &CheckParams, custom: bool) -> f64 {
    if custom {
        params.algebra_tol.max(1e-9)
    } else {
        params.algebra_tol
    }
}

/// Sampled verification of the t-norm laws: commutativity, associativity,
/// the identity a * 1 = a, joint monotonicity and (separately) idempotency,
/// plus a modulus-of-continuity heuristic.
pub fn check_tnorm_axioms(op: &TNorm, params: &CheckParams) -> Result<AlgebraCheckReport> {
    let params = params.normalized()?;
    let tol = effective_tol(&params, op.is_custom());
    let op_ref = op.clone();
    let checker = AlgebraChecker {
        eval: Box::new(move |a, b| op_ref.eval_f64(a, b)),
        identity: 1.0,
        tol,
        params: &params,
        samples_used: 0,
    };
    checker.run(op.label())
}

/// Mirror of [`check_tnorm_axioms`] with the t-conorm identity a <> 0 = a.
pub fn check_tconorm_axioms(op: &TConorm, params: &CheckParams) -> Result<AlgebraCheckReport> {
    let params = params.normalized()?;
    let tol = effective_tol(&params, op.is_custom());
    let op_ref = op.clone();
    let checker = AlgebraChecker {
        eval: Box::new(move |a, b| op_ref.eval_f64(a, b)),
        identity: 0.0,
        tol,
        params: &params,
        samples_used: 0,
    };
    checker.run(op.label())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> CheckParams {
        CheckParams::default().with_sample_count(2000)
    }

    #[test]
    fn builtin_tnorm_values() {
        assert_eq!(TNorm::Product.eval_f64(0.5, 0.4).unwrap(), 0.2);
        assert_eq!(TNorm::Minimum.eval_f64(0.37, 1.0).unwrap(), 0.37);
        assert_eq!(TNorm::Lukasiewicz.eval_f64(0.5, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn builtin_tconorm_values() {
        let v = TConorm::ProbabilisticSum.eval_f64(0.5, 0.4).unwrap();
        assert!((v - 0.7).abs() < 1e-15, "{v}");
        assert_eq!(TConorm::Maximum.eval_f64(0.3, 0.0).unwrap(), 0.3);
        assert_eq!(TConorm::BoundedSum.eval_f64(0.7, 0.6).unwrap(), 1.0);
    }

    #[test]
    fn identity_laws_are_exact() {
        let mut stream = SampleStream::new(7, 0);
        for _ in 0..500 {
            let a = stream.unit_interval();
            for op in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
                assert_eq!(op.eval_f64(a, 1.0).unwrap(), a, "{op:?}");
            }
            for op in [
                TConorm::Maximum,
                TConorm::ProbabilisticSum,
                TConorm::BoundedSum,
            ] {
                assert_eq!(op.eval_f64(a, 0.0).unwrap(), a, "{op:?}");
            }
        }
    }

    #[test]
    fn minimum_passes_everything() {
        let report = check_tnorm_axioms(&TNorm::Minimum, &params()).unwrap();
        assert!(report.core_axioms_pass());
        assert!(report.idempotent_passes());
    }

    #[test]
    fn product_fails_idempotency_at_one_half() {
        let report = check_tnorm_axioms(&TNorm::Product, &params()).unwrap();
        assert!(report.core_axioms_pass());
        assert!(!report.idempotent_passes());
        let witness = report
            .outcome(AlgebraAxiom::Idempotent)
            .witness
            .as_ref()
            .unwrap();
        assert_eq!(witness.a, 0.5);
        assert_eq!(witness.observed[0], 0.25);
    }

    #[test]
    fn lukasiewicz_passes_core_axioms() {
        let report = check_tnorm_axioms(&TNorm::Lukasiewicz, &params()).unwrap();
        assert!(report.core_axioms_pass());
        assert!(!report.idempotent_passes());
    }

    #[test]
    fn conorm_reports() {
        let max = check_tconorm_axioms(&TConorm::Maximum, &params()).unwrap();
        assert!(max.core_axioms_pass() && max.idempotent_passes());

        let psum = check_tconorm_axioms(&TConorm::ProbabilisticSum, &params()).unwrap();
        assert!(psum.core_axioms_pass());
        assert!(!psum.idempotent_passes());
        let witness = psum
            .outcome(AlgebraAxiom::Idempotent)
            .witness
            .as_ref()
            .unwrap();
        assert_eq!(witness.a, 0.5);
        assert_eq!(witness.observed[0], 0.75);

        let bsum = check_tconorm_axioms(&TConorm::BoundedSum, &params()).unwrap();
        assert!(bsum.core_axioms_pass());
    }

    #[test]
    fn asymmetric_custom_op_fails_commutativity_with_reproducing_witness() {
        let op = TNorm::custom("a*b^2", |a, b| a * b * b);
        // Direct evaluation of both orders at the documented probe.
        assert!((op.eval_f64(0.5, 0.8).unwrap() - 0.32).abs() < 1e-15);
        assert!((op.eval_f64(0.8, 0.5).unwrap() - 0.2).abs() < 1e-15);

        let report = check_tnorm_axioms(&op, &params()).unwrap();
        let outcome = report.outcome(AlgebraAxiom::Commutative);
        assert!(!outcome.pass);
        let w = outcome.witness.as_ref().unwrap();
        let (a, b) = (w.a, w.b.unwrap());
        let ab = op.eval_f64(a, b).unwrap();
        let ba = op.eval_f64(b, a).unwrap();
        assert!((ab - ba).abs() > 1e-9, "witness must re-fail: {ab} vs {ba}");
        assert_eq!(ab, w.observed[0]);
        assert_eq!(ba, w.observed[1]);
    }

    #[test]
    fn custom_out_of_range_is_an_evaluation_error() {
        let op = TNorm::custom("overflowing", |a, b| a + b + 0.5);
        let err = op.eval_f64(0.9, 0.9).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("0.9"), "{msg}");
        assert!(check_tnorm_axioms(&op, &params()).is_err());
    }

    #[test]
    fn de_morgan_for_the_min_max_pair() {
        // Self-consistency probe, not a named law of the algebra under test.
        let mut stream = SampleStream::new(11, 0);
        for _ in 0..500 {
            let a = stream.unit_interval();
            let b = stream.unit_interval();
            let lhs = 1.0 - TNorm::Minimum.eval_f64(a, b).unwrap();
            let rhs = TConorm::Maximum.eval_f64(1.0 - a, 1.0 - b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
