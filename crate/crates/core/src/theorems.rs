//! Named, runnable theorem checks over the fixed battery.
//!
//! Each theorem instantiates finitely many battery cases plus paired
//! negative controls (perturbed candidates that must fail). A suite passes
//! only when every positive case passes and every control is rejected, so a
//! checker that silently accepts everything cannot go green. Results are
//! battery-certified: fixed instances plus seeded samples, not proofs.

use serde::Serialize;

use crate::battery::{default_registry, Registry, SCALAR_BATTERY_POINTS, SMOOTH_SCALAR_BATTERY};
use crate::derivatives::{
    sampled_operator_distance, verify_frechet, verify_gateaux, verify_scalar_derivative,
    DerivativeReport,
};
use crate::error::{Error, Result};
use crate::functions::{
    compose_operators, linear_combination_operator, linear_combination_scalar, scalar_to_operator,
    LinearOperator, OperatorFunction, ScalarFunction,
};
use crate::limits::Verdict;
use crate::params::CheckParams;
use crate::sample::SampleStream;
use crate::space::{check_ifn_axioms, IFNSpace};
use crate::tnorm::{check_tconorm_axioms, check_tnorm_axioms, TConorm, TNorm};
use crate::vector::{ClassicalNorm, Vector};

/// The runnable theorem checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    ScalarLinearity,
    GateauxUniqueness,
    GateauxLinearity,
    FrechetUniqueness,
    FrechetImpliesGateaux,
    ChainRule,
    ScalarFrechetEquivalence,
}

pub const ALL_THEOREMS: [TheoremId; 7] = [
    TheoremId::ScalarLinearity,
    TheoremId::GateauxUniqueness,
    TheoremId::GateauxLinearity,
    TheoremId::FrechetUniqueness,
    TheoremId::FrechetImpliesGateaux,
    TheoremId::ChainRule,
    TheoremId::ScalarFrechetEquivalence,
];

impl TheoremId {
    pub fn id(&self) -> &'static str {
        match self {
            TheoremId::ScalarLinearity => "scalar_linearity",
            TheoremId::GateauxUniqueness => "gateaux_uniqueness",
            TheoremId::GateauxLinearity => "gateaux_linearity",
            TheoremId::FrechetUniqueness => "frechet_uniqueness",
            TheoremId::FrechetImpliesGateaux => "frechet_implies_gateaux",
            TheoremId::ChainRule => "chain_rule",
            TheoremId::ScalarFrechetEquivalence => "scalar_frechet_equivalence",
        }
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        ALL_THEOREMS
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem { id: s.to_string() })
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Algebra pair the battery spaces are built with.
#[derive(Debug, Clone)]
pub struct SuiteEnv {
    pub tnorm: TNorm,
    pub tconorm: TConorm,
}

impl Default for SuiteEnv {
    fn default() -> Self {
        SuiteEnv {
            tnorm: TNorm::Minimum,
            tconorm: TConorm::Maximum,
        }
    }
}

/// One executed case: a battery instance or its paired negative control.
#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub kind: String,
    pub case_id: String,
    pub group: String,
    pub descriptor: String,
    pub expected: Verdict,
    pub observed: Verdict,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite_id: String,
    pub cases: Vec<CaseResult>,
    pub verdict: Verdict,
    pub params: CheckParams,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn counts(&self) -> (usize, usize) {
        let ok = self.cases.iter().filter(|c| c.ok).count();
        (self.cases.len(), ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.ok)
    }

    pub fn cases_in_group(&self, group: &str) -> impl Iterator<Item = &CaseResult> + '_ {
        let group = group.to_string();
        self.cases.iter().filter(move |c| c.group == group)
    }
}

fn case(
    group: &str,
    case_id: String,
    descriptor: String,
    expected: Verdict,
    observed: Verdict,
    witness: Option<String>,
) -> CaseResult {
    CaseResult {
        kind: "case".into(),
        case_id,
        group: group.into(),
        descriptor,
        expected,
        observed,
        ok: expected == observed,
        witness,
    }
}

fn deficit_witness(report: &DerivativeReport) -> Option<String> {
    report.worst_profile().map(|p| {
        format!(
            "worst profile '{}': final deficit {:.3e} at t = {}",
            p.label, p.final_deficit, p.worst_t
        )
    })
}

struct Battery<'a> {
    registry: Registry,
    env: &'a SuiteEnv,
    params: CheckParams,
}

impl<'a> Battery<'a> {
    fn new(env: &'a SuiteEnv, params: &CheckParams) -> Result<Self> {
        Ok(Battery {
            registry: default_registry(),
            env,
            params: params.normalized()?,
        })
    }

    fn space(&self, dim: usize) -> Result<IFNSpace> {
        let norm = if dim == 1 {
            ClassicalNorm::Abs
        } else {
            ClassicalNorm::Euclidean
        };
        IFNSpace::standard(dim, norm, self.env.tnorm.clone(), self.env.tconorm.clone())
    }

    fn verify_scalar(
        &self,
        f: &ScalarFunction,
        x0: f64,
        candidate: f64,
    ) -> Result<DerivativeReport> {
        let u = self.space(1)?;
        let v = self.space(1)?;
        verify_scalar_derivative(f, x0, candidate, (&u, &v), &self.params)
    }

    fn verify_gateaux_at(
        &self,
        t: &OperatorFunction,
        x0: &Vector,
        g: &LinearOperator,
    ) -> Result<DerivativeReport> {
        let u = self.space(t.domain_dim())?;
        let v = self.space(t.codomain_dim())?;
        verify_gateaux(t, x0, g, (&u, &v), &self.params, &[])
    }

    fn verify_frechet_at(
        &self,
        t: &OperatorFunction,
        x0: &Vector,
        f: &LinearOperator,
    ) -> Result<DerivativeReport> {
        let u = self.space(t.domain_dim())?;
        let v = self.space(t.codomain_dim())?;
        verify_frechet(t, x0, f, (&u, &v), &self.params, &[])
    }

    fn scalar_linearity(&self) -> Result<Vec<CaseResult>> {
        let group = TheoremId::ScalarLinearity.id();
        let combos: [(&str, f64); 3] = [("sin", 3.0), ("exp", -0.5), ("cube", 2.0)];
        let x0 = 0.5;
        let mut cases = Vec::new();
        for f_name in SMOOTH_SCALAR_BATTERY {
            let f = self.registry.scalar(f_name)?;
            for (g_name, k) in combos {
                let g = self.registry.scalar(g_name)?;
                let combo = linear_combination_scalar(f, g, k);
                let slope = k * f.derivative_oracle(x0).expect("battery oracle")
                    + g.derivative_oracle(x0).expect("battery oracle");
                let id = format!("{group}:{k}*{f_name}+{g_name}");
                let report = self.verify_scalar(&combo, x0, slope)?;
                cases.push(case(
                    group,
                    format!("{id}:oracle"),
                    format!("combined slope {slope} verified at x0 = {x0}"),
                    Verdict::Pass,
                    report.verdict,
                    deficit_witness(&report),
                ));
                let delta = if cases.len() % 2 == 0 { 0.1 } else { -0.1 };
                let control = self.verify_scalar(&combo, x0, slope + delta)?;
                cases.push(case(
                    group,
                    format!("{id}:control"),
                    format!("slope offset by {delta} must fail"),
                    Verdict::Fail,
                    control.verdict,
                    None,
                ));
            }
        }
        Ok(cases)
    }

    fn gateaux_linearity(&self) -> Result<Vec<CaseResult>> {
        let group = TheoremId::GateauxLinearity.id();
        let triples: [(&str, &str, f64); 3] = [
            ("poly2map", "linear2", 2.0),
            ("poly2map", "sinmap2", -1.0),
            ("sinmap2", "linear2", 0.5),
        ];
        let x0 = Vector::new(vec![1.0, 2.0])?;
        let mut cases = Vec::new();
        for (t1_name, t2_name, c) in triples {
            let t1 = self.registry.operator(t1_name)?;
            let t2 = self.registry.operator(t2_name)?;
            let combo = linear_combination_operator(c, t1, t2)?;
            let g1 = t1.jacobian_oracle(&x0).expect("battery oracle");
            let g2 = t2.jacobian_oracle(&x0).expect("battery oracle");
            let g = g1.scale_add(c, &g2)?;
            let id = format!("{group}:{c}*{t1_name}+{t2_name}");
            let report = self.verify_gateaux_at(&combo, &x0, &g)?;
            cases.push(case(
                group,
                format!("{id}:oracle"),
                format!("combined derivative {} at x0 = {x0}", g.format_bracketed()),
                Verdict::Pass,
                report.verdict,
                deficit_witness(&report),
            ));
            let control = self.verify_gateaux_at(&combo, &x0, &g.shift_all(0.1))?;
            cases.push(case(
                group,
                format!("{id}:control"),
                "entrywise +0.1 perturbation must fail".into(),
                Verdict::Fail,
                control.verdict,
                None,
            ));
        }
        Ok(cases)
    }

    /// Uniqueness in contrapositive numerical form, on linear operators:
    /// two candidates that both pass must sit within the certificate
    /// bound 2 * alpha * min(t) / (1 - alpha).
    fn uniqueness(&self, id: TheoremId) -> Result<Vec<CaseResult>> {
        let group = id.id();
        let frechet = id == TheoremId::FrechetUniqueness;
        let mut stream = SampleStream::new(self.params.seed, 0x51 + frechet as u64);
        let mut cases = Vec::new();
        for dim in [1usize, 2, 3] {
            let a = random_dyadic_matrix(&mut stream, dim, dim);
            let x0 = random_dyadic_point(&mut stream, dim);
            let op = a.to_operator(format!("linear{dim}x{dim}"));
            let near = a.shift_all(1e-5);
            let run = |cand: &LinearOperator| -> Result<DerivativeReport> {
                if frechet {
                    self.verify_frechet_at(&op, &x0, cand)
                } else {
                    self.verify_gateaux_at(&op, &x0, cand)
                }
            };
            let r1 = run(&a)?;
            let r2 = run(&near)?;
            let norm = if dim == 1 {
                ClassicalNorm::Abs
            } else {
                ClassicalNorm::Euclidean
            };
            let gap = sampled_operator_distance(&a, &near, &norm, &self.params)?;
            let bound =
                2.0 * self.params.alpha * self.params.min_t() / (1.0 - self.params.alpha) + 1e-9;
            let ok = r1.passed() && r2.passed() && gap <= bound;
            cases.push(case(
                group,
                format!("{group}:dim{dim}:pair"),
                format!("two passing candidates must sit within {bound:.3e}"),
                Verdict::Pass,
                Verdict::from_bool(ok),
                Some(format!("sampled distance {gap:.3e}")),
            ));
            let control = run(&a.shift_all(0.1))?;
            cases.push(case(
                group,
                format!("{group}:dim{dim}:control"),
                "offset 0.1 must never pass".into(),
                Verdict::Fail,
                control.verdict,
                None,
            ));
        }
        Ok(cases)
    }

    fn frechet_implies_gateaux(&self) -> Result<Vec<CaseResult>> {
        let group = TheoremId::FrechetImpliesGateaux.id();
        let instances: [(&str, Vec<f64>); 6] = [
            ("poly2map", vec![1.0, 2.0]),
            ("parabola", vec![1.0]),
            ("sumsq", vec![1.0, 1.0]),
            ("sinmap2", vec![0.5, 0.25]),
            ("linear2", vec![1.0, -1.0]),
            ("identity2", vec![0.5, 0.5]),
        ];
        let mut cases = Vec::new();
        for (name, point) in instances {
            let t = self.registry.operator(name)?;
            let x0 = Vector::new(point)?;
            let f = t.jacobian_oracle(&x0).expect("battery oracle");
            let fre = self.verify_frechet_at(t, &x0, &f)?;
            let gat = self.verify_gateaux_at(t, &x0, &f)?;
            // The implication is vacuous unless the uniform check passes;
            // battery instances are chosen so it does.
            let ok = fre.passed() && gat.passed();
            cases.push(case(
                group,
                format!("{group}:{name}:implication"),
                format!("uniform pass must carry over to directions at x0 = {x0}"),
                Verdict::Pass,
                Verdict::from_bool(ok),
                deficit_witness(&gat),
            ));
            let control = self.verify_gateaux_at(t, &x0, &f.shift_all(0.1))?;
            cases.push(case(
                group,
                format!("{group}:{name}:control"),
                "perturbed candidate must fail the directional check".into(),
                Verdict::Fail,
                control.verdict,
                None,
            ));
        }
        Ok(cases)
    }

    fn chain_rule(&self) -> Result<Vec<CaseResult>> {
        let group = TheoremId::ChainRule.id();
        let p = self.registry.operator("parabola")?;
        let mut cases = Vec::new();
        for (outer_name, points) in [("sumsq", vec![0.0, 1.0, 2.0]), ("poly2map", vec![1.0])] {
            let q = self.registry.operator(outer_name)?;
            let composed = compose_operators(q, p)?;
            for x0s in points {
                let x0 = Vector::scalar(x0s)?;
                let mid = p.eval(&x0)?;
                let candidate = q
                    .jacobian_oracle(&mid)
                    .expect("battery oracle")
                    .matmul(&p.jacobian_oracle(&x0).expect("battery oracle"))?;
                let id = format!("{group}:{outer_name}.parabola@{x0s}");
                let report = self.verify_gateaux_at(&composed, &x0, &candidate)?;
                cases.push(case(
                    group,
                    format!("{id}:oracle"),
                    format!("composite derivative {}", candidate.format_bracketed()),
                    Verdict::Pass,
                    report.verdict,
                    deficit_witness(&report),
                ));
                let control = self.verify_gateaux_at(&composed, &x0, &candidate.shift_all(0.1))?;
                cases.push(case(
                    group,
                    format!("{id}:control"),
                    "composite candidate offset by 0.1 must fail".into(),
                    Verdict::Fail,
                    control.verdict,
                    None,
                ));
            }
        }
        Ok(cases)
    }

    /// On R^1 with the standard norm, the scalar verifier and the uniform
    /// verifier must agree verdict-for-verdict.
    fn scalar_frechet_equivalence(&self) -> Result<Vec<CaseResult>> {
        let group = TheoremId::ScalarFrechetEquivalence.id();
        let mut cases = Vec::new();
        let mut push_case = |battery: &Battery,
                             f: &ScalarFunction,
                             x0: f64,
                             tag: &str,
                             candidate: f64,
                             expected: Verdict|
         -> Result<()> {
            let scalar = battery.verify_scalar(f, x0, candidate)?;
            let wrapped = scalar_to_operator(f);
            let matrix = LinearOperator::from_rows(vec![vec![candidate]])?;
            let uniform = battery.verify_frechet_at(&wrapped, &Vector::scalar(x0)?, &matrix)?;
            let agree = scalar.verdict == uniform.verdict;
            let ok = agree && scalar.verdict == expected;
            cases.push(case(
                group,
                format!("{group}:{}@{x0}:{tag}", f.name()),
                format!("verdicts must agree and land {expected}"),
                Verdict::Pass,
                Verdict::from_bool(ok),
                Some(format!(
                    "scalar {} / uniform {}",
                    scalar.verdict, uniform.verdict
                )),
            ));
            Ok(())
        };
        for f_name in SMOOTH_SCALAR_BATTERY {
            let f = self.registry.scalar(f_name)?;
            for x0 in SCALAR_BATTERY_POINTS {
                let oracle = f.derivative_oracle(x0).expect("battery oracle");
                push_case(self, f, x0, "oracle", oracle, Verdict::Pass)?;
                push_case(self, f, x0, "plus", oracle + 0.1, Verdict::Fail)?;
                push_case(self, f, x0, "minus", oracle - 0.1, Verdict::Fail)?;
            }
        }
        for f_name in ["abs", "step"] {
            let f = self.registry.scalar(f_name)?;
            for (tag, candidate) in [("m1", -1.0), ("zero", 0.0), ("p1", 1.0)] {
                push_case(self, f, 0.0, tag, candidate, Verdict::Fail)?;
            }
        }
        Ok(cases)
    }

    fn theorem_cases(&self, id: TheoremId) -> Result<Vec<CaseResult>> {
        match id {
            TheoremId::ScalarLinearity => self.scalar_linearity(),
            TheoremId::GateauxLinearity => self.gateaux_linearity(),
            TheoremId::GateauxUniqueness | TheoremId::FrechetUniqueness => self.uniqueness(id),
            TheoremId::FrechetImpliesGateaux => self.frechet_implies_gateaux(),
            TheoremId::ChainRule => self.chain_rule(),
            TheoremId::ScalarFrechetEquivalence => self.scalar_frechet_equivalence(),
        }
    }

    /// Axiom-suite cases folded into the full run.
    fn axiom_cases(&self) -> Result<Vec<CaseResult>> {
        let mut cases = Vec::new();
        let tn = check_tnorm_axioms(&self.env.tnorm, &self.params)?;
        cases.push(case(
            "algebra",
            "algebra:tnorm:core".into(),
            format!("{} satisfies the core operation laws", tn.op_label),
            Verdict::Pass,
            Verdict::from_bool(tn.core_axioms_pass()),
            None,
        ));
        cases.push(case(
            "algebra",
            "algebra:tnorm:idempotency".into(),
            format!("{} is idempotent", tn.op_label),
            Verdict::Pass,
            Verdict::from_bool(tn.idempotent_passes()),
            tn.outcome(crate::tnorm::AlgebraAxiom::Idempotent)
                .witness
                .as_ref()
                .map(|w| format!("a = {}", w.a)),
        ));
        let tc = check_tconorm_axioms(&self.env.tconorm, &self.params)?;
        cases.push(case(
            "algebra",
            "algebra:tconorm:core".into(),
            format!("{} satisfies the core operation laws", tc.op_label),
            Verdict::Pass,
            Verdict::from_bool(tc.core_axioms_pass()),
            None,
        ));
        cases.push(case(
            "algebra",
            "algebra:tconorm:idempotency".into(),
            format!("{} is idempotent", tc.op_label),
            Verdict::Pass,
            Verdict::from_bool(tc.idempotent_passes()),
            tc.outcome(crate::tnorm::AlgebraAxiom::Idempotent)
                .witness
                .as_ref()
                .map(|w| format!("a = {}", w.a)),
        ));
        for dim in [1usize, 2] {
            let space = self.space(dim)?;
            let report = check_ifn_axioms(&space, &self.params)?;
            let failing: Vec<&str> = report
                .outcomes
                .iter()
                .filter(|o| !o.pass)
                .map(|o| o.axiom.id())
                .collect();
            cases.push(case(
                "axioms",
                format!("axioms:r{dim}"),
                format!("all sixteen norm laws on {}", space.label()),
                Verdict::Pass,
                Verdict::from_bool(report.all_pass()),
                if failing.is_empty() {
                    None
                } else {
                    Some(format!("failing: ({})", failing.join("), (")))
                },
            ));
        }
        Ok(cases)
    }
}

fn random_dyadic_matrix(stream: &mut SampleStream, rows: usize, cols: usize) -> LinearOperator {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| (0..cols).map(|_| stream.dyadic(3, 32)).collect())
        .collect();
    LinearOperator::from_rows(data).expect("dyadic entries are finite")
}

fn random_dyadic_point(stream: &mut SampleStream, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| stream.dyadic(3, 16)).collect()).expect("finite")
}

fn suite_notes(env: &SuiteEnv) -> Vec<String> {
    vec![
        format!(
            "algebra pair: {} / {}",
            env.tnorm.label(),
            env.tconorm.label()
        ),
        "battery-certified: fixed instances plus seeded controls, not a proof".into(),
        "uniqueness checked in contrapositive form: passing candidates must be close".into(),
        "chain-rule battery composes smooth nonlinear factors".into(),
    ]
}

fn finish(
    suite_id: String,
    mut cases: Vec<CaseResult>,
    params: &CheckParams,
    env: &SuiteEnv,
) -> SuiteReport {
    cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    let verdict = Verdict::from_bool(cases.iter().all(|c| c.ok));
    SuiteReport {
        suite_id,
        cases,
        verdict,
        params: params.clone(),
        seed: params.seed,
        notes: suite_notes(env),
    }
}

/// Run one theorem's battery cases.
pub fn run_theorem(id: TheoremId, env: &SuiteEnv, params: &CheckParams) -> Result<SuiteReport> {
    let battery = Battery::new(env, params)?;
    let cases = battery.theorem_cases(id)?;
    Ok(finish(
        format!("theorems:{id}"),
        cases,
        &battery.params,
        env,
    ))
}

/// Run every theorem plus the algebra and norm axiom suites.
pub fn run_all(env: &SuiteEnv, params: &CheckParams) -> Result<SuiteReport> {
    let battery = Battery::new(env, params)?;
    let mut cases = Vec::new();
    for id in ALL_THEOREMS {
        cases.extend(battery.theorem_cases(id)?);
    }
    cases.extend(battery.axiom_cases()?);
    Ok(finish("theorems:all".into(), cases, &battery.params, env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::suite_report_to_json;

    fn fast_params() -> CheckParams {
        CheckParams::default().with_sample_count(300)
    }

    #[test]
    fn scalar_linearity_has_twelve_positive_cases_all_green() {
        let report = run_theorem(
            TheoremId::ScalarLinearity,
            &SuiteEnv::default(),
            &fast_params(),
        )
        .unwrap();
        assert!(
            report.passed(),
            "{:#?}",
            report.failures().collect::<Vec<_>>()
        );
        let positives = report
            .cases
            .iter()
            .filter(|c| c.case_id.ends_with(":oracle"))
            .count();
        assert!(positives >= 12, "{positives}");
    }

    #[test]
    fn chain_rule_composite_value_at_one() {
        let report =
            run_theorem(TheoremId::ChainRule, &SuiteEnv::default(), &fast_params()).unwrap();
        assert!(
            report.passed(),
            "{:#?}",
            report.failures().collect::<Vec<_>>()
        );
        let at_one = report
            .cases
            .iter()
            .find(|c| c.case_id == "chain_rule:sumsq.parabola@1:oracle")
            .unwrap();
        assert!(at_one.descriptor.contains("[[5]]"), "{}", at_one.descriptor);
    }

    #[test]
    fn uniqueness_suites_pass_with_controls_rejected() {
        for id in [TheoremId::GateauxUniqueness, TheoremId::FrechetUniqueness] {
            let report = run_theorem(id, &SuiteEnv::default(), &fast_params()).unwrap();
            assert!(
                report.passed(),
                "{id}: {:#?}",
                report.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn equivalence_and_implication_suites_pass() {
        for id in [
            TheoremId::FrechetImpliesGateaux,
            TheoremId::ScalarFrechetEquivalence,
            TheoremId::GateauxLinearity,
        ] {
            let report = run_theorem(id, &SuiteEnv::default(), &fast_params()).unwrap();
            assert!(
                report.passed(),
                "{id}: {:#?}",
                report.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn full_run_passes_with_min_max_and_flags_xii_under_product() {
        let report = run_all(&SuiteEnv::default(), &fast_params()).unwrap();
        assert!(
            report.passed(),
            "{:#?}",
            report.failures().collect::<Vec<_>>()
        );

        let env = SuiteEnv {
            tnorm: TNorm::Product,
            tconorm: TConorm::ProbabilisticSum,
        };
        let report = run_all(&env, &fast_params()).unwrap();
        assert!(!report.passed());
        let failing: Vec<&str> = report.failures().map(|c| c.case_id.as_str()).collect();
        assert!(
            failing.contains(&"algebra:tnorm:idempotency"),
            "{failing:?}"
        );
        assert!(
            failing.contains(&"algebra:tconorm:idempotency"),
            "{failing:?}"
        );
        // Derivative theorems are untouched by the algebra substitution.
        for group in ALL_THEOREMS {
            assert!(
                report.cases_in_group(group.id()).all(|c| c.ok),
                "{group} should still pass"
            );
        }
    }

    #[test]
    fn suite_passes_survive_a_looser_alpha() {
        let tight = fast_params();
        let loose = CheckParams {
            alpha: tight.alpha * 10.0,
            ..fast_params()
        };
        if run_all(&SuiteEnv::default(), &tight).unwrap().passed() {
            assert!(run_all(&SuiteEnv::default(), &loose).unwrap().passed());
        }
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let run = || {
            suite_report_to_json(
                &run_theorem(TheoremId::ChainRule, &SuiteEnv::default(), &fast_params()).unwrap(),
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn empty_grid_is_a_validation_error() {
        let mut params = fast_params();
        params.t_grid.clear();
        assert!(run_all(&SuiteEnv::default(), &params).is_err());
    }

    #[test]
    fn unknown_theorem_id() {
        assert!(TheoremId::parse("chain_rule").is_ok());
        assert!(TheoremId::parse("nope").is_err());
    }
}
