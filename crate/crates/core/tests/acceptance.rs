//! Acceptance suite: one test per conformance criterion, each printing a
//! pass/fail line. Tolerances and thresholds are pinned here, not tuned at
//! run time. Criterion 10 (the CLI contract) lives in the CLI crate's own
//! acceptance target.

use std::time::Instant;

use ifn_core::battery::{default_registry, SCALAR_BATTERY_POINTS, SMOOTH_SCALAR_BATTERY};
use ifn_core::derivatives::{
    estimate_scalar_derivative, sampled_operator_distance, verify_frechet, verify_gateaux,
    verify_scalar_derivative,
};
use ifn_core::functions::{compose_operators, LinearOperator};
use ifn_core::limits::{check_convergence, limit_check, Verdict};
use ifn_core::report::{check_report_to_json, suite_report_to_json};
use ifn_core::sample::SampleStream;
use ifn_core::space::{check_ifn_axioms, IFNSpace, IfnAxiom};
use ifn_core::theorems::{run_all, run_theorem, SuiteEnv, TheoremId};
use ifn_core::tnorm::{check_tconorm_axioms, check_tnorm_axioms, AlgebraAxiom, TConorm, TNorm};
use ifn_core::vector::{ClassicalNorm, Vector};
use ifn_core::CheckParams;

fn announce(criterion: &str, detail: String) {
    println!("[acceptance] PASS {criterion}: {detail}");
}

fn standard_space(dim: usize, norm: ClassicalNorm) -> IFNSpace {
    IFNSpace::standard(dim, norm, TNorm::Minimum, TConorm::Maximum).unwrap()
}

fn scalar_spaces() -> (IFNSpace, IFNSpace) {
    (IFNSpace::scalar_standard(), IFNSpace::scalar_standard())
}

#[test]
fn criterion_01_axiom_conformance() {
    let params = CheckParams::default_axioms().with_sample_count(10_000);
    assert_eq!(params.algebra_tol, 1e-12);
    let spaces = [
        (1usize, ClassicalNorm::Abs),
        (2, ClassicalNorm::Euclidean),
        (3, ClassicalNorm::MaxNorm),
    ];
    let mut timings = Vec::new();
    for (dim, norm) in spaces {
        let space = standard_space(dim, norm);
        let started = Instant::now();
        let report = check_ifn_axioms(&space, &params).unwrap();
        let elapsed = started.elapsed();
        assert!(
            report.all_pass(),
            "{}: {:#?}",
            space.label(),
            report
                .outcomes
                .iter()
                .filter(|o| !o.pass)
                .collect::<Vec<_>>()
        );
        assert_eq!(report.non_heuristic_violations(), 0, "{}", space.label());
        assert_eq!(report.outcomes.len(), 16);
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "{} took {elapsed:?}",
            space.label()
        );
        timings.push(format!("{} in {:.2?}", space.label(), elapsed));
    }
    announce(
        "criterion 1 (axiom conformance)",
        format!(
            "sixteen axioms on three spaces, 1e4 samples each: {}",
            timings.join("; ")
        ),
    );
}

#[test]
fn criterion_02_algebra() {
    let params = CheckParams::default().with_sample_count(10_000);
    for op in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
        let report = check_tnorm_axioms(&op, &params).unwrap();
        assert!(report.core_axioms_pass(), "{}", report.op_label);
    }
    for op in [
        TConorm::Maximum,
        TConorm::ProbabilisticSum,
        TConorm::BoundedSum,
    ] {
        let report = check_tconorm_axioms(&op, &params).unwrap();
        assert!(report.core_axioms_pass(), "{}", report.op_label);
    }
    let product = check_tnorm_axioms(&TNorm::Product, &params).unwrap();
    let outcome = product.outcome(AlgebraAxiom::Idempotent);
    assert!(!outcome.pass);
    assert_eq!(outcome.witness.as_ref().unwrap().a, 0.5);
    let psum = check_tconorm_axioms(&TConorm::ProbabilisticSum, &params).unwrap();
    let outcome = psum.outcome(AlgebraAxiom::Idempotent);
    assert!(!outcome.pass);
    assert_eq!(outcome.witness.as_ref().unwrap().a, 0.5);
    announce(
        "criterion 2 (operation laws)",
        "six built-ins pass the core laws; product and probabilistic sum fail idempotency at a = 0.5 exactly".into(),
    );
}

#[test]
fn criterion_03_scalar_derivative() {
    let params = CheckParams::default();
    assert_eq!(params.alpha, 1e-3);
    let registry = default_registry();
    let (u, v) = scalar_spaces();
    let mut checked = 0usize;
    for name in SMOOTH_SCALAR_BATTERY {
        let f = registry.scalar(name).unwrap();
        for x0 in SCALAR_BATTERY_POINTS {
            let oracle = f.derivative_oracle(x0).unwrap();
            let (estimate, report) = estimate_scalar_derivative(f, x0, (&u, &v), &params).unwrap();
            assert!(
                (estimate - oracle).abs() <= 1e-6,
                "{name} at {x0}: estimate {estimate} vs oracle {oracle}"
            );
            assert!(report.passed(), "{name} at {x0}");
            for shift in [0.1, -0.1] {
                let off =
                    verify_scalar_derivative(f, x0, oracle + shift, (&u, &v), &params).unwrap();
                assert!(!off.passed(), "{name} at {x0} with shift {shift}");
            }
            checked += 1;
        }
    }
    let kink = registry.scalar("abs").unwrap();
    for candidate in [-1.0, 0.0, 1.0] {
        let report = verify_scalar_derivative(kink, 0.0, candidate, (&u, &v), &params).unwrap();
        assert!(!report.passed(), "abs candidate {candidate}");
    }
    announce(
        "criterion 3 (scalar derivative)",
        format!("{checked} battery points within 1e-6 of the oracle, perturbations rejected, kink rejected"),
    );
}

#[test]
fn criterion_04_gateaux_of_linear_maps() {
    let params = CheckParams::default();
    let mut stream = SampleStream::new(params.seed, 0xA4);
    for i in 0..20usize {
        let rows = i % 4 + 1;
        let cols = (i / 4) % 4 + 1;
        let matrix = LinearOperator::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| stream.dyadic(3, 32)).collect())
                .collect(),
        )
        .unwrap();
        let x0 = Vector::new((0..cols).map(|_| stream.dyadic(3, 16)).collect()).unwrap();
        let domain = standard_space(
            cols,
            if cols == 1 {
                ClassicalNorm::Abs
            } else {
                ClassicalNorm::Euclidean
            },
        );
        let target = standard_space(
            rows,
            if rows == 1 {
                ClassicalNorm::Abs
            } else {
                ClassicalNorm::Euclidean
            },
        );
        let report = verify_gateaux(
            &matrix.to_operator(format!("linear{rows}x{cols}#{i}")),
            &x0,
            &matrix,
            (&domain, &target),
            &params,
            &[],
        )
        .unwrap();
        assert!(report.passed(), "matrix {i}");
        assert!(
            report.residual_exactly_zero(),
            "matrix {i} must have an exactly-zero residual at every step"
        );
    }
    announce(
        "criterion 4 (directional derivative of linear maps)",
        "20 seeded dyadic matrices up to 4x4: residual exactly 0.0 at every step".into(),
    );
}

#[test]
fn criterion_05_frechet_implies_gateaux() {
    let params = CheckParams::default();
    let registry = default_registry();
    let instances: [(&str, Vec<f64>); 8] = [
        ("poly2map", vec![1.0, 2.0]),
        ("poly2map", vec![-1.0, 0.5]),
        ("parabola", vec![1.0]),
        ("parabola", vec![-0.5]),
        ("sumsq", vec![1.0, 1.0]),
        ("sumsq", vec![2.0, -1.0]),
        ("sinmap2", vec![0.5, 0.25]),
        ("linear2", vec![1.0, -1.0]),
    ];
    let mut verified = 0usize;
    for (name, point) in instances {
        let t = registry.operator(name).unwrap();
        let x0 = Vector::new(point.clone()).unwrap();
        let f = t.jacobian_oracle(&x0).unwrap();
        let domain = standard_space(
            t.domain_dim(),
            if t.domain_dim() == 1 {
                ClassicalNorm::Abs
            } else {
                ClassicalNorm::Euclidean
            },
        );
        let target = standard_space(
            t.codomain_dim(),
            if t.codomain_dim() == 1 {
                ClassicalNorm::Abs
            } else {
                ClassicalNorm::Euclidean
            },
        );
        let fre = verify_frechet(t, &x0, &f, (&domain, &target), &params, &[]).unwrap();
        if fre.passed() {
            let gat = verify_gateaux(t, &x0, &f, (&domain, &target), &params, &[]).unwrap();
            assert!(
                gat.passed(),
                "{name} at {point:?}: uniform pass without directional pass"
            );
            verified += 1;
        }
    }
    assert!(
        verified >= 8,
        "every battery instance should pass the uniform check"
    );
    announce(
        "criterion 5 (uniform implies directional)",
        format!("{verified}/8 uniform passes all carry over; zero exceptions"),
    );
}

#[test]
fn criterion_06_uniqueness() {
    let params = CheckParams::default();
    let bound = 2.0 * params.alpha * params.min_t() / (1.0 - params.alpha) + 1e-9;
    for id in [TheoremId::GateauxUniqueness, TheoremId::FrechetUniqueness] {
        let report = run_theorem(id, &SuiteEnv::default(), &params).unwrap();
        assert!(
            report.passed(),
            "{id}: {:#?}",
            report.failures().collect::<Vec<_>>()
        );
    }
    // Direct spot check of the numerical bound on a dyadic linear map.
    let a = LinearOperator::from_rows(vec![vec![1.5, -0.25], vec![2.0, 0.125]]).unwrap();
    let x0 = Vector::new(vec![0.5, -1.25]).unwrap();
    let space = standard_space(2, ClassicalNorm::Euclidean);
    let near = a.shift_all(1e-5);
    let op = a.to_operator("a");
    let r1 = verify_gateaux(&op, &x0, &a, (&space, &space), &params, &[]).unwrap();
    let r2 = verify_gateaux(&op, &x0, &near, (&space, &space), &params, &[]).unwrap();
    assert!(r1.passed() && r2.passed());
    let gap = sampled_operator_distance(&a, &near, &ClassicalNorm::Euclidean, &params).unwrap();
    assert!(gap <= bound, "gap {gap} exceeds bound {bound}");
    let control =
        verify_gateaux(&op, &x0, &a.shift_all(0.1), (&space, &space), &params, &[]).unwrap();
    assert!(!control.passed(), "offset 0.1 must never pass");
    announce(
        "criterion 6 (uniqueness)",
        format!("co-passing candidates within {bound:.3e}; 0.1 offsets rejected"),
    );
}

#[test]
fn criterion_07_chain_rule() {
    let params = CheckParams::default();
    let registry = default_registry();
    let p = registry.operator("parabola").unwrap();
    let q = registry.operator("sumsq").unwrap();
    let composed = compose_operators(q, p).unwrap();
    let (u, v) = scalar_spaces();
    for x0s in [0.0, 1.0, 2.0] {
        let x0 = Vector::scalar(x0s).unwrap();
        let candidate = q
            .jacobian_oracle(&p.eval(&x0).unwrap())
            .unwrap()
            .matmul(&p.jacobian_oracle(&x0).unwrap())
            .unwrap();
        // Analytic oracle: d/dx (x + x^4) = 1 + 4 x^3.
        assert_eq!(candidate.entry(0, 0), 1.0 + 4.0 * x0s.powi(3));
        let report = verify_gateaux(&composed, &x0, &candidate, (&u, &v), &params, &[]).unwrap();
        assert!(report.passed(), "x0 = {x0s}");
        let off = verify_gateaux(
            &composed,
            &x0,
            &candidate.shift_all(0.1),
            (&u, &v),
            &params,
            &[],
        )
        .unwrap();
        assert!(!off.passed(), "x0 = {x0s} perturbed");
    }
    announce(
        "criterion 7 (chain rule)",
        "composite slope 1 + 4 x0^3 verified at x0 in {0, 1, 2} (value 5 at 1); +0.1 rejected"
            .into(),
    );
}

#[test]
fn criterion_08_scalar_frechet_equivalence() {
    let params = CheckParams::default();
    let report = run_theorem(
        TheoremId::ScalarFrechetEquivalence,
        &SuiteEnv::default(),
        &params,
    )
    .unwrap();
    assert!(
        report.passed(),
        "{:#?}",
        report.failures().collect::<Vec<_>>()
    );
    let (total, ok) = report.counts();
    assert_eq!(total, ok);
    assert_eq!(
        total,
        SMOOTH_SCALAR_BATTERY.len() * SCALAR_BATTERY_POINTS.len() * 3 + 6
    );
    announce(
        "criterion 8 (scalar/uniform equivalence on R)",
        format!("{total}/{total} verdict agreements across battery x candidates"),
    );
}

#[test]
fn criterion_09_determinism_and_monotonicity() {
    let params = CheckParams::default().with_sample_count(500);

    // Byte-identical limit-check report.
    let render = || {
        let profile = limit_check(
            "shrinking residual",
            |h| Vector::scalar(0.7 * h),
            &IFNSpace::scalar_standard(),
            &params,
        )
        .unwrap();
        let mut report = ifn_core::limits::CheckReport::new("determinism-probe", &params);
        report.push_profile(profile);
        check_report_to_json(&report).unwrap()
    };
    assert_eq!(render(), render());

    // Byte-identical theorem-suite report.
    let render_suite = || {
        suite_report_to_json(
            &run_theorem(TheoremId::ChainRule, &SuiteEnv::default(), &params).unwrap(),
        )
        .unwrap()
    };
    assert_eq!(render_suite(), render_suite());

    // Byte-identical full run.
    let render_all =
        || suite_report_to_json(&run_all(&SuiteEnv::default(), &params).unwrap()).unwrap();
    assert_eq!(render_all(), render_all());

    // Alpha monotonicity: anything that passes at alpha passes at 10 alpha.
    let registry = default_registry();
    let (u, v) = scalar_spaces();
    let loose = CheckParams {
        alpha: 1e-2,
        ..CheckParams::default()
    };
    let tight = CheckParams::default();
    for name in SMOOTH_SCALAR_BATTERY {
        let f = registry.scalar(name).unwrap();
        for x0 in SCALAR_BATTERY_POINTS {
            let oracle = f.derivative_oracle(x0).unwrap();
            for candidate in [oracle, oracle + 0.1] {
                let at_tight =
                    verify_scalar_derivative(f, x0, candidate, (&u, &v), &tight).unwrap();
                if at_tight.passed() {
                    let at_loose =
                        verify_scalar_derivative(f, x0, candidate, (&u, &v), &loose).unwrap();
                    assert!(at_loose.passed(), "{name} at {x0}");
                }
            }
        }
    }
    // Convergence checks obey the same relaxation.
    let conv = CheckParams::default_convergence().with_sample_count(100);
    let conv_loose = CheckParams {
        alpha: 1e-2,
        ..conv.clone()
    };
    for p in [conv, conv_loose] {
        let report = check_convergence(
            &IFNSpace::scalar_standard(),
            |n| Vector::scalar(1.0 / n as f64),
            &Vector::zero(1),
            &p,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }
    announce(
        "criterion 9 (determinism and monotonicity)",
        "re-runs byte-identical; every pass at alpha survives 10x alpha".into(),
    );
}

#[test]
fn axiom_heuristics_are_flagged() {
    // Companion check: heuristic entries are marked so criterion 1's
    // "non-heuristic violations" count is meaningful.
    let params = CheckParams::default_axioms().with_sample_count(500);
    let space = standard_space(2, ClassicalNorm::Euclidean);
    let report = check_ifn_axioms(&space, &params).unwrap();
    for outcome in &report.outcomes {
        let expected = matches!(
            outcome.axiom,
            IfnAxiom::Vi | IfnAxiom::Xi | IfnAxiom::Xv | IfnAxiom::Xvi
        );
        assert_eq!(outcome.heuristic, expected, "{:?}", outcome.axiom);
    }
}
