//! Check dispatch and report writing.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ifn_core::battery::{default_registry, BatteryItem, Registry};
use ifn_core::derivatives::{
    estimate_scalar_derivative, verify_frechet, verify_gateaux, verify_scalar_derivative,
};
use ifn_core::functions::{scalar_to_operator, LinearOperator, OperatorFunction};
use ifn_core::limits::{
    check_continuity, check_convergence, CheckReport, ProfileEntry, ReportWitness, Verdict,
};
use ifn_core::report::{check_report_to_json, suite_report_to_json};
use ifn_core::space::{check_ifn_axioms, IFNSpace};
use ifn_core::theorems::{run_all, run_theorem, SuiteEnv, TheoremId};
use ifn_core::tnorm::{check_tconorm_axioms, check_tnorm_axioms, AlgebraCheckReport};
use ifn_core::vector::{ClassicalNorm, Vector};
use thiserror::Error;

use crate::config::{Candidate, CheckKind, ConfigError, RunConfig};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] ifn_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

pub struct RunOutcome {
    pub verdict: Verdict,
    pub report_path: PathBuf,
    pub summary: Vec<String>,
}

const DEFAULT_REPORT_PATH: &str = "ifn-report.json";

pub fn execute(config: &RunConfig) -> Result<RunOutcome, RunError> {
    let started = Instant::now();
    let registry = default_registry();
    let (verdict, json, mut summary) = match config.check {
        CheckKind::Axioms => run_axioms(config)?,
        CheckKind::Tnorm => run_algebra(config)?,
        CheckKind::Convergence => run_convergence(config, &registry)?,
        CheckKind::Continuity => run_continuity(config, &registry)?,
        CheckKind::Derivative => run_derivative(config, &registry)?,
        CheckKind::Gateaux => run_operator_derivative(config, &registry, false)?,
        CheckKind::Frechet => run_operator_derivative(config, &registry, true)?,
        CheckKind::Theorems => run_theorems(config)?,
    };
    let path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT_PATH));
    write_atomically(&path, &json)?;
    summary.push(format!("verdict: {verdict}"));
    eprintln!("completed in {:.2?}", started.elapsed());
    Ok(RunOutcome {
        verdict,
        report_path: path,
        summary,
    })
}

fn space_from(config: &RunConfig) -> Result<IFNSpace, RunError> {
    Ok(IFNSpace::standard(
        config.dim,
        config.norm.clone(),
        config.tnorm.clone(),
        config.tconorm.clone(),
    )?)
}

/// Space for a check whose dimension comes from the selected function: the
/// configured norm applies when the dimensions line up, otherwise the
/// standard norm for that dimension.
fn space_for_dim(config: &RunConfig, dim: usize) -> Result<IFNSpace, RunError> {
    let norm = if dim == config.dim {
        config.norm.clone()
    } else if dim == 1 {
        ClassicalNorm::Abs
    } else {
        ClassicalNorm::Euclidean
    };
    Ok(IFNSpace::standard(
        dim,
        norm,
        config.tnorm.clone(),
        config.tconorm.clone(),
    )?)
}

fn run_axioms(config: &RunConfig) -> Result<(Verdict, String, Vec<String>), RunError> {
    let space = space_from(config)?;
    let report = check_ifn_axioms(&space, &config.params)?;
    let verdict = Verdict::from_bool(report.all_pass());
    let mut check = CheckReport::new(
        format!("axioms:{}:r{}", config.norm.label(), config.dim),
        &config.params,
    );
    check.inputs.push(space.label());
    check.verdict = verdict;
    let mut summary = Vec::new();
    for outcome in &report.outcomes {
        let status = if outcome.pass { "pass" } else { "FAIL" };
        let tag = if outcome.heuristic {
            " (heuristic)"
        } else {
            ""
        };
        summary.push(format!("axiom ({}): {status}{tag}", outcome.axiom.id()));
        if let Some(witness) = &outcome.witness {
            check.witnesses.push(ReportWitness::Axiom {
                axiom: outcome.axiom.id().to_string(),
                witness: witness.clone(),
            });
        }
        check.profiles.push(ProfileEntry::Axiom {
            space: space.label(),
            outcome: outcome.clone(),
        });
    }
    let json = check_report_to_json(&check)?;
    Ok((verdict, json, summary))
}

fn push_algebra_entries(
    check: &mut CheckReport,
    summary: &mut Vec<String>,
    side: &str,
    report: &AlgebraCheckReport,
) {
    for outcome in &report.axiom_results {
        let status = if outcome.pass { "pass" } else { "FAIL" };
        summary.push(format!("{side} {:?}: {status}", outcome.axiom).to_lowercase());
        if let Some(witness) = &outcome.witness {
            check.witnesses.push(ReportWitness::Algebra {
                axiom: format!("{side}:{:?}", outcome.axiom).to_lowercase(),
                witness: witness.clone(),
            });
        }
        check.profiles.push(ProfileEntry::Algebra {
            op: report.op_label.clone(),
            outcome: outcome.clone(),
        });
    }
    check.profiles.push(ProfileEntry::AlgebraContinuity {
        op: report.op_label.clone(),
        outcome: report.continuity.clone(),
    });
}

fn run_algebra(config: &RunConfig) -> Result<(Verdict, String, Vec<String>), RunError> {
    let tn = check_tnorm_axioms(&config.tnorm, &config.params)?;
    let tc = check_tconorm_axioms(&config.tconorm, &config.params)?;
    // Idempotency is reported but does not gate the verdict.
    let verdict = Verdict::from_bool(tn.core_axioms_pass() && tc.core_axioms_pass());
    let mut check = CheckReport::new(
        format!(
            "algebra:{}:{}",
            config.tnorm.label(),
            config.tconorm.label()
        ),
        &config.params,
    );
    check.verdict = verdict;
    check
        .notes
        .push("idempotency is informational: it never fails the core verdict".into());
    let mut summary = Vec::new();
    push_algebra_entries(&mut check, &mut summary, "t-norm", &tn);
    push_algebra_entries(&mut check, &mut summary, "t-conorm", &tc);
    summary.push(format!(
        "idempotency: t-norm {}, t-conorm {}",
        if tn.idempotent_passes() {
            "holds"
        } else {
            "fails"
        },
        if tc.idempotent_passes() {
            "holds"
        } else {
            "fails"
        },
    ));
    let json = check_report_to_json(&check)?;
    Ok((verdict, json, summary))
}

fn run_convergence(
    config: &RunConfig,
    registry: &Registry,
) -> Result<(Verdict, String, Vec<String>), RunError> {
    let name = config
        .sequence
        .as_deref()
        .ok_or_else(|| RunError::Usage("convergence requires `sequence = <name>`".into()))?;
    let sequence = registry.sequence(name)?;
    let candidate = match &config.limit {
        Some(values) => Vector::new(values.clone())?,
        None => sequence.classical_limit().cloned().ok_or_else(|| {
            RunError::Usage(format!(
                "sequence '{name}' has no known limit; supply `limit = ...`"
            ))
        })?,
    };
    let space = space_for_dim(config, sequence.dim())?;
    let mut report = check_convergence(&space, |n| sequence.eval(n), &candidate, &config.params)?;
    report.check_id = format!("convergence:{name}");
    report.inputs.push(format!("sequence {name}"));
    let verdict = report.verdict;
    let summary = vec![format!(
        "sequence {name} -> {candidate}: final deficit {:.3e}",
        report
            .worst_profile()
            .map(|p| p.final_deficit)
            .unwrap_or(0.0)
    )];
    let json = check_report_to_json(&report)?;
    Ok((verdict, json, summary))
}

fn resolve_operator(registry: &Registry, name: &str) -> Result<OperatorFunction, RunError> {
    match registry.get(name) {
        Some(BatteryItem::Operator(op)) => Ok(op.clone()),
        Some(BatteryItem::Scalar(f)) => Ok(scalar_to_operator(f)),
        _ => Err(registry.operator(name).map(|_| ()).unwrap_err().into()),
    }
}

fn required_x0(config: &RunConfig, dim: usize) -> Result<Vector, RunError> {
    let values = config
        .x0
        .clone()
        .ok_or_else(|| RunError::Usage("this check requires `x0 = ...`".into()))?;
    let x0 = Vector::new(values)?;
    if x0.dim() != dim {
        return Err(RunError::Usage(format!(
            "x0 has dimension {}, the selected function expects {dim}",
            x0.dim()
        )));
    }
    Ok(x0)
}

fn run_continuity(
    config: &RunConfig,
    registry: &Registry,
) -> Result<(Verdict, String, Vec<String>), RunError> {
    let name = config
        .function
        .as_deref()
        .ok_or_else(|| RunError::Usage("continuity requires `function = <name>`".into()))?;
    let op = resolve_operator(registry, name)?;
    let x0 = required_x0(config, op.domain_dim())?;
    let domain = space_for_dim(config, op.domain_dim())?;
    let target = space_for_dim(config, op.codomain_dim())?;
    let mut report = check_continuity(|x| op.eval(x), &domain, &target, &x0, &config.params)?;
    report.check_id = format!("continuity:{name}@{x0}");
    report.inputs.push(format!("function {name}"));
    let verdict = report.verdict;
    let summary = vec![format!(
        "{} directions checked, worst deficit {:.3e}",
        report.limit_profiles().count(),
        report
            .worst_profile()
            .map(|p| p.final_deficit)
            .unwrap_or(0.0)
    )];
    let json = check_report_to_json(&report)?;
    Ok((verdict, json, summary))
}

fn run_derivative(
    config: &RunConfig,
    registry: &Registry,
) -> Result<(Verdict, String, Vec<String>), RunError> {
    let name = config
        .function
        .as_deref()
        .ok_or_else(|| RunError::Usage("derivative requires `function = <name>`".into()))?;
    let f = registry.scalar(name)?;
    let x0 = required_x0(config, 1)?.as_scalar()?;
    let domain = space_for_dim(config, 1)?;
    let target = space_for_dim(config, 1)?;
    let mut summary = Vec::new();
    let report = match &config.candidate {
        Some(Candidate::Scalar(c)) => {
            verify_scalar_derivative(f, x0, *c, (&domain, &target), &config.params)?
        }
        Some(Candidate::Matrix(_)) => {
            return Err(RunError::Usage(
                "candidate for a scalar derivative must be a number".into(),
            ))
        }
        None => {
            let (estimate, report) =
                estimate_scalar_derivative(f, x0, (&domain, &target), &config.params)?;
            summary.push(format!("estimated candidate: {estimate}"));
            report
        }
    };
    summary.push(match report.worst_profile() {
        Some(p) => format!(
            "worst profile '{}': final deficit {:.3e}",
            p.label, p.final_deficit
        ),
        None => "no profiles".into(),
    });
    let verdict = report.verdict;
    let check = report.into_check_report(
        format!("derivative:{name}@{x0}"),
        vec![format!("function {name}")],
    );
    let json = check_report_to_json(&check)?;
    Ok((verdict, json, summary))
}

fn candidate_matrix(config: &RunConfig) -> Result<LinearOperator, RunError> {
    let candidate = config
        .candidate
        .clone()
        .ok_or_else(|| RunError::Usage("this check requires `candidate = [[...]]`".into()))?;
    let rows = match candidate {
        Candidate::Matrix(rows) => rows,
        Candidate::Scalar(c) => vec![vec![c]],
    };
    Ok(LinearOperator::from_rows(rows)?)
}

fn run_operator_derivative(
    config: &RunConfig,
    registry: &Registry,
    frechet: bool,
) -> Result<(Verdict, String, Vec<String>), RunError> {
    let kind = config.check.name();
    let name = config
        .function
        .as_deref()
        .ok_or_else(|| RunError::Usage(format!("{kind} requires `function = <name>`")))?;
    let op = resolve_operator(registry, name)?;
    let x0 = required_x0(config, op.domain_dim())?;
    let candidate = candidate_matrix(config)?;
    let domain = space_for_dim(config, op.domain_dim())?;
    let target = space_for_dim(config, op.codomain_dim())?;
    let extra: Vec<Vector> = if frechet {
        &config.points
    } else {
        &config.directions
    }
    .iter()
    .map(|row| Vector::new(row.clone()))
    .collect::<Result<_, _>>()?;
    let report = if frechet {
        verify_frechet(
            &op,
            &x0,
            &candidate,
            (&domain, &target),
            &config.params,
            &extra,
        )?
    } else {
        verify_gateaux(
            &op,
            &x0,
            &candidate,
            (&domain, &target),
            &config.params,
            &extra,
        )?
    };
    let mut summary = Vec::new();
    if let Some(p) = report.worst_profile() {
        summary.push(format!(
            "worst profile '{}': final deficit {:.3e} at t = {}",
            p.label, p.final_deficit, p.worst_t
        ));
    }
    let verdict = report.verdict;
    let check = report.into_check_report(
        format!("{kind}:{name}@{x0}"),
        vec![format!("operator {name}")],
    );
    let json = check_report_to_json(&check)?;
    Ok((verdict, json, summary))
}

fn run_theorems(config: &RunConfig) -> Result<(Verdict, String, Vec<String>), RunError> {
    let env = SuiteEnv {
        tnorm: config.tnorm.clone(),
        tconorm: config.tconorm.clone(),
    };
    let suite = match &config.theorem {
        Some(id) => run_theorem(TheoremId::parse(id)?, &env, &config.params)?,
        None => run_all(&env, &config.params)?,
    };
    let mut summary = Vec::new();
    let mut groups: Vec<&str> = suite.cases.iter().map(|c| c.group.as_str()).collect();
    groups.dedup();
    groups.sort_unstable();
    groups.dedup();
    for group in groups {
        let total = suite.cases_in_group(group).count();
        let ok = suite.cases_in_group(group).filter(|c| c.ok).count();
        let status = if ok == total { "pass" } else { "FAIL" };
        summary.push(format!("{group}: {status} ({ok}/{total} cases)"));
    }
    let verdict = suite.verdict;
    let json = suite_report_to_json(&suite)?;
    Ok((verdict, json, summary))
}

/// Write via a temp file in the destination directory, then rename.
fn write_atomically(path: &Path, contents: &str) -> Result<(), RunError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| RunError::Io(e.error))?;
    Ok(())
}

/// Registry listing lines for `ifn list`.
pub fn registry_lines() -> Vec<String> {
    default_registry()
        .entries()
        .into_iter()
        .map(|e| {
            format!(
                "{:<16} {:<9} {}->{}  oracle={}  {}",
                e.name,
                e.kind,
                e.domain_dim,
                e.codomain_dim,
                if e.has_classical_oracle { "yes" } else { "no" },
                e.description
            )
        })
        .collect()
}
