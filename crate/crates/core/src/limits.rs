//! The numerical reading of "limit" shared by every check in the crate.
//!
//! A limit certificate evaluates the membership pair of a shrinking residual
//! at every grid scale t. It passes when the final step reaches mu >= 1 -
//! alpha and nu <= alpha and the trailing window is settled: mu
//! non-decreasing and nu non-increasing within a small slack. The same
//! machinery checks sequence convergence (indices in place of steps) and
//! pointwise continuity (one profile per approach direction).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::CheckParams;
use crate::sample::SampleStream;
use crate::space::{IFNSpace, IfnAxiomOutcome, IfnWitness};
use crate::tnorm::{AlgebraWitness, AxiomOutcome, ContinuityOutcome};
use crate::vector::Vector;

/// Pass/fail outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn and(self, other: Verdict) -> Verdict {
        Verdict::from_bool(self.passed() && other.passed())
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// Membership pair of the residual at one step.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StepSample {
    pub h: f64,
    pub mu: f64,
    pub nu: f64,
}

/// Trace of one grid scale. Traces longer than [`TRACE_CAP`] steps are
/// thinned for reporting (verdicts always use every step); the final
/// tail window is always kept.
#[derive(Debug, Clone, Serialize)]
pub struct TTrace {
    pub t: f64,
    pub steps: Vec<StepSample>,
}

pub const TRACE_CAP: usize = 512;

/// Per-scale membership traces of one residual with the certificate verdict.
#[derive(Debug, Clone, Serialize)]
pub struct LimitProfile {
    pub label: String,
    pub per_t: Vec<TTrace>,
    pub verdict: Verdict,
    /// Grid scale with the largest final deficit (smallest such t on ties).
    pub worst_t: f64,
    /// max over t of max(1 - mu_final, nu_final).
    pub final_deficit: f64,
}

impl LimitProfile {
    /// Final (mu, nu) at the given grid scale.
    pub fn final_pair(&self, t: f64) -> Option<(f64, f64)> {
        self.per_t
            .iter()
            .find(|trace| trace.t == t)
            .and_then(|trace| trace.steps.last())
            .map(|s| (s.mu, s.nu))
    }

    /// True when every recorded membership is exactly (1, 0): the residual
    /// vanished identically in floating point.
    pub fn residual_exactly_zero(&self) -> bool {
        self.per_t
            .iter()
            .all(|trace| trace.steps.iter().all(|s| s.mu == 1.0 && s.nu == 0.0))
    }
}

fn thin_indices(len: usize, tail: usize) -> Vec<usize> {
    if len <= TRACE_CAP {
        return (0..len).collect();
    }
    let stride = len.div_ceil(TRACE_CAP);
    let mut keep: Vec<usize> = (0..len).step_by(stride).collect();
    let tail_start = len.saturating_sub(tail + 1);
    keep.extend(tail_start..len);
    keep.sort_unstable();
    keep.dedup();
    keep
}

/// One grid scale worth of membership values, aligned with the step
/// magnitudes of the profile under assembly.
pub(crate) struct MembershipSeries {
    pub t: f64,
    pub mus: Vec<f64>,
    pub nus: Vec<f64>,
}

/// Apply the certificate criterion to precomputed membership series:
/// final-step thresholds at level alpha plus a settled tail window.
pub(crate) fn assemble_profile(
    label: String,
    hs: &[f64],
    series: Vec<MembershipSeries>,
    params: &CheckParams,
) -> LimitProfile {
    let slack = params.tail_slack();
    let window = params.tail_window.min(hs.len());
    let mut per_t = Vec::with_capacity(series.len());
    let mut verdict = true;
    let mut worst_t = series[0].t;
    let mut final_deficit = f64::NEG_INFINITY;

    for MembershipSeries { t, mus, nus } in series {
        let last = hs.len() - 1;
        let threshold_ok = mus[last] >= 1.0 - params.alpha && nus[last] <= params.alpha;
        let mut tail_ok = true;
        for k in hs.len() - window..last {
            if mus[k + 1] < mus[k] - slack || nus[k + 1] > nus[k] + slack {
                tail_ok = false;
                break;
            }
        }
        let deficit = (1.0 - mus[last]).max(nus[last]);
        if deficit > final_deficit {
            final_deficit = deficit;
            worst_t = t;
        }
        verdict &= threshold_ok && tail_ok;

        let steps = thin_indices(hs.len(), window)
            .into_iter()
            .map(|k| StepSample {
                h: hs[k],
                mu: mus[k],
                nu: nus[k],
            })
            .collect();
        per_t.push(TTrace { t, steps });
    }

    LimitProfile {
        label,
        per_t,
        verdict: Verdict::from_bool(verdict),
        worst_t,
        final_deficit,
    }
}

/// Evaluate membership traces of precomputed residual values and apply the
/// certificate criterion. `hs` carries the step magnitudes (or sequence
/// indices) aligned with `values`.
fn profile_from_values(
    label: String,
    hs: &[f64],
    values: &[Vector],
    target: &IFNSpace,
    params: &CheckParams,
) -> Result<LimitProfile> {
    debug_assert_eq!(hs.len(), values.len());
    let mut series = Vec::with_capacity(params.t_grid.len());
    for &t in &params.t_grid {
        let mut mus = Vec::with_capacity(values.len());
        let mut nus = Vec::with_capacity(values.len());
        for (value, &h) in values.iter().zip(hs) {
            if !value.is_finite() {
                return Err(Error::NonFiniteResidual { h });
            }
            let pair = target.membership(value, t)?;
            mus.push(pair.mu);
            nus.push(pair.nu);
        }
        series.push(MembershipSeries { t, mus, nus });
    }
    Ok(assemble_profile(label, hs, series, params))
}

/// Run the limit certificate on a residual map over the shrink schedule.
pub fn limit_check(
    label: impl Into<String>,
    residual: impl Fn(f64) -> Result<Vector>,
    target: &IFNSpace,
    params: &CheckParams,
) -> Result<LimitProfile> {
    let params = params.normalized()?;
    let hs = params.schedule.magnitudes();
    let mut values = Vec::with_capacity(hs.len());
    for &h in &hs {
        let v = residual(h)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteResidual { h });
        }
        values.push(v);
    }
    profile_from_values(label.into(), &hs, &values, target, &params)
}

/// Tags of the entries a report can carry: limit profiles for the
/// limit-style checks, axiom outcomes for the algebra and norm checkers.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProfileEntry {
    Limit(LimitProfile),
    Algebra {
        op: String,
        outcome: AxiomOutcome,
    },
    AlgebraContinuity {
        op: String,
        outcome: ContinuityOutcome,
    },
    Axiom {
        space: String,
        outcome: IfnAxiomOutcome,
    },
}

/// Worst-case evidence attached to a report.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportWitness {
    ProfileStep {
        label: String,
        t: f64,
        h: f64,
        mu: f64,
        nu: f64,
    },
    Algebra {
        axiom: String,
        witness: AlgebraWitness,
    },
    Axiom {
        axiom: String,
        witness: IfnWitness,
    },
    Note {
        detail: String,
    },
}

/// Universal output of a check: verdict, traces, witnesses and the full
/// parameter echo. Reports are reproducible from (inputs, seed, params);
/// wall-clock timing stays in memory and is never serialized.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_id: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub profiles: Vec<ProfileEntry>,
    pub witnesses: Vec<ReportWitness>,
    pub seed: u64,
    pub params: CheckParams,
    pub notes: Vec<String>,
    pub timing: Option<std::time::Duration>,
}

impl CheckReport {
    pub fn new(check_id: impl Into<String>, params: &CheckParams) -> Self {
        CheckReport {
            check_id: check_id.into(),
            inputs: Vec::new(),
            verdict: Verdict::Pass,
            profiles: Vec::new(),
            witnesses: Vec::new(),
            seed: params.seed,
            params: params.clone(),
            notes: vec!["grid-certified: quantifiers over t are sampled on the grid".into()],
            timing: None,
        }
    }

    pub fn push_profile(&mut self, profile: LimitProfile) {
        self.verdict = self.verdict.and(profile.verdict);
        if !profile.verdict.passed() {
            if let Some(trace) = profile.per_t.iter().find(|tr| tr.t == profile.worst_t) {
                if let Some(step) = trace.steps.last() {
                    self.witnesses.push(ReportWitness::ProfileStep {
                        label: profile.label.clone(),
                        t: profile.worst_t,
                        h: step.h,
                        mu: step.mu,
                        nu: step.nu,
                    });
                }
            }
        }
        self.profiles.push(ProfileEntry::Limit(profile));
    }

    /// Profile with the largest final deficit.
    pub fn worst_profile(&self) -> Option<&LimitProfile> {
        self.profiles
            .iter()
            .filter_map(|p| match p {
                ProfileEntry::Limit(profile) => Some(profile),
                _ => None,
            })
            .max_by(|a, b| {
                a.final_deficit
                    .partial_cmp(&b.final_deficit)
                    .expect("deficits are finite")
            })
    }

    pub fn limit_profiles(&self) -> impl Iterator<Item = &LimitProfile> {
        self.profiles.iter().filter_map(|p| match p {
            ProfileEntry::Limit(profile) => Some(profile),
            _ => None,
        })
    }
}

/// Check that a sequence converges to the candidate in the membership
/// sense: the residual x_n - candidate must certify a limit over the index
/// horizon n = 1..=steps.
pub fn check_convergence(
    space: &IFNSpace,
    sequence: impl Fn(usize) -> Result<Vector>,
    limit_candidate: &Vector,
    params: &CheckParams,
) -> Result<CheckReport> {
    let params = params.normalized()?;
    if limit_candidate.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: limit_candidate.dim(),
        });
    }
    let horizon = params.schedule.steps;
    let mut indices = Vec::with_capacity(horizon);
    let mut values = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let x_n = sequence(n)?;
        let residual = x_n.sub(limit_candidate)?;
        if !residual.is_finite() {
            return Err(Error::NonFiniteResidual { h: n as f64 });
        }
        indices.push(n as f64);
        values.push(residual);
    }
    let profile = profile_from_values(
        "sequence residual by index".into(),
        &indices,
        &values,
        space,
        &params,
    )?;
    let mut report = CheckReport::new("convergence", &params);
    report
        .inputs
        .push(format!("candidate limit {limit_candidate}"));
    report.inputs.push(format!("space {}", space.label()));
    report
        .notes
        .push("steps column holds sequence indices, not magnitudes".into());
    report.push_profile(profile);
    Ok(report)
}

/// Approach directions for pointwise checks: the signed axes followed by
/// seeded max-norm unit directions with dyadic entries.
pub fn continuity_directions(dim: usize, params: &CheckParams) -> Vec<Vector> {
    let mut dirs = Vec::new();
    for i in 0..dim {
        dirs.push(Vector::axis(dim, i));
        dirs.push(Vector::axis(dim, i).scale(-1.0));
    }
    let random = params.sample_count / 10;
    let mut stream = SampleStream::new(params.seed, 0x31);
    for _ in 0..random {
        dirs.push(stream.direction(dim));
    }
    dirs
}

/// Pointwise continuity at x0: for each approach direction d the residual
/// f(x0 + h d) - f(x0) must certify a limit of zero.
pub fn check_continuity(
    f: impl Fn(&Vector) -> Result<Vector>,
    domain: &IFNSpace,
    target: &IFNSpace,
    x0: &Vector,
    params: &CheckParams,
) -> Result<CheckReport> {
    let params = params.normalized()?;
    if x0.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: x0.dim(),
        });
    }
    let base = f(x0)?;
    if base.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            got: base.dim(),
        });
    }
    let mut report = CheckReport::new("continuity", &params);
    report.inputs.push(format!("x0 = {x0}"));
    report.inputs.push(format!("domain {}", domain.label()));
    report.inputs.push(format!("target {}", target.label()));
    for (idx, d) in continuity_directions(domain.dim(), &params)
        .iter()
        .enumerate()
    {
        let label = direction_label(idx, domain.dim(), d);
        let profile = limit_check(
            label,
            |h| f(&x0.add(&d.scale(h))?)?.sub(&base),
            target,
            &params,
        )?;
        report.push_profile(profile);
    }
    Ok(report)
}

/// Stable labels: signed axes first, then seeded directions with their
/// (finitely printing, dyadic) entries.
pub(crate) fn direction_label(idx: usize, dim: usize, d: &Vector) -> String {
    if idx < 2 * dim {
        let axis = idx / 2 + 1;
        let sign = if idx.is_multiple_of(2) { '+' } else { '-' };
        format!("dir {sign}e{axis}")
    } else {
        format!("dir r{} {}", idx - 2 * dim, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::IFNSpace;
    use crate::tnorm::{TConorm, TNorm};
    use crate::vector::ClassicalNorm;

    fn scalar_space() -> IFNSpace {
        IFNSpace::scalar_standard()
    }

    fn small_params() -> CheckParams {
        CheckParams::default().with_sample_count(100)
    }

    #[test]
    fn vanishing_residual_passes_with_tiny_final_deficit() {
        let profile =
            limit_check("h itself", Vector::scalar, &scalar_space(), &small_params()).unwrap();
        assert_eq!(profile.verdict, Verdict::Pass);
        assert_eq!(profile.worst_t, 0.1);
        // h_29 = 2^-29 against t = 0.1.
        let expected = 0.5f64.powi(29) / (0.1 + 0.5f64.powi(29));
        assert!((profile.final_deficit - expected).abs() < 1e-12);
        assert!((profile.final_deficit - 1.9e-8).abs() < 2e-9);
    }

    #[test]
    fn stuck_residual_fails_with_half_membership_plateau() {
        let profile = limit_check(
            "0.1 + h",
            |h| Vector::scalar(0.1 + h),
            &scalar_space(),
            &small_params(),
        )
        .unwrap();
        assert_eq!(profile.verdict, Verdict::Fail);
        let (mu, _) = profile.final_pair(0.1).unwrap();
        assert!((mu - 0.5).abs() < 1e-6, "{mu}");
    }

    #[test]
    fn zero_residual_is_exactly_one_zero() {
        let profile = limit_check(
            "zero",
            |_| Vector::scalar(0.0),
            &scalar_space(),
            &small_params(),
        )
        .unwrap();
        assert_eq!(profile.verdict, Verdict::Pass);
        assert!(profile.residual_exactly_zero());
        assert_eq!(profile.final_deficit, 0.0);
    }

    #[test]
    fn verdict_invariant_under_residual_sign_flip() {
        for scale in [1.0, 0.3, 2.5] {
            let plus = limit_check(
                "r",
                |h| Vector::scalar(scale * h),
                &scalar_space(),
                &small_params(),
            )
            .unwrap();
            let minus = limit_check(
                "-r",
                |h| Vector::scalar(-scale * h),
                &scalar_space(),
                &small_params(),
            )
            .unwrap();
            assert_eq!(plus.verdict, minus.verdict);
            assert_eq!(plus.final_deficit, minus.final_deficit);
        }
    }

    #[test]
    fn monotone_in_alpha() {
        for offset in [0.0, 1e-5, 1e-4, 0.02] {
            let base = small_params();
            let looser = small_params().with_alpha(1e-2);
            let run = |p: &CheckParams| {
                limit_check("r", |h| Vector::scalar(h + offset), &scalar_space(), p)
                    .unwrap()
                    .verdict
            };
            if run(&base).passed() {
                assert!(run(&looser).passed(), "offset {offset}");
            }
        }
    }

    #[test]
    fn closed_form_threshold_cross_check() {
        // For the standard construction and tail-monotone residuals, the
        // certificate is equivalent to a classical bound on the final
        // residual magnitude.
        let params = small_params();
        for offset in [0.0, 5e-6, 9e-5, 1.2e-4, 1e-3, 0.05] {
            let profile = limit_check(
                "r",
                |h| Vector::scalar(h + offset),
                &scalar_space(),
                &params,
            )
            .unwrap();
            let final_residual = 0.5f64.powi(29) + offset;
            let bound = params.alpha * params.min_t() / (1.0 - params.alpha);
            let classical = final_residual <= bound + 1e-12;
            assert_eq!(profile.verdict.passed(), classical, "offset {offset}");
        }
    }

    #[test]
    fn non_finite_residual_is_an_error() {
        let err = limit_check(
            "blows up",
            |h| Vector::new(vec![1.0 / (h - h)]),
            &scalar_space(),
            &small_params(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NonFiniteVector | Error::NonFiniteResidual { .. }
        ));
    }

    fn convergence_params() -> CheckParams {
        let mut p = CheckParams::default_convergence();
        p.sample_count = 100;
        p
    }

    #[test]
    fn harmonic_sequence_converges_to_zero() {
        let report = check_convergence(
            &scalar_space(),
            |n| Vector::scalar(1.0 / n as f64),
            &Vector::zero(1),
            &convergence_params(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn alternating_sequence_fails_with_documented_witness() {
        let report = check_convergence(
            &scalar_space(),
            |n| Vector::scalar(if n % 2 == 0 { 1.0 } else { -1.0 }),
            &Vector::zero(1),
            &convergence_params(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let profile = report.worst_profile().unwrap();
        let (mu, _) = profile.final_pair(0.1).unwrap();
        assert!((mu - 0.1 / 1.1).abs() < 1e-12, "{mu}");
    }

    #[test]
    fn constant_sequence_matches_its_own_limit() {
        let v = Vector::new(vec![2.5, -1.0]).unwrap();
        let space = IFNSpace::standard(
            2,
            ClassicalNorm::Euclidean,
            TNorm::Minimum,
            TConorm::Maximum,
        )
        .unwrap();
        let report =
            check_convergence(&space, |_| Ok(v.clone()), &v, &convergence_params()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.worst_profile().unwrap().residual_exactly_zero());
    }

    #[test]
    fn classical_epsilon_n_verdicts_agree_on_builtin_sequences() {
        let params = convergence_params();
        let space = scalar_space();
        type Term = Box<dyn Fn(usize) -> f64>;
        let cases: Vec<(&str, Term)> = vec![
            ("harmonic", Box::new(|n| 1.0 / n as f64)),
            (
                "alternating",
                Box::new(|n| if n % 2 == 0 { 1.0 } else { -1.0 }),
            ),
            ("constant", Box::new(|_| 0.0)),
            ("slow", Box::new(|n| 1.0 / (n as f64).sqrt())),
            ("geometric", Box::new(|n| 0.5f64.powi(n.min(1_000) as i32))),
        ];
        for (name, seq) in cases {
            let report = check_convergence(
                &space,
                |n| Vector::scalar(seq(n)),
                &Vector::zero(1),
                &params,
            )
            .unwrap();
            // Independent classical oracle: the tail of |x_n| must sit
            // inside the ball matched to (alpha, min t).
            let eps = params.alpha * params.min_t() / (1.0 - params.alpha);
            let horizon = params.schedule.steps;
            let classical =
                (horizon - params.tail_window..=horizon).all(|n| seq(n).abs() <= eps + 1e-12);
            assert_eq!(report.verdict.passed(), classical, "{name}");
        }
    }

    #[test]
    fn doubling_map_is_continuous() {
        let report = check_continuity(
            |x| Ok(x.scale(2.0)),
            &scalar_space(),
            &scalar_space(),
            &Vector::scalar(0.7).unwrap(),
            &small_params(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn step_function_is_discontinuous_at_zero() {
        let report = check_continuity(
            |x| Vector::scalar(if x.entries()[0] < 0.0 { 0.0 } else { 1.0 }),
            &scalar_space(),
            &scalar_space(),
            &Vector::scalar(0.0).unwrap(),
            &small_params(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn identity_is_continuous() {
        let space = IFNSpace::standard(2, ClassicalNorm::MaxNorm, TNorm::Minimum, TConorm::Maximum)
            .unwrap();
        let report = check_continuity(
            |x| Ok(x.clone()),
            &space,
            &space,
            &Vector::new(vec![1.0, -2.0]).unwrap(),
            &small_params(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn long_traces_are_thinned_but_keep_the_tail() {
        let report = check_convergence(
            &scalar_space(),
            |n| Vector::scalar(1.0 / n as f64),
            &Vector::zero(1),
            &convergence_params(),
        )
        .unwrap();
        let profile = report.worst_profile().unwrap();
        let steps = &profile.per_t[0].steps;
        assert!(steps.len() <= TRACE_CAP + convergence_params().tail_window + 2);
        let last = steps.last().unwrap();
        assert_eq!(last.h, 100_000.0);
    }
}
