//! Certificate-style verifiers and estimators for three derivative notions:
//! the scalar derivative, the directional (Gateaux-style) derivative of an
//! operator, and the uniform (Frechet-style) derivative whose remainder is
//! rescaled by the membership deficit of the increment.
//!
//! Verifiers take a candidate and certify the defining limit over the shrink
//! schedule; estimation is classical (Richardson-extrapolated central
//! differences) and deliberately separate, so a sound estimate can still be
//! rejected by the verifier when the limit does not exist.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{LinearOperator, OperatorFunction, ScalarFunction};
use crate::limits::{
    assemble_profile, limit_check, CheckReport, LimitProfile, MembershipSeries, ReportWitness,
    Verdict,
};
use crate::params::CheckParams;
use crate::sample::SampleStream;
use crate::space::IFNSpace;
use crate::vector::{ClassicalNorm, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeKind {
    Scalar,
    Gateaux,
    Frechet,
}

/// Outcome of a derivative verification: one limit profile per approach
/// direction or path, all of which must pass.
#[derive(Debug, Clone)]
pub struct DerivativeReport {
    pub kind: DerivativeKind,
    pub candidate: String,
    pub verdict: Verdict,
    pub profiles: Vec<LimitProfile>,
    /// Label of the profile with the largest final deficit.
    pub worst: Option<String>,
    pub params: CheckParams,
    pub notes: Vec<String>,
}

impl DerivativeReport {
    fn from_profiles(
        kind: DerivativeKind,
        candidate: String,
        profiles: Vec<LimitProfile>,
        params: &CheckParams,
        notes: Vec<String>,
    ) -> Self {
        let verdict = Verdict::from_bool(profiles.iter().all(|p| p.verdict.passed()));
        let worst = profiles
            .iter()
            .max_by(|a, b| {
                a.final_deficit
                    .partial_cmp(&b.final_deficit)
                    .expect("deficits are finite")
            })
            .map(|p| p.label.clone());
        DerivativeReport {
            kind,
            candidate,
            verdict,
            profiles,
            worst,
            params: params.clone(),
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn worst_profile(&self) -> Option<&LimitProfile> {
        let label = self.worst.as_ref()?;
        self.profiles.iter().find(|p| &p.label == label)
    }

    /// True when every profile recorded membership exactly (1, 0)
    /// throughout: the residual vanished identically in floating point.
    pub fn residual_exactly_zero(&self) -> bool {
        self.profiles.iter().all(|p| p.residual_exactly_zero())
    }

    pub fn into_check_report(
        self,
        check_id: impl Into<String>,
        inputs: Vec<String>,
    ) -> CheckReport {
        let mut report = CheckReport::new(check_id, &self.params);
        report.inputs = inputs;
        report.inputs.push(format!("candidate {}", self.candidate));
        report.notes.extend(self.notes);
        for profile in self.profiles {
            report.push_profile(profile);
        }
        report
    }
}

fn require_dim(space: &IFNSpace, dim: usize, what: &str) -> Result<()> {
    if space.dim() == dim {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            field: what.into(),
            message: format!("space dimension {} does not match {}", space.dim(), dim),
        })
    }
}

/// Verify that `candidate` is the derivative of `f` at `x0`: the
/// difference-quotient residual must certify a limit of zero over both
/// signs of the shrink schedule.
pub fn verify_scalar_derivative(
    f: &ScalarFunction,
    x0: f64,
    candidate: f64,
    spaces: (&IFNSpace, &IFNSpace),
    params: &CheckParams,
) -> Result<DerivativeReport> {
    let params = params.normalized()?;
    require_dim(spaces.0, 1, "scalar domain")?;
    require_dim(spaces.1, 1, "scalar target")?;
    if !candidate.is_finite() {
        return Err(Error::InvalidParams {
            field: "candidate".into(),
            message: "candidate derivative must be finite".into(),
        });
    }
    let f0 = f.eval(x0)?;
    let mut profiles = Vec::with_capacity(2);
    for sign in [1.0f64, -1.0] {
        let label = if sign > 0.0 { "h > 0" } else { "h < 0" };
        let profile = limit_check(
            label,
            |h| {
                let s = sign * h;
                let quotient = (f.eval(x0 + s)? - f0) / s;
                Vector::scalar(quotient - candidate)
            },
            spaces.1,
            &params,
        )?;
        profiles.push(profile);
    }
    Ok(DerivativeReport::from_profiles(
        DerivativeKind::Scalar,
        format!("{candidate}"),
        profiles,
        &params,
        vec![format!("f = {}, x0 = {x0}", f.name())],
    ))
}

const MAX_TABLEAU_LEVELS: usize = 16;

/// Richardson-extrapolated central differences over the shrink schedule.
/// The tableau entry with the smallest error estimate wins, and descent
/// stops once roundoff dominates, so the initial step can stay coarse.
fn richardson_central(f: &ScalarFunction, x0: f64, params: &CheckParams) -> Result<f64> {
    let hs = params.schedule.magnitudes();
    let levels = hs.len().min(MAX_TABLEAU_LEVELS);
    let inv_rho2 = 1.0 / (params.schedule.rho * params.schedule.rho);
    let mut tableau: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut best = f64::NAN;
    let mut best_err = f64::INFINITY;
    for i in 0..levels {
        let h = hs[i];
        let d = (f.eval(x0 + h)? - f.eval(x0 - h)?) / (2.0 * h);
        let mut row = vec![d];
        let mut factor = inv_rho2;
        for j in 1..=i {
            let prev = &tableau[i - 1];
            let v = (row[j - 1] * factor - prev[j - 1]) / (factor - 1.0);
            let err = (v - row[j - 1]).abs().max((v - prev[j - 1]).abs());
            if err <= best_err {
                best_err = err;
                best = v;
            }
            row.push(v);
            factor *= inv_rho2;
        }
        if i >= 2 && best_err > 0.0 {
            let diag_jump = (row[i] - tableau[i - 1][i - 1]).abs();
            if diag_jump >= 2.0 * best_err {
                break;
            }
        }
        tableau.push(row);
    }
    if best.is_nan() {
        best = tableau[0][0];
    }
    if !best.is_finite() {
        return Err(Error::NonFiniteEval {
            at: format!("derivative estimate of {} at {x0}", f.name()),
        });
    }
    Ok(best)
}

/// Estimate the derivative classically and verify the estimate. Returns
/// both; the report's verdict is never asserted here — a symmetric kink
/// yields a plausible estimate that the verifier then rejects.
pub fn estimate_scalar_derivative(
    f: &ScalarFunction,
    x0: f64,
    spaces: (&IFNSpace, &IFNSpace),
    params: &CheckParams,
) -> Result<(f64, DerivativeReport)> {
    let params = params.normalized()?;
    let candidate = richardson_central(f, x0, &params)?;
    let report = verify_scalar_derivative(f, x0, candidate, spaces, &params)?;
    Ok((candidate, report))
}

/// n-th derivative estimate via iterated differentiation of the estimator
/// itself; n = 1 reduces exactly to the plain estimate. The order guard
/// reflects the noise growth of nesting.
pub fn estimate_nth_derivative(
    f: &ScalarFunction,
    x0: f64,
    n: u32,
    params: &CheckParams,
) -> Result<f64> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedOrder { n });
    }
    let params = params.normalized()?;
    nth_recursive(f, x0, n, &params)
}

fn nth_recursive(f: &ScalarFunction, x0: f64, n: u32, params: &CheckParams) -> Result<f64> {
    if n == 1 {
        return richardson_central(f, x0, params);
    }
    let inner = f.clone();
    let inner_params = params.clone();
    let order_below = n - 1;
    let g = ScalarFunction::new(
        format!("estimated-derivative-{order_below}-of-{}", f.name()),
        move |x| nth_recursive(&inner, x, order_below, &inner_params).unwrap_or(f64::NAN),
    );
    richardson_central(&g, x0, params)
}

const RANDOM_DIRECTIONS: usize = 8;

/// Direction pool for operator checks: the positive axes, a seeded batch of
/// max-norm unit directions with dyadic entries, then any user-supplied
/// directions. Dyadic entries keep difference quotients of linear maps
/// exact in floating point.
pub fn direction_pool(
    dim: usize,
    params: &CheckParams,
    user: &[Vector],
) -> Result<Vec<(String, Vector)>> {
    let mut out = Vec::with_capacity(dim + RANDOM_DIRECTIONS + user.len());
    for i in 0..dim {
        out.push((format!("+e{}", i + 1), Vector::axis(dim, i)));
    }
    let mut stream = SampleStream::new(params.seed, 0x41);
    for k in 0..RANDOM_DIRECTIONS {
        let d = stream.direction(dim);
        out.push((format!("r{k} {d}"), d));
    }
    for (k, d) in user.iter().enumerate() {
        if d.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: d.dim(),
            });
        }
        if d.is_zero() {
            return Err(Error::InvalidParams {
                field: "directions".into(),
                message: "directions must be nonzero".into(),
            });
        }
        out.push((format!("user{k} {d}"), d.clone()));
    }
    Ok(out)
}

fn check_operator_shapes(
    t_op: &OperatorFunction,
    x0: &Vector,
    candidate: &LinearOperator,
    spaces: (&IFNSpace, &IFNSpace),
) -> Result<()> {
    require_dim(spaces.0, t_op.domain_dim(), "operator domain")?;
    require_dim(spaces.1, t_op.codomain_dim(), "operator target")?;
    if x0.dim() != t_op.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: t_op.domain_dim(),
            got: x0.dim(),
        });
    }
    if candidate.cols() != t_op.domain_dim() || candidate.rows() != t_op.codomain_dim() {
        return Err(Error::InvalidParams {
            field: "candidate".into(),
            message: format!(
                "candidate is {}x{} but the operator maps R^{} to R^{}",
                candidate.rows(),
                candidate.cols(),
                t_op.domain_dim(),
                t_op.codomain_dim()
            ),
        });
    }
    Ok(())
}

/// Verify a directional derivative: along every pooled direction x the
/// residual (T(x0 + s x) - T(x0)) / s - G(x) must certify a limit of zero
/// over both signs of s.
pub fn verify_gateaux(
    t_op: &OperatorFunction,
    x0: &Vector,
    candidate: &LinearOperator,
    spaces: (&IFNSpace, &IFNSpace),
    params: &CheckParams,
    user_directions: &[Vector],
) -> Result<DerivativeReport> {
    let params = params.normalized()?;
    check_operator_shapes(t_op, x0, candidate, spaces)?;
    let t0 = t_op.eval(x0)?;
    let directions = direction_pool(t_op.domain_dim(), &params, user_directions)?;
    let mut profiles = Vec::with_capacity(directions.len() * 2);
    for (label, d) in &directions {
        let gd = candidate.apply(d)?;
        for sign in [1.0f64, -1.0] {
            let sign_label = if sign > 0.0 { "s > 0" } else { "s < 0" };
            let profile = limit_check(
                format!("dir {label}, {sign_label}"),
                |h| {
                    let s = sign * h;
                    let moved = t_op.eval(&x0.add(&d.scale(s))?)?;
                    moved.sub(&t0)?.scale(1.0 / s).sub(&gd)
                },
                spaces.1,
                &params,
            )?;
            profiles.push(profile);
        }
    }
    Ok(DerivativeReport::from_profiles(
        DerivativeKind::Gateaux,
        candidate.format_bracketed(),
        profiles,
        &params,
        vec![format!("T = {}, x0 = {x0}", t_op.name())],
    ))
}

/// An approach path: increment vectors aligned with the schedule steps.
struct ApproachPath {
    label: String,
    deltas: Vec<Vector>,
}

fn frechet_paths(
    x0: &Vector,
    params: &CheckParams,
    user_points: &[Vector],
) -> Result<Vec<ApproachPath>> {
    let dim = x0.dim();
    let hs = params.schedule.magnitudes();
    let directions = direction_pool(dim, params, &[])?;
    let mut paths = Vec::new();
    for (i, (label, d)) in directions.iter().enumerate() {
        for sign in [1.0f64, -1.0] {
            let sign_label = if sign > 0.0 { "+" } else { "-" };
            let deltas = hs.iter().map(|&h| d.scale(sign * h)).collect();
            paths.push(ApproachPath {
                label: format!("ray {sign_label}{label}"),
                deltas,
            });
        }
        // Curved companion: quadratic drift toward the next pooled
        // direction separates uniform from merely directional behavior.
        let partner = &directions[(i + 1) % directions.len()].1;
        let deltas = hs
            .iter()
            .map(|&h| {
                d.scale(h)
                    .add(&partner.scale(0.5 * h * h))
                    .expect("dimensions agree")
            })
            .collect();
        paths.push(ApproachPath {
            label: format!("curve {label}"),
            deltas,
        });
    }
    for (k, p) in user_points.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        let q = p.sub(x0)?;
        if q.is_zero() {
            return Err(Error::InvalidParams {
                field: "points".into(),
                message: "x = x0 excluded: denominators vanish by axioms (iii)/(viii)".into(),
            });
        }
        let h0 = params.schedule.h0;
        let deltas = hs.iter().map(|&h| q.scale(h / h0)).collect();
        paths.push(ApproachPath {
            label: format!("point{k} through {p}"),
            deltas,
        });
    }
    Ok(paths)
}

/// Verify a uniform derivative: along straight and curved approach paths
/// the remainder T(x) - T(x0) - F(x - x0), rescaled by the membership
/// deficit of the increment, must certify a limit of zero. The same grid t
/// feeds the inner denominators and the outer membership.
pub fn verify_frechet(
    t_op: &OperatorFunction,
    x0: &Vector,
    candidate: &LinearOperator,
    spaces: (&IFNSpace, &IFNSpace),
    params: &CheckParams,
    user_points: &[Vector],
) -> Result<DerivativeReport> {
    let params = params.normalized()?;
    check_operator_shapes(t_op, x0, candidate, spaces)?;
    let (domain, target) = spaces;
    let t0 = t_op.eval(x0)?;
    let hs = params.schedule.magnitudes();
    let mut profiles = Vec::new();
    for path in frechet_paths(x0, &params, user_points)? {
        let mut remainders = Vec::with_capacity(hs.len());
        for (delta, &h) in path.deltas.iter().zip(&hs) {
            let moved = t_op.eval(&x0.add(delta)?)?;
            let remainder = moved.sub(&t0)?.sub(&candidate.apply(delta)?)?;
            if !remainder.is_finite() {
                return Err(Error::NonFiniteResidual { h });
            }
            remainders.push(remainder);
        }
        let mut series = Vec::with_capacity(params.t_grid.len());
        for &t in &params.t_grid {
            let mut mus = Vec::with_capacity(hs.len());
            let mut nus = Vec::with_capacity(hs.len());
            for ((delta, remainder), &h) in path.deltas.iter().zip(&remainders).zip(&hs) {
                let pair_u = domain.membership(delta, t)?;
                let denom_mu = 1.0 - pair_u.mu;
                let denom_nu = pair_u.nu;
                if denom_mu < 1e-300 || denom_nu < 1e-300 {
                    return Err(Error::DegenerateSample { h });
                }
                mus.push(target.membership(&remainder.scale(1.0 / denom_mu), t)?.mu);
                nus.push(target.membership(&remainder.scale(1.0 / denom_nu), t)?.nu);
            }
            series.push(MembershipSeries { t, mus, nus });
        }
        profiles.push(assemble_profile(path.label, &hs, series, &params));
    }
    Ok(DerivativeReport::from_profiles(
        DerivativeKind::Frechet,
        candidate.format_bracketed(),
        profiles,
        &params,
        vec![
            format!("T = {}, x0 = {x0}", t_op.name()),
            "inner and outer membership scale bound to the same grid t".into(),
        ],
    ))
}

/// Largest classical distance between two candidate derivatives over the
/// pooled unit directions. Used by the uniqueness checks: two candidates
/// that both pass verification must land within the certificate bound.
pub fn sampled_operator_distance(
    g1: &LinearOperator,
    g2: &LinearOperator,
    norm: &ClassicalNorm,
    params: &CheckParams,
) -> Result<f64> {
    if g1.rows() != g2.rows() || g1.cols() != g2.cols() {
        return Err(Error::DimensionMismatch {
            expected: g1.cols(),
            got: g2.cols(),
        });
    }
    let mut worst = 0.0f64;
    for (_, d) in direction_pool(g1.cols(), params, &[])? {
        let gap = g1.apply(&d)?.sub(&g2.apply(&d)?)?;
        worst = worst.max(norm.evaluate(&gap)?);
    }
    Ok(worst)
}

/// Witness for a derivative report embedded in a larger check report.
pub fn worst_step_witness(report: &DerivativeReport) -> Option<ReportWitness> {
    let profile = report.worst_profile()?;
    let trace = profile.per_t.iter().find(|tr| tr.t == profile.worst_t)?;
    let step = trace.steps.last()?;
    Some(ReportWitness::ProfileStep {
        label: profile.label.clone(),
        t: profile.worst_t,
        h: step.h,
        mu: step.mu,
        nu: step.nu,
    })
}
