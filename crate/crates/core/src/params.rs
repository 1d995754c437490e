//! Shared check parameters: the shrink schedule, the t-grid and the
//! acceptance level together form the finite certificate every limit-style
//! check reports against.

use serde::Serialize;

use crate::error::{Error, Result};

/// Geometric shrink schedule h_k = h0 * rho^k for k = 0..steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSchedule {
    pub h0: f64,
    pub rho: f64,
    pub steps: usize,
}

impl LimitSchedule {
    pub fn new(h0: f64, rho: f64, steps: usize) -> Result<Self> {
        let schedule = LimitSchedule { h0, rho, steps };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h0.is_finite() && self.h0 > 0.0) {
            return Err(invalid("schedule.h0", "must be positive and finite"));
        }
        if !(self.rho.is_finite() && self.rho > 0.0 && self.rho < 1.0) {
            return Err(invalid("schedule.rho", "must lie in (0, 1)"));
        }
        if self.steps == 0 {
            return Err(invalid("schedule.steps", "must be at least 1"));
        }
        let last = self.h0 * self.rho.powi(self.steps as i32 - 1);
        if last <= 0.0 {
            return Err(invalid(
                "schedule.steps",
                "final step underflows to zero in floating point",
            ));
        }
        Ok(())
    }

    /// The strictly decreasing magnitudes h_0 > h_1 > ... > h_{K-1} > 0.
    pub fn magnitudes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.steps);
        let mut h = self.h0;
        for _ in 0..self.steps {
            out.push(h);
            h *= self.rho;
        }
        out
    }
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule {
            h0: 1.0,
            rho: 0.5,
            steps: 30,
        }
    }
}

/// Numerical semantics of "limit" plus the sampling knobs of the axiom
/// checkers. One bag of parameters travels through every check so reports
/// can echo the complete certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckParams {
    pub schedule: LimitSchedule,
    /// Positive membership parameters the checks are evaluated at; kept
    /// sorted ascending and deduplicated.
    pub t_grid: Vec<f64>,
    /// Acceptance level: a limit certificate requires mu >= 1 - alpha and
    /// nu <= alpha at the final step.
    pub alpha: f64,
    /// Number of trailing steps over which mu must be settled.
    pub tail_window: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Tolerance for algebraic equalities and inequalities.
    pub algebra_tol: f64,
    /// Tolerance for the heuristic membership limits at t_max.
    pub limit_tol: f64,
    /// Margin for strict membership checks away from the null vector.
    pub strict_tol: f64,
    /// Perturbation radius of the modulus-of-continuity heuristic.
    pub continuity_step: f64,
    /// Allowed output jump of the modulus-of-continuity heuristic.
    pub continuity_bound: f64,
    /// Large time standing in for the t -> infinity limits.
    pub t_max: f64,
}

impl CheckParams {
    /// Defaults tuned for limit certificates: the final step is about
    /// 1.9e-9, small enough to drive standard-construction deficits below
    /// alpha while difference quotients stay stable in double precision.
    pub fn default_limits() -> Self {
        CheckParams {
            schedule: LimitSchedule::default(),
            t_grid: vec![0.1, 1.0, 10.0],
            alpha: 1e-3,
            tail_window: 5,
            sample_count: 10_000,
            seed: 42,
            algebra_tol: 1e-12,
            limit_tol: 1e-3,
            strict_tol: 1e-3,
            continuity_step: 1e-3,
            continuity_bound: 3e-3,
            t_max: 1e6,
        }
    }

    /// Wider default grid for axiom conformance runs.
    pub fn default_axioms() -> Self {
        CheckParams {
            t_grid: vec![0.01, 0.1, 1.0, 10.0, 100.0],
            ..CheckParams::default_limits()
        }
    }

    /// Long index horizon for sequence-convergence checks; the shrink
    /// magnitudes are unused there, only the step count matters.
    pub fn default_convergence() -> Self {
        CheckParams {
            schedule: LimitSchedule {
                h0: 1.0,
                rho: 0.9999,
                steps: 100_000,
            },
            ..CheckParams::default_limits()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_sample_count(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }

    pub fn with_t_grid(mut self, t_grid: Vec<f64>) -> Self {
        self.t_grid = t_grid;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.schedule.validate()?;
        if self.t_grid.is_empty() {
            return Err(invalid(
                "t_grid",
                "must contain at least one positive value",
            ));
        }
        if self.t_grid.iter().any(|t| !t.is_finite() || *t <= 0.0) {
            return Err(invalid("t_grid", "entries must be positive and finite"));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(invalid("alpha", "alpha must lie in (0,1)"));
        }
        if self.tail_window == 0 || self.tail_window > self.schedule.steps {
            return Err(invalid(
                "tail_window",
                "must satisfy 1 <= tail_window <= schedule.steps",
            ));
        }
        if self.sample_count == 0 {
            return Err(invalid("sample_count", "must be at least 1"));
        }
        for (field, value) in [
            ("algebra_tol", self.algebra_tol),
            ("limit_tol", self.limit_tol),
            ("strict_tol", self.strict_tol),
            ("continuity_step", self.continuity_step),
            ("continuity_bound", self.continuity_bound),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(invalid(field, "must be non-negative and finite"));
            }
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(invalid("t_max", "must be positive and finite"));
        }
        Ok(())
    }

    /// Validated copy with the grid sorted ascending and deduplicated.
    pub fn normalized(&self) -> Result<Self> {
        self.validate()?;
        let mut params = self.clone();
        params
            .t_grid
            .sort_by(|a, b| a.partial_cmp(b).expect("grid entries are finite"));
        params.t_grid.dedup();
        Ok(params)
    }

    pub fn min_t(&self) -> f64 {
        self.t_grid.iter().fold(f64::INFINITY, |acc, t| acc.min(*t))
    }

    /// Slack for tail settledness. The floor is `algebra_tol`; the
    /// alpha-proportional term absorbs difference-quotient roundoff
    /// (about eps/h at the final steps), which sits far above 1e-12
    /// whenever the evaluated function is not exactly dyadic.
    pub fn tail_slack(&self) -> f64 {
        self.algebra_tol.max(self.alpha / 100.0)
    }
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams::default_limits()
    }
}

fn invalid(field: &str, message: &str) -> Error {
    Error::InvalidParams {
        field: field.into(),
        message: message.into(),
    }
}
