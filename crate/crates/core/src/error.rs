//! Error type shared by every check in the crate.

use thiserror::Error;

/// Errors raised by construction, evaluation and checking.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} lies outside the unit interval [0, 1]")]
    UnitRange { value: f64 },

    #[error(
        "{op} returned {value} for inputs ({a}, {b}); outputs must stay in [0, 1] and be finite"
    )]
    OperatorRange {
        op: String,
        a: f64,
        b: f64,
        value: f64,
    },

    #[error("t must be positive, got {t}")]
    NonPositiveT { t: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector entries must be finite")]
    NonFiniteVector,

    #[error("membership pair ({mu}, {nu}) invalid at x = {x:?}, t = {t}: {detail}")]
    MembershipViolation {
        mu: f64,
        nu: f64,
        x: Vec<f64>,
        t: f64,
        detail: String,
    },

    #[error("invalid parameter `{field}`: {message}")]
    InvalidParams { field: String, message: String },

    #[error("residual produced a non-finite value at h = {h}")]
    NonFiniteResidual { h: f64 },

    #[error("function evaluation produced a non-finite value at {at}")]
    NonFiniteEval { at: String },

    #[error("derivative order {n} unsupported; orders 1 through 4 are available")]
    UnsupportedOrder { n: u32 },

    #[error("degenerate sample at h = {h}: membership denominators vanish, x = x0 excluded")]
    DegenerateSample { h: f64 },

    #[error("unknown function '{name}'{}", suggestion_text(.suggestions))]
    UnknownFunction {
        name: String,
        suggestions: Vec<String>,
    },

    #[error("unknown theorem id '{id}'")]
    UnknownTheorem { id: String },

    #[error("report serialization failed: {0}")]
    Serialize(String),
}

fn suggestion_text(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; nearest registry names: {}", suggestions.join(", "))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
