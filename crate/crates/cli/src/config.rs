//! Flat key = value configuration documents.
//!
//! Grammar: one `key = value` pair per line, `#` starts a comment, blank
//! lines are ignored. Values are numbers, bare words, vectors `[1,2]` or
//! matrices `[[2,0],[2,1]]`. Later occurrences of a key override earlier
//! ones; command-line flags override the document.

use std::path::PathBuf;

use ifn_core::tnorm::{TConorm, TNorm};
use ifn_core::vector::ClassicalNorm;
use ifn_core::CheckParams;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key '{key}': {message}")]
    BadValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: expected 'key = value'")]
    Malformed { line: usize },
    #[error("key '{key}': {message}")]
    Invalid { key: String, message: String },
    #[error(transparent)]
    Core(#[from] ifn_core::Error),
}

/// Which check a run dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Axioms,
    Tnorm,
    Convergence,
    Continuity,
    Derivative,
    Gateaux,
    Frechet,
    Theorems,
}

impl CheckKind {
    pub fn parse(s: &str) -> Option<CheckKind> {
        Some(match s {
            "axioms" => CheckKind::Axioms,
            "tnorm" => CheckKind::Tnorm,
            "convergence" => CheckKind::Convergence,
            "continuity" => CheckKind::Continuity,
            "derivative" => CheckKind::Derivative,
            "gateaux" => CheckKind::Gateaux,
            "frechet" => CheckKind::Frechet,
            "theorems" => CheckKind::Theorems,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Axioms => "axioms",
            CheckKind::Tnorm => "tnorm",
            CheckKind::Convergence => "convergence",
            CheckKind::Continuity => "continuity",
            CheckKind::Derivative => "derivative",
            CheckKind::Gateaux => "gateaux",
            CheckKind::Frechet => "frechet",
            CheckKind::Theorems => "theorems",
        }
    }

    /// Parameter preset this check starts from before overrides.
    pub fn preset(&self) -> CheckParams {
        match self {
            CheckKind::Axioms | CheckKind::Tnorm => CheckParams::default_axioms(),
            CheckKind::Convergence => CheckParams::default_convergence(),
            _ => CheckParams::default_limits(),
        }
    }
}

/// Scalar or matrix derivative candidate.
#[derive(Debug, Clone)]
pub enum Candidate {
    Scalar(f64),
    Matrix(Vec<Vec<f64>>),
}

/// Fully resolved run inputs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub check: CheckKind,
    pub dim: usize,
    pub norm: ClassicalNorm,
    pub tnorm: TNorm,
    pub tconorm: TConorm,
    pub params: CheckParams,
    pub function: Option<String>,
    pub sequence: Option<String>,
    pub theorem: Option<String>,
    pub x0: Option<Vec<f64>>,
    pub candidate: Option<Candidate>,
    pub limit: Option<Vec<f64>>,
    pub directions: Vec<Vec<f64>>,
    pub points: Vec<Vec<f64>>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
enum ConfigValue {
    Number(f64),
    Word(String),
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

impl ConfigValue {
    fn type_name(&self) -> &'static str {
        match self {
            ConfigValue::Number(_) => "number",
            ConfigValue::Word(_) => "word",
            ConfigValue::Vector(_) => "vector",
            ConfigValue::Matrix(_) => "matrix",
        }
    }
}

fn parse_value(raw: &str) -> Option<ConfigValue> {
    let raw = raw.trim();
    if raw.starts_with('[') {
        let json: serde_json::Value = serde_json::from_str(raw).ok()?;
        let arr = json.as_array()?;
        if arr.iter().all(|v| v.is_number()) {
            let vec = arr.iter().map(|v| v.as_f64()).collect::<Option<Vec<_>>>()?;
            return Some(ConfigValue::Vector(vec));
        }
        let mut rows = Vec::with_capacity(arr.len());
        for row in arr {
            let row = row.as_array()?;
            rows.push(row.iter().map(|v| v.as_f64()).collect::<Option<Vec<_>>>()?);
        }
        return Some(ConfigValue::Matrix(rows));
    }
    if let Ok(n) = raw.parse::<f64>() {
        return Some(ConfigValue::Number(n));
    }
    if !raw.is_empty()
        && raw
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '/'))
    {
        return Some(ConfigValue::Word(raw.to_string()));
    }
    None
}

struct Entry {
    line: usize,
    key: String,
    value: ConfigValue,
}

fn parse_entries(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut entries = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        let (key, value) = stripped
            .split_once('=')
            .ok_or(ConfigError::Malformed { line })?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(ConfigError::Malformed { line });
        }
        let value = parse_value(value).ok_or_else(|| ConfigError::BadValue {
            line,
            key: key.clone(),
            message: "value must be a number, word, vector or matrix".into(),
        })?;
        entries.push(Entry { line, key, value });
    }
    Ok(entries)
}

struct Builder {
    check: Option<CheckKind>,
    dim: usize,
    norm_kind: String,
    weights: Option<Vec<f64>>,
    tnorm: TNorm,
    tconorm: TConorm,
    schedule_h0: Option<f64>,
    schedule_rho: Option<f64>,
    schedule_steps: Option<usize>,
    params_overrides: Vec<(String, ConfigValue)>,
    function: Option<String>,
    sequence: Option<String>,
    theorem: Option<String>,
    x0: Option<Vec<f64>>,
    candidate: Option<Candidate>,
    limit: Option<Vec<f64>>,
    directions: Vec<Vec<f64>>,
    points: Vec<Vec<f64>>,
    out: Option<PathBuf>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            check: None,
            dim: 1,
            norm_kind: "abs".into(),
            weights: None,
            tnorm: TNorm::Minimum,
            tconorm: TConorm::Maximum,
            schedule_h0: None,
            schedule_rho: None,
            schedule_steps: None,
            params_overrides: Vec::new(),
            function: None,
            sequence: None,
            theorem: None,
            x0: None,
            candidate: None,
            limit: None,
            directions: Vec::new(),
            points: Vec::new(),
            out: None,
        }
    }
}

fn bad(line: usize, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        line,
        key: key.into(),
        message: message.into(),
    }
}

fn expect_number(entry: &Entry) -> Result<f64, ConfigError> {
    match entry.value {
        ConfigValue::Number(n) => Ok(n),
        _ => Err(bad(
            entry.line,
            &entry.key,
            format!("expected a number, got a {}", entry.value.type_name()),
        )),
    }
}

fn expect_count(entry: &Entry) -> Result<usize, ConfigError> {
    let n = expect_number(entry)?;
    if n.fract() == 0.0 && n >= 0.0 && n <= u32::MAX as f64 {
        Ok(n as usize)
    } else {
        Err(bad(
            entry.line,
            &entry.key,
            "expected a non-negative integer",
        ))
    }
}

fn expect_word(entry: &Entry) -> Result<&str, ConfigError> {
    match &entry.value {
        ConfigValue::Word(w) => Ok(w),
        _ => Err(bad(
            entry.line,
            &entry.key,
            format!("expected a word, got a {}", entry.value.type_name()),
        )),
    }
}

fn expect_point(entry: &Entry) -> Result<Vec<f64>, ConfigError> {
    match &entry.value {
        ConfigValue::Number(n) => Ok(vec![*n]),
        ConfigValue::Vector(v) if !v.is_empty() => Ok(v.clone()),
        _ => Err(bad(
            entry.line,
            &entry.key,
            "expected a number or a non-empty vector",
        )),
    }
}

fn expect_rows(entry: &Entry) -> Result<Vec<Vec<f64>>, ConfigError> {
    match &entry.value {
        ConfigValue::Matrix(m) if !m.is_empty() => Ok(m.clone()),
        ConfigValue::Vector(v) if !v.is_empty() => Ok(vec![v.clone()]),
        _ => Err(bad(entry.line, &entry.key, "expected a matrix of rows")),
    }
}

/// Parse a configuration document into a validated [`RunConfig`]. A check
/// kind passed by the command line overrides the document's `check` key
/// (and selects the parameter preset).
pub fn parse_config(text: &str, forced: Option<CheckKind>) -> Result<RunConfig, ConfigError> {
    let entries = parse_entries(text)?;
    let mut b = Builder::new();
    for entry in &entries {
        apply_entry(&mut b, entry)?;
    }
    resolve(b, forced)
}

/// Defaults-only configuration for a bare subcommand.
pub fn default_config(kind: CheckKind) -> RunConfig {
    resolve(Builder::new(), Some(kind)).expect("defaults are valid")
}

fn apply_entry(b: &mut Builder, entry: &Entry) -> Result<(), ConfigError> {
    let key = entry.key.as_str();
    match key {
        "check" => {
            let word = expect_word(entry)?;
            b.check = Some(CheckKind::parse(word).ok_or_else(|| {
                bad(
                    entry.line,
                    key,
                    format!(
                        "unknown check '{word}'; one of axioms, tnorm, convergence, continuity, derivative, gateaux, frechet, theorems"
                    ),
                )
            })?);
        }
        "dim" => b.dim = expect_count(entry)?,
        "norm" => b.norm_kind = expect_word(entry)?.to_string(),
        "weights" => {
            b.weights = Some(match &entry.value {
                ConfigValue::Vector(v) => v.clone(),
                _ => return Err(bad(entry.line, key, "expected a vector of weights")),
            })
        }
        "tnorm" => {
            b.tnorm = match expect_word(entry)? {
                "minimum" => TNorm::Minimum,
                "product" => TNorm::Product,
                "lukasiewicz" => TNorm::Lukasiewicz,
                other => {
                    return Err(bad(
                        entry.line,
                        key,
                        format!("unknown t-norm '{other}'; one of minimum, product, lukasiewicz"),
                    ))
                }
            }
        }
        "tconorm" => {
            b.tconorm = match expect_word(entry)? {
                "maximum" => TConorm::Maximum,
                "probabilistic_sum" => TConorm::ProbabilisticSum,
                "bounded_sum" => TConorm::BoundedSum,
                other => {
                    return Err(bad(
                        entry.line,
                        key,
                        format!(
                    "unknown t-conorm '{other}'; one of maximum, probabilistic_sum, bounded_sum"
                ),
                    ))
                }
            }
        }
        "h0" => b.schedule_h0 = Some(expect_number(entry)?),
        "rho" => b.schedule_rho = Some(expect_number(entry)?),
        "steps" => b.schedule_steps = Some(expect_count(entry)?),
        "t_grid" | "alpha" | "tail_window" | "sample_count" | "seed" | "algebra_tol"
        | "limit_tol" | "strict_tol" | "continuity_step" | "continuity_bound" | "t_max" => {
            b.params_overrides
                .push((key.to_string(), entry.value.clone()));
        }
        "function" => b.function = Some(expect_word(entry)?.to_string()),
        "sequence" => b.sequence = Some(expect_word(entry)?.to_string()),
        "theorem" => b.theorem = Some(expect_word(entry)?.to_string()),
        "x0" => b.x0 = Some(expect_point(entry)?),
        "candidate" => {
            b.candidate = Some(match &entry.value {
                ConfigValue::Number(n) => Candidate::Scalar(*n),
                ConfigValue::Matrix(m) => Candidate::Matrix(m.clone()),
                ConfigValue::Vector(v) => Candidate::Matrix(vec![v.clone()]),
                _ => return Err(bad(entry.line, key, "expected a number or a matrix")),
            })
        }
        "limit" => b.limit = Some(expect_point(entry)?),
        "directions" => b.directions = expect_rows(entry)?,
        "points" => b.points = expect_rows(entry)?,
        "out" => b.out = Some(PathBuf::from(expect_word(entry)?)),
        _ => {
            return Err(ConfigError::UnknownKey {
                line: entry.line,
                key: key.to_string(),
            })
        }
    }
    Ok(())
}

fn resolve(b: Builder, forced: Option<CheckKind>) -> Result<RunConfig, ConfigError> {
    let check = forced.or(b.check).unwrap_or(CheckKind::Theorems);
    let mut params = check.preset();
    if let Some(h0) = b.schedule_h0 {
        params.schedule.h0 = h0;
    }
    if let Some(rho) = b.schedule_rho {
        params.schedule.rho = rho;
    }
    if let Some(steps) = b.schedule_steps {
        params.schedule.steps = steps;
        if params.tail_window > steps {
            params.tail_window = steps.max(1);
        }
    }
    for (key, value) in &b.params_overrides {
        apply_param(&mut params, key, value)?;
    }
    params.validate().map_err(|e| match e {
        ifn_core::Error::InvalidParams { field, message } => ConfigError::Invalid {
            key: field,
            message,
        },
        other => ConfigError::Core(other),
    })?;

    let norm = match b.norm_kind.as_str() {
        "abs" => ClassicalNorm::Abs,
        "euclidean" => ClassicalNorm::Euclidean,
        "max" => ClassicalNorm::MaxNorm,
        "weighted" => ClassicalNorm::WeightedEuclidean(b.weights.clone().ok_or_else(|| {
            ConfigError::Invalid {
                key: "weights".into(),
                message: "norm = weighted requires a weights vector".into(),
            }
        })?),
        other => {
            return Err(ConfigError::Invalid {
                key: "norm".into(),
                message: format!("unknown norm '{other}'; one of abs, euclidean, max, weighted"),
            })
        }
    };
    if matches!(norm, ClassicalNorm::Abs) && b.dim != 1 {
        return Err(ConfigError::Invalid {
            key: "norm".into(),
            message: "norm = abs requires dim = 1".into(),
        });
    }

    Ok(RunConfig {
        check,
        dim: b.dim,
        norm,
        tnorm: b.tnorm,
        tconorm: b.tconorm,
        params,
        function: b.function,
        sequence: b.sequence,
        theorem: b.theorem,
        x0: b.x0,
        candidate: b.candidate,
        limit: b.limit,
        directions: b.directions,
        points: b.points,
        out: b.out,
    })
}

fn apply_param(
    params: &mut CheckParams,
    key: &str,
    value: &ConfigValue,
) -> Result<(), ConfigError> {
    let number = |v: &ConfigValue| match v {
        ConfigValue::Number(n) => Ok(*n),
        other => Err(ConfigError::Invalid {
            key: key.to_string(),
            message: format!("expected a number, got a {}", other.type_name()),
        }),
    };
    match key {
        "t_grid" => {
            params.t_grid = match value {
                ConfigValue::Vector(v) => v.clone(),
                ConfigValue::Number(n) => vec![*n],
                other => {
                    return Err(ConfigError::Invalid {
                        key: key.to_string(),
                        message: format!("expected a vector, got a {}", other.type_name()),
                    })
                }
            }
        }
        "alpha" => params.alpha = number(value)?,
        "tail_window" => params.tail_window = number(value)? as usize,
        "sample_count" => params.sample_count = number(value)? as usize,
        "seed" => {
            let n = number(value)?;
            if n.fract() != 0.0 || n < 0.0 {
                return Err(ConfigError::Invalid {
                    key: key.to_string(),
                    message: "seed must be a non-negative integer".into(),
                });
            }
            params.seed = n as u64;
        }
        "algebra_tol" => params.algebra_tol = number(value)?,
        "limit_tol" => params.limit_tol = number(value)?,
        "strict_tol" => params.strict_tol = number(value)?,
        "continuity_step" => params.continuity_step = number(value)?,
        "continuity_bound" => params.continuity_bound = number(value)?,
        "t_max" => params.t_max = number(value)?,
        _ => unreachable!("filtered by apply_entry"),
    }
    Ok(())
}

/// Flag overrides applied after the document.
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    pub t_grid: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
}

pub fn apply_flags(config: &mut RunConfig, flags: &FlagOverrides) -> Result<(), ConfigError> {
    if let Some(seed) = flags.seed {
        config.params.seed = seed;
    }
    if let Some(alpha) = flags.alpha {
        config.params.alpha = alpha;
    }
    if let Some(grid) = &flags.t_grid {
        config.params.t_grid = grid.clone();
    }
    if let Some(out) = &flags.out {
        config.out = Some(out.clone());
    }
    config.params.validate().map_err(|e| match e {
        ifn_core::Error::InvalidParams { field, message } => ConfigError::Invalid {
            key: field,
            message,
        },
        other => ConfigError::Core(other),
    })
}

/// Parse "0.1,1,10" into a grid vector.
pub fn parse_grid_flag(text: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| ConfigError::Invalid {
                    key: "t-grid".into(),
                    message: format!("'{part}' is not a number"),
                })
        })
        .collect()
}
