//! Scalar functions, operators between spaces and linear operators —
//! the objects the derivative verifiers act on.
//!
//! Evaluation maps are boxed closures behind `Arc`, so every function value
//! is cheap to clone and safe to share across threads. Maps must be pure:
//! the checks re-evaluate them freely and assume identical results.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vector::Vector;

type ScalarMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type VectorMap = Arc<dyn Fn(&Vector) -> Vector + Send + Sync>;
type JacobianMap = Arc<dyn Fn(&Vector) -> LinearOperator + Send + Sync>;

/// A real function of one variable, optionally carrying its classical
/// derivative as a test oracle.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    eval: ScalarMap,
    classical_derivative: Option<ScalarMap>,
}

impl ScalarFunction {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarFunction {
            name: name.into(),
            eval: Arc::new(eval),
            classical_derivative: None,
        }
    }

    pub fn with_derivative(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarFunction {
            name: name.into(),
            eval: Arc::new(eval),
            classical_derivative: Some(Arc::new(derivative)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = (self.eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEval {
                at: format!("{}({x})", self.name),
            })
        }
    }

    pub fn has_oracle(&self) -> bool {
        self.classical_derivative.is_some()
    }

    /// Classical derivative value, when this function carries the oracle.
    pub fn derivative_oracle(&self, x: f64) -> Option<f64> {
        self.classical_derivative.as_ref().map(|d| d(x))
    }
}

impl std::fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarFunction({})", self.name)
    }
}

/// Pointwise K*f + g, with the composed classical oracle when both carry one.
pub fn linear_combination_scalar(f: &ScalarFunction, g: &ScalarFunction, k: f64) -> ScalarFunction {
    let name = format!("{}*{}+{}", k, f.name(), g.name());
    let fe = f.eval.clone();
    let ge = g.eval.clone();
    let eval = move |x: f64| k * fe(x) + ge(x);
    match (&f.classical_derivative, &g.classical_derivative) {
        (Some(fd), Some(gd)) => {
            let fd = fd.clone();
            let gd = gd.clone();
            ScalarFunction::with_derivative(name, eval, move |x| k * fd(x) + gd(x))
        }
        _ => ScalarFunction::new(name, eval),
    }
}

/// Matrix of a linear operator R^cols -> R^rows, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl LinearOperator {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidParams {
                field: "matrix".into(),
                message: "matrix must have at least one row and column".into(),
            });
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParams {
                field: "matrix".into(),
                message: "matrix rows must all have the same length".into(),
            });
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams {
                field: "matrix".into(),
                message: "matrix entries must be finite".into(),
            });
        }
        Ok(LinearOperator {
            rows: data.len() / cols,
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        LinearOperator {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.dim(),
            });
        }
        let entries = (0..self.rows)
            .map(|i| {
                x.entries()
                    .iter()
                    .enumerate()
                    .map(|(j, xj)| self.entry(i, j) * xj)
                    .sum()
            })
            .collect();
        Vector::new(entries)
    }

    /// Matrix product self * other.
    pub fn matmul(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                data[i * other.cols + j] = (0..self.cols)
                    .map(|k| self.entry(i, k) * other.entry(k, j))
                    .sum();
            }
        }
        Ok(LinearOperator {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// c * self + other.
    pub fn scale_add(&self, c: f64, other: &LinearOperator) -> Result<LinearOperator> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| c * a + b)
            .collect();
        Ok(LinearOperator {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise shift by delta (negative-control perturbations).
    pub fn shift_all(&self, delta: f64) -> LinearOperator {
        LinearOperator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a + delta).collect(),
        }
    }

    /// Wrap as an operator function with itself as the constant Jacobian.
    pub fn to_operator(&self, name: impl Into<String>) -> OperatorFunction {
        let matrix = self.clone();
        let jac = self.clone();
        OperatorFunction::with_jacobian(
            name,
            self.cols,
            self.rows,
            move |x: &Vector| matrix.apply(x).expect("dimension checked on entry"),
            move |_x: &Vector| jac.clone(),
        )
    }

    pub fn format_bracketed(&self) -> String {
        let mut out = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{}", self.entry(i, j)));
            }
            out.push(']');
        }
        out.push(']');
        out
    }
}

/// A map between finite-dimensional spaces, optionally with its analytic
/// Jacobian as a test oracle.
#[derive(Clone)]
pub struct OperatorFunction {
    name: String,
    domain_dim: usize,
    codomain_dim: usize,
    eval: VectorMap,
    jacobian: Option<JacobianMap>,
}

impl OperatorFunction {
    pub fn new(
        name: impl Into<String>,
        domain_dim: usize,
        codomain_dim: usize,
        eval: impl Fn(&Vector) -> Vector + Send + Sync + 'static,
    ) -> Self {
        OperatorFunction {
            name: name.into(),
            domain_dim,
            codomain_dim,
            eval: Arc::new(eval),
            jacobian: None,
        }
    }

    pub fn with_jacobian(
        name: impl Into<String>,
        domain_dim: usize,
        codomain_dim: usize,
        eval: impl Fn(&Vector) -> Vector + Send + Sync + 'static,
        jacobian: impl Fn(&Vector) -> LinearOperator + Send + Sync + 'static,
    ) -> Self {
        OperatorFunction {
            name: name.into(),
            domain_dim,
            codomain_dim,
            eval: Arc::new(eval),
            jacobian: Some(Arc::new(jacobian)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                got: x.dim(),
            });
        }
        let v = (self.eval)(x);
        if v.dim() != self.codomain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.codomain_dim,
                got: v.dim(),
            });
        }
        if !v.is_finite() {
            return Err(Error::NonFiniteEval {
                at: format!("{}({x})", self.name),
            });
        }
        Ok(v)
    }

    pub fn has_oracle(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn jacobian_oracle(&self, x: &Vector) -> Option<LinearOperator> {
        self.jacobian.as_ref().map(|j| j(x))
    }
}

impl std::fmt::Debug for OperatorFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "OperatorFunction({}: R^{} -> R^{})",
            self.name, self.domain_dim, self.codomain_dim
        )
    }
}

/// View a scalar function as an operator on R^1. Battery maps are finite
/// on the working region, so evaluation failures surface as panics rather
/// than silent values.
pub fn scalar_to_operator(f: &ScalarFunction) -> OperatorFunction {
    let inner = f.clone();
    let eval = move |x: &Vector| {
        let v = inner
            .eval(x.entries()[0])
            .expect("scalar map is finite on the working region");
        Vector::scalar(v).expect("finite")
    };
    match &f.classical_derivative {
        Some(d) => {
            let d = d.clone();
            OperatorFunction::with_jacobian(f.name(), 1, 1, eval, move |x: &Vector| {
                LinearOperator::from_rows(vec![vec![d(x.entries()[0])]]).expect("finite")
            })
        }
        None => OperatorFunction::new(f.name(), 1, 1, eval),
    }
}

/// Pointwise composition Q after P, with the composed Jacobian oracle when
/// both factors carry one.
pub fn compose_operators(q: &OperatorFunction, p: &OperatorFunction) -> Result<OperatorFunction> {
    if p.codomain_dim != q.domain_dim {
        return Err(Error::DimensionMismatch {
            expected: q.domain_dim,
            got: p.codomain_dim,
        });
    }
    let name = format!("{}.{}", q.name, p.name);
    let pe = p.eval.clone();
    let qe = q.eval.clone();
    let eval = move |x: &Vector| qe(&pe(x));
    match (&q.jacobian, &p.jacobian) {
        (Some(qj), Some(pj)) => {
            let pe2 = p.eval.clone();
            let qj = qj.clone();
            let pj = pj.clone();
            Ok(OperatorFunction::with_jacobian(
                name,
                p.domain_dim,
                q.codomain_dim,
                eval,
                move |x: &Vector| {
                    let y = pe2(x);
                    qj(&y).matmul(&pj(x)).expect("composed dimensions agree")
                },
            ))
        }
        _ => Ok(OperatorFunction::new(
            name,
            p.domain_dim,
            q.codomain_dim,
            eval,
        )),
    }
}

/// Pointwise c*T1 + T2 between operators of matching shape.
pub fn linear_combination_operator(
    c: f64,
    t1: &OperatorFunction,
    t2: &OperatorFunction,
) -> Result<OperatorFunction> {
    if t1.domain_dim != t2.domain_dim || t1.codomain_dim != t2.codomain_dim {
        return Err(Error::DimensionMismatch {
            expected: t1.domain_dim,
            got: t2.domain_dim,
        });
    }
    let name = format!("{}*{}+{}", c, t1.name, t2.name);
    let e1 = t1.eval.clone();
    let e2 = t2.eval.clone();
    let eval = move |x: &Vector| {
        e1(x)
            .scale(c)
            .add(&e2(x))
            .expect("matching codomains checked on construction")
    };
    match (&t1.jacobian, &t2.jacobian) {
        (Some(j1), Some(j2)) => {
            let j1 = j1.clone();
            let j2 = j2.clone();
            Ok(OperatorFunction::with_jacobian(
                name,
                t1.domain_dim,
                t1.codomain_dim,
                eval,
                move |x: &Vector| {
                    j1(x)
                        .scale_add(c, &j2(x))
                        .expect("matching shapes checked on construction")
                },
            ))
        }
        _ => Ok(OperatorFunction::new(
            name,
            t1.domain_dim,
            t1.codomain_dim,
            eval,
        )),
    }
}
