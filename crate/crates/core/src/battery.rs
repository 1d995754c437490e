//! The fixed, versioned battery of functions behind a name registry.
//!
//! Checks never parse user expressions; they select battery entries by name
//! at runtime (config or CLI). Each entry is a boxed evaluation map plus,
//! where it exists, a classical oracle used by tests and the theorem suite.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{LinearOperator, OperatorFunction, ScalarFunction};
use crate::vector::Vector;

/// An integer-indexed sequence of vectors with an optional known limit.
#[derive(Clone)]
pub struct VectorSequence {
    name: String,
    dim: usize,
    eval: Arc<dyn Fn(usize) -> Vector + Send + Sync>,
    classical_limit: Option<Vector>,
}

impl VectorSequence {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        eval: impl Fn(usize) -> Vector + Send + Sync + 'static,
        classical_limit: Option<Vector>,
    ) -> Self {
        VectorSequence {
            name: name.into(),
            dim,
            eval: Arc::new(eval),
            classical_limit,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, n: usize) -> Result<Vector> {
        let v = (self.eval)(n);
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        if !v.is_finite() {
            return Err(Error::NonFiniteEval {
                at: format!("{}({n})", self.name),
            });
        }
        Ok(v)
    }

    pub fn classical_limit(&self) -> Option<&Vector> {
        self.classical_limit.as_ref()
    }
}

impl std::fmt::Debug for VectorSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VectorSequence({})", self.name)
    }
}

/// One registered battery member.
#[derive(Clone)]
pub enum BatteryItem {
    Scalar(ScalarFunction),
    Operator(OperatorFunction),
    Sequence(VectorSequence),
}

/// Listing row for a registry entry.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryEntry {
    pub name: String,
    pub kind: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub has_classical_oracle: bool,
    pub description: String,
}

/// Name-keyed registry of the battery. Names are unique by construction
/// and list in sorted order.
pub struct Registry {
    items: BTreeMap<String, (BatteryItem, String)>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            items: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, item: BatteryItem, description: impl Into<String>) {
        let name = match &item {
            BatteryItem::Scalar(f) => f.name().to_string(),
            BatteryItem::Operator(t) => t.name().to_string(),
            BatteryItem::Sequence(s) => s.name().to_string(),
        };
        let previous = self.items.insert(name.clone(), (item, description.into()));
        assert!(previous.is_none(), "duplicate registry name {name}");
    }

    pub fn get(&self, name: &str) -> Option<&BatteryItem> {
        self.items.get(name).map(|(item, _)| item)
    }

    pub fn scalar(&self, name: &str) -> Result<&ScalarFunction> {
        match self.get(name) {
            Some(BatteryItem::Scalar(f)) => Ok(f),
            _ => Err(self.unknown(name)),
        }
    }

    pub fn operator(&self, name: &str) -> Result<&OperatorFunction> {
        match self.get(name) {
            Some(BatteryItem::Operator(t)) => Ok(t),
            _ => Err(self.unknown(name)),
        }
    }

    pub fn sequence(&self, name: &str) -> Result<&VectorSequence> {
        match self.get(name) {
            Some(BatteryItem::Sequence(s)) => Ok(s),
            _ => Err(self.unknown(name)),
        }
    }

    fn unknown(&self, name: &str) -> Error {
        Error::UnknownFunction {
            name: name.to_string(),
            suggestions: self.nearest(name, 3),
        }
    }

    /// Closest registered names by edit distance.
    pub fn nearest(&self, name: &str, count: usize) -> Vec<String> {
        let mut scored: Vec<(usize, &String)> = self
            .items
            .keys()
            .map(|k| (edit_distance(name, k), k))
            .collect();
        scored.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        scored
            .into_iter()
            .take(count)
            .map(|(_, k)| k.clone())
            .collect()
    }

    /// Deterministic listing, sorted by name.
    pub fn entries(&self) -> Vec<RegistryEntry> {
        self.items
            .iter()
            .map(|(name, (item, description))| {
                let (kind, domain_dim, codomain_dim, has_oracle) = match item {
                    BatteryItem::Scalar(f) => ("scalar", 1, 1, f.has_oracle()),
                    BatteryItem::Operator(t) => {
                        ("operator", t.domain_dim(), t.codomain_dim(), t.has_oracle())
                    }
                    BatteryItem::Sequence(s) => {
                        ("sequence", s.dim(), s.dim(), s.classical_limit().is_some())
                    }
                };
                RegistryEntry {
                    name: name.clone(),
                    kind: kind.into(),
                    domain_dim,
                    codomain_dim,
                    has_classical_oracle: has_oracle,
                    description: description.clone(),
                }
            })
            .collect()
    }
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut row = vec![i + 1];
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            row.push(sub.min(prev[j + 1] + 1).min(row[j] + 1));
        }
        prev = row;
    }
    prev[b.len()]
}

/// Scalar members of the estimation battery with classical oracles.
pub const SMOOTH_SCALAR_BATTERY: [&str; 4] = ["cube", "exp", "sin", "square"];

/// Evaluation points of the scalar battery.
pub const SCALAR_BATTERY_POINTS: [f64; 4] = [-1.0, 0.5, 1.0, 2.0];

/// The fixed battery. Adding entries is the supported extension point;
/// existing names and semantics stay stable.
pub fn default_registry() -> Registry {
    let mut reg = Registry::empty();

    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative(
            "square",
            |x| x * x,
            |x| 2.0 * x,
        )),
        "x^2",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative(
            "cube",
            |x| x * x * x,
            |x| 3.0 * x * x,
        )),
        "x^3",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative("exp", f64::exp, f64::exp)),
        "exp(x)",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative("sin", f64::sin, f64::cos)),
        "sin(x)",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::new("abs", f64::abs)),
        "|x|; no derivative at 0",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative(
            "const_zero",
            |_| 0.0,
            |_| 0.0,
        )),
        "constant 0",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::with_derivative(
            "const_one",
            |_| 1.0,
            |_| 0.0,
        )),
        "constant 1",
    );
    reg.register(
        BatteryItem::Scalar(ScalarFunction::new(
            "step",
            |x| if x < 0.0 { 0.0 } else { 1.0 },
        )),
        "0 for x < 0, 1 for x >= 0",
    );

    reg.register(
        BatteryItem::Operator(OperatorFunction::with_jacobian(
            "poly2map",
            2,
            2,
            |x: &Vector| {
                let (a, b) = (x.entries()[0], x.entries()[1]);
                Vector::new(vec![a * a, a * b]).expect("finite")
            },
            |x: &Vector| {
                let (a, b) = (x.entries()[0], x.entries()[1]);
                LinearOperator::from_rows(vec![vec![2.0 * a, 0.0], vec![b, a]])
                    .expect("well-formed")
            },
        )),
        "(x1^2, x1*x2)",
    );
    reg.register(
        BatteryItem::Operator(OperatorFunction::with_jacobian(
            "parabola",
            1,
            2,
            |x: &Vector| {
                let v = x.entries()[0];
                Vector::new(vec![v, v * v]).expect("finite")
            },
            |x: &Vector| {
                let v = x.entries()[0];
                LinearOperator::from_rows(vec![vec![1.0], vec![2.0 * v]]).expect("well-formed")
            },
        )),
        "(x, x^2)",
    );
    reg.register(
        BatteryItem::Operator(OperatorFunction::with_jacobian(
            "sumsq",
            2,
            1,
            |y: &Vector| {
                let (a, b) = (y.entries()[0], y.entries()[1]);
                Vector::new(vec![a + b * b]).expect("finite")
            },
            |y: &Vector| {
                LinearOperator::from_rows(vec![vec![1.0, 2.0 * y.entries()[1]]])
                    .expect("well-formed")
            },
        )),
        "y1 + y2^2",
    );
    reg.register(
        BatteryItem::Operator(OperatorFunction::with_jacobian(
            "sinmap2",
            2,
            2,
            |x: &Vector| {
                Vector::new(x.entries().iter().map(|v| v.sin()).collect()).expect("finite")
            },
            |x: &Vector| {
                let (a, b) = (x.entries()[0], x.entries()[1]);
                LinearOperator::from_rows(vec![vec![a.cos(), 0.0], vec![0.0, b.cos()]])
                    .expect("well-formed")
            },
        )),
        "(sin x1, sin x2)",
    );
    let linear2 =
        LinearOperator::from_rows(vec![vec![1.0, 0.5], vec![-0.25, 2.0]]).expect("well-formed");
    reg.register(
        BatteryItem::Operator(linear2.to_operator("linear2")),
        "fixed linear map [[1,0.5],[-0.25,2]]",
    );
    reg.register(
        BatteryItem::Operator(LinearOperator::identity(2).to_operator("identity2")),
        "identity on R^2",
    );

    reg.register(
        BatteryItem::Sequence(VectorSequence::new(
            "seq_harmonic",
            1,
            |n| Vector::scalar(1.0 / n as f64).expect("finite"),
            Some(Vector::zero(1)),
        )),
        "1/n",
    );
    reg.register(
        BatteryItem::Sequence(VectorSequence::new(
            "seq_alternating",
            1,
            |n| Vector::scalar(if n % 2 == 0 { 1.0 } else { -1.0 }).expect("finite"),
            None,
        )),
        "(-1)^n; diverges",
    );
    reg.register(
        BatteryItem::Sequence(VectorSequence::new(
            "seq_constant",
            1,
            |_| Vector::zero(1),
            Some(Vector::zero(1)),
        )),
        "constant 0",
    );
    reg.register(
        BatteryItem::Sequence(VectorSequence::new(
            "seq_geometric",
            1,
            |n| Vector::scalar(0.5f64.powi(n.min(1_074) as i32)).expect("finite"),
            Some(Vector::zero(1)),
        )),
        "2^-n",
    );

    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_sorted_and_unique() {
        let reg = default_registry();
        let entries = reg.entries();
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn expected_members_present() {
        let reg = default_registry();
        let entries = reg.entries();
        let square = entries.iter().find(|e| e.name == "square").unwrap();
        assert_eq!(square.kind, "scalar");
        assert_eq!((square.domain_dim, square.codomain_dim), (1, 1));
        assert!(square.has_classical_oracle);

        let poly = entries.iter().find(|e| e.name == "poly2map").unwrap();
        assert_eq!(poly.kind, "operator");
        assert_eq!((poly.domain_dim, poly.codomain_dim), (2, 2));
        assert!(poly.has_classical_oracle);
    }

    #[test]
    fn unknown_names_come_back_with_suggestions() {
        let reg = default_registry();
        let err = reg.scalar("squar").unwrap_err();
        match err {
            Error::UnknownFunction { name, suggestions } => {
                assert_eq!(name, "squar");
                assert!(
                    suggestions.contains(&"square".to_string()),
                    "{suggestions:?}"
                );
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn kind_mismatch_is_unknown() {
        let reg = default_registry();
        assert!(reg.operator("square").is_err());
        assert!(reg.sequence("poly2map").is_err());
    }

    #[test]
    fn smooth_battery_matches_registry_oracles() {
        let reg = default_registry();
        for name in SMOOTH_SCALAR_BATTERY {
            let f = reg.scalar(name).unwrap();
            assert!(f.has_oracle(), "{name}");
        }
    }

    #[test]
    fn sequences_evaluate() {
        let reg = default_registry();
        let h = reg.sequence("seq_harmonic").unwrap();
        assert_eq!(h.eval(4).unwrap().entries(), &[0.25]);
        assert_eq!(h.classical_limit().unwrap().entries(), &[0.0]);
    }
}
