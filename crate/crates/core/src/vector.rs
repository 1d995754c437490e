//! Finite-dimensional real vectors and the classical norms that seed the
//! standard membership construction.

use serde::Serialize;

use crate::error::{Error, Result};

/// A vector in R^n with finite entries, n >= 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vector {
    entries: Vec<f64>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFiniteVector);
        }
        Ok(Vector { entries })
    }

    /// The null vector of the given dimension.
    pub fn zero(dim: usize) -> Self {
        Vector {
            entries: vec![0.0; dim],
        }
    }

    pub fn axis(dim: usize, i: usize) -> Self {
        let mut entries = vec![0.0; dim];
        entries[i] = 1.0;
        Vector { entries }
    }

    pub fn scalar(x: f64) -> Result<Self> {
        Vector::new(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| *e == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.is_finite())
    }

    /// Single entry of a one-dimensional vector.
    pub fn as_scalar(&self) -> Result<f64> {
        if self.entries.len() == 1 {
            Ok(self.entries[0])
        } else {
            Err(Error::DimensionMismatch {
                expected: 1,
                got: self.entries.len(),
            })
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector {
            entries: self.entries.iter().map(|a| c * a).collect(),
        }
    }

    fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            })
        }
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Concrete norms on R^n used as carriers for the standard membership maps
/// and as the classical oracle inside tests.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalNorm {
    /// Absolute value on R^1.
    Abs,
    Euclidean,
    MaxNorm,
    /// sqrt(sum w_i x_i^2) with positive weights.
    WeightedEuclidean(Vec<f64>),
}

impl ClassicalNorm {
    pub fn evaluate(&self, x: &Vector) -> Result<f64> {
        match self {
            ClassicalNorm::Abs => Ok(x.as_scalar()?.abs()),
            ClassicalNorm::Euclidean => Ok(x.entries().iter().map(|e| e * e).sum::<f64>().sqrt()),
            ClassicalNorm::MaxNorm => {
                Ok(x.entries().iter().fold(0.0f64, |acc, e| acc.max(e.abs())))
            }
            ClassicalNorm::WeightedEuclidean(weights) => {
                if weights.len() != x.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: weights.len(),
                        got: x.dim(),
                    });
                }
                if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
                    return Err(Error::InvalidParams {
                        field: "weights".into(),
                        message: "weights must be positive and finite".into(),
                    });
                }
                Ok(x.entries()
                    .iter()
                    .zip(weights)
                    .map(|(e, w)| w * e * e)
                    .sum::<f64>()
                    .sqrt())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassicalNorm::Abs => "abs".into(),
            ClassicalNorm::Euclidean => "euclidean".into(),
            ClassicalNorm::MaxNorm => "max".into(),
            ClassicalNorm::WeightedEuclidean(w) => format!("weighted-euclidean{w:?}"),
        }
    }
}

/// Classical norm value of a vector.
pub fn classical_norm_of(x: &Vector, norm: &ClassicalNorm) -> Result<f64> {
    norm.evaluate(x)
}
