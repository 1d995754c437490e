//! The closed unit interval as a checked scalar type.

use crate::error::{Error, Result};

/// A real number in [0, 1]. Construction rejects out-of-range and
/// non-finite values, so downstream algebra can trust its inputs.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitInterval(f64);

impl UnitInterval {
    pub const ZERO: UnitInterval = UnitInterval(0.0);
    pub const ONE: UnitInterval = UnitInterval(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(UnitInterval(value))
        } else {
            Err(Error::UnitRange { value })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for UnitInterval {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        UnitInterval::new(value)
    }
}
