//! Membership-graded norms on R^n and certificate-style derivative checks.
//!
//! The crate models normed linear spaces whose norm assigns each pair
//! (vector, scale t) a degree of membership mu and of non-membership nu
//! instead of a single number. On top of that structure it provides:
//!
//! - t-norm / t-conorm algebra with sampled axiom verification ([`tnorm`]),
//! - construction and sixteen-axiom checking of membership norms ([`space`]),
//! - a finite limit certificate shared by every convergence, continuity and
//!   derivative check ([`limits`]),
//! - verifiers and estimators for scalar, directional (Gateaux-style) and
//!   uniform (Frechet-style) derivatives ([`derivatives`]),
//! - a named battery of functions behind a registry ([`battery`]), and
//! - runnable theorem checks aggregating everything ([`theorems`]).
//!
//! All sampling is seeded; re-running a check with identical parameters and
//! seed reproduces the identical report, byte for byte once serialized
//! ([`report`]).

pub mod battery;
pub mod derivatives;
pub mod error;
pub mod functions;
pub mod limits;
pub mod params;
pub mod report;
pub mod sample;
pub mod space;
pub mod theorems;
pub mod tnorm;
pub mod unit;
pub mod vector;

pub use error::{Error, Result};
pub use params::{CheckParams, LimitSchedule};
pub use space::{IFNSpace, IFNorm, MembershipPair};
pub use unit::UnitInterval;
pub use vector::{ClassicalNorm, Vector};
