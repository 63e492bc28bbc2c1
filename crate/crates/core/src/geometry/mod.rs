//! Exact scalar and linear-algebra substrate.
//!
//! Every coordinate in the crate is a [`Rational`]; there is no floating point
//! anywhere on the verification path.

mod halfspace;
mod motion;
mod rational;
mod vector;

use thiserror::Error;

pub use halfspace::HalfSpace;
pub use motion::{Orientation, RigidMotion};
pub use rational::{int, rat, ParseRationalError, Rational};
pub use vector::{triple, Matrix3, Point3, Vector3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("not an isometry")]
    NotAnIsometry,
    #[error("half-space normal must be nonzero")]
    ZeroNormal,
}

/// Predicate form of [`RigidMotion::is_valid`].
pub fn validate_motion(m: &RigidMotion) -> bool {
    m.is_valid()
}

pub fn apply_motion(m: &RigidMotion, p: &Point3) -> Result<Point3, GeometryError> {
    m.apply(p)
}

/// Applies `second` first, then `first`.
pub fn compose_motion(first: &RigidMotion, second: &RigidMotion) -> RigidMotion {
    first.compose(second)
}
