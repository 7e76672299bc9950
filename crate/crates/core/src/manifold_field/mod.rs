//! Flat manifold, scaling field, and connection-modified derivatives.
//!
//! Each point `x` carries its own copies of the number structures; the
//! scaling field `f(x) = exp(θ(x) + iφ(x))` picks the level used at `x`.
//! Values at `x` are carried to `y` by the factor `f(y)/f(x)`, and
//! derivatives pick up `Γ + iΔ = ∂f/f`.

mod field;
mod manifold;
mod spec;

pub use field::{FieldSample, GradientMode, Level, SampleRole, ScalingField};
pub use manifold::{Axis, Manifold, Signature};
pub use spec::{ScalarFieldSpec, Table};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("point {point:?} lies outside the grid")]
    OutOfBounds { point: Vec<f64> },
    #[error("point {point:?} is too close to the boundary along axis {axis} for a central difference")]
    BoundaryPoint { point: Vec<f64>, axis: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid field specification: {0}")]
    InvalidSpec(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("level must be a nonzero number")]
    ZeroLevel,
}
