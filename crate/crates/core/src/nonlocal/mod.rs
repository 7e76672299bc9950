//! Nonlocal quantities under a scaling field: wave packets, path lengths,
//! geodesics, and how outcomes at two locations are compared.
//!
//! A quantity spread over many points has one number structure per point.
//! To integrate it, every integrand is first carried to a common reference
//! point `x` with the factor `f(y)/f(x)`. Path lengths use only `e^θ`.
//!
//! ```
//! use scalefield::manifold_field::{GradientMode, Manifold, ScalarFieldSpec, ScalingField, Signature};
//! use scalefield::nonlocal::{scaled_path_length, Path};
//!
//! let m = Manifold::cube(Signature::Euclidean, -2.0, 2.0, 9).unwrap();
//! let theta = ScalarFieldSpec::linear(vec![1.0, 0.0, 0.0], 0.0);
//! let field = ScalingField::new(m, theta, ScalarFieldSpec::zero(), GradientMode::Analytic).unwrap();
//! let segment = Path::segment(vec![0.0; 3], vec![1.0, 0.0, 0.0]);
//! let length = scaled_path_length(&segment, &field, &[0.0; 3], 1000).unwrap();
//! assert!((length - (std::f64::consts::E - 1.0)).abs() < 1e-8);
//! ```

mod compare;
mod geodesic;
mod packet;
mod path;

pub use compare::{canonical_momentum_shift, compare_outcomes, CompareMode, Comparison, Outcome};
pub use geodesic::{
    integrate_geodesic, variational_check, DragContraction, ForceConvention, GeodesicOptions, GeodesicState,
    Trajectory, VariationalOptions, VariationalReport,
};
pub use packet::{scale_wave_packet, WavePacket};
pub use path::{
    change_reference, local_path_length, scaled_path_length, simpson, Curve, HermiteCurve, Path, Perturbed,
};

use thiserror::Error;

use crate::manifold_field::FieldError;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum NonlocalError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("path tangent vanishes everywhere")]
    DegenerateParameterization,
    #[error("quadrature needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid wave packet: {0}")]
    InvalidPacket(String),
    #[error("invalid integration step: {0}")]
    InvalidStep(String),
}
