//! Scaled number structures and position-dependent scaling fields.
//!
//! The crate is organised in layers:
//!
//! * [`scaled_arithmetic`]: exact number structures at arbitrary scaling
//!   levels, value maps between levels, and an axiom checker.
//! * [`manifold_field`]: a flat grid manifold carrying the scaling field
//!   `f(x) = exp(θ(x) + iφ(x))`, its gradients, connection factors and
//!   covariant derivatives.
//! * [`gauge`]: the abelian gauge-covariant derivative with scaling fields
//!   and a numerical check of local U(1) invariance.
//! * [`nonlocal`]: wave packets, path lengths and geodesics under scaling,
//!   and comparison of outcomes obtained at different locations.
//! * [`cli_io`]: JSON scenarios, CSV/JSON output, and the scenario runner
//!   behind the `scalefield` binary.

pub mod cli_io;
pub mod gauge;
pub mod manifold_field;
pub mod nonlocal;
pub mod scaled_arithmetic;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scaled-numbers.md")]
    mod scaled_numbers {}
    #[doc = include_str!("../../../book/src/scaling-fields.md")]
    mod scaling_fields {}
    #[doc = include_str!("../../../book/src/gauge.md")]
    mod gauge {}
    #[doc = include_str!("../../../book/src/nonlocal.md")]
    mod nonlocal {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
}
