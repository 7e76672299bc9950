//! Exact scaled number structures.
//!
//! A base number such as `"6"` has no value by itself. Choosing a scaling
//! level `s` gives it the value `6/s`; moving between levels multiplies
//! values by `t/s`. The operations of the t-structure, written in the
//! s-frame, pick up the factors needed for every arithmetic axiom to keep
//! holding, which [`axiom_suite`] checks exactly.
//!
//! ```
//! use scalefield::scaled_arithmetic::{value_of, relabel, BaseNumber, ScalingFactor};
//!
//! let two = ScalingFactor::integer(2).unwrap();
//! let v = value_of(&BaseNumber::natural(6), &two).unwrap();
//! assert_eq!(v.value().re.to_string(), "3");
//! let back = relabel(&v, &ScalingFactor::one());
//! assert_eq!(back.value().re.to_string(), "6");
//! ```

mod axioms;
mod number;
mod structure;
mod vector;

pub use axioms::{axiom_suite, Axiom, AxiomOutcome, AxiomReport, ValueSampler, SAMPLE_BOUND};
pub use number::{
    decimal, parse_exact, parse_rational, show_exact, BaseNumber, Exact, NumberKind, ScalingFactor,
    DEFAULT_REAL_DIGITS,
};
pub use structure::{
    group_action, number_of, relabel, relabel_value, value_of, FactorConvention, OpFactors, ScaledStructure,
    ScaledValue,
};
pub use vector::ScaledVectorSpace;

pub(crate) use vector::to_c64;

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("scaling factor must be nonzero")]
    ZeroScaling,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{number} is not in the base set of multiples of {stride}")]
    NotInBaseSet { number: String, stride: String },
    #[error("value {value} at level {frame} does not correspond to a base number")]
    NotRepresentable { value: String, frame: String },
    #[error("no order relation on {0} structures with this scaling ratio")]
    OrderUndefined(NumberKind),
    #[error("{0} structures have no inverse for this element")]
    NoInverse(NumberKind),
    #[error("invalid scaling factor {factor} for {kind} structure: {reason}")]
    InvalidScaling { kind: NumberKind, factor: String, reason: &'static str },
    #[error("invalid number: {0}")]
    InvalidNumber(String),
    #[error("parse error: {0}")]
    Parse(String),
}
