//! Scaled number structures and the value maps between scaling levels.

use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::number::{is_real, plus, quotient, show_exact, times, BaseNumber, Exact, NumberKind, ScalingFactor};
use super::ArithmeticError;

/// How the operation factors of a structure are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorConvention {
    /// Factors forced by carrying every axiom through the value map:
    /// multiplication `s/t`, inverse `(t/s)^2`, conjugation `r / conj(r)`
    /// with `r = t/s`.
    #[default]
    AxiomForced,
    /// The bare ratio `t/s` on inverse and conjugation. Fails the inverse
    /// axiom whenever `t != s`; kept so the difference can be measured.
    UniformRatio,
}

/// Multiplicative factors attached to each basic operation when the
/// t-structure is written in terms of the s-structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpFactors {
    pub mul: Exact,
    pub inv: Exact,
    pub conj: Exact,
    pub identity: Exact,
}

impl OpFactors {
    pub fn for_ratio(ratio: &Exact, convention: FactorConvention) -> Self {
        let mul = ratio.inv();
        let identity = ratio.clone();
        match convention {
            FactorConvention::AxiomForced => Self {
                mul,
                inv: ratio * ratio,
                conj: ratio / ratio.conj(),
                identity,
            },
            FactorConvention::UniformRatio => Self {
                mul,
                inv: ratio.clone(),
                conj: ratio.clone(),
                identity,
            },
        }
    }
}

/// The structure `S^t` represented in the frame of `S^s`.
///
/// Elements are stored as their values in the s-frame. The base set is the
/// same for every level except for naturals, whose base set is the multiples
/// of the stride `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledStructure {
    kind: NumberKind,
    t: ScalingFactor,
    s: ScalingFactor,
    ratio: Exact,
    factors: OpFactors,
}

impl ScaledStructure {
    pub fn new(kind: NumberKind, t: ScalingFactor, s: ScalingFactor) -> Result<Self, ArithmeticError> {
        Self::with_convention(kind, t, s, FactorConvention::AxiomForced)
    }

    pub fn with_convention(
        kind: NumberKind,
        t: ScalingFactor,
        s: ScalingFactor,
        convention: FactorConvention,
    ) -> Result<Self, ArithmeticError> {
        let ratio = t.over(&s);
        let factors = OpFactors::for_ratio(&ratio, convention);
        Self::with_factors(kind, t, s, factors)
    }

    /// Builds a structure with arbitrary operation factors. Used to probe
    /// the axiom suite with deliberately wrong factors.
    pub fn with_factors(
        kind: NumberKind,
        t: ScalingFactor,
        s: ScalingFactor,
        factors: OpFactors,
    ) -> Result<Self, ArithmeticError> {
        match kind {
            NumberKind::Natural => {
                for f in [&t, &s] {
                    if !f.is_positive_integer() {
                        return Err(ArithmeticError::InvalidScaling {
                            kind,
                            factor: f.to_string(),
                            reason: "natural structures need positive integer factors",
                        });
                    }
                }
            }
            NumberKind::Rational | NumberKind::Real => {
                for f in [&t, &s] {
                    if !f.is_real() {
                        return Err(ArithmeticError::InvalidScaling {
                            kind,
                            factor: f.to_string(),
                            reason: "ordered structures need real factors",
                        });
                    }
                }
            }
            NumberKind::Complex => {}
        }
        let ratio = t.over(&s);
        Ok(Self { kind, t, s, ratio, factors })
    }

    /// The unscaled structure `S^1_1`.
    pub fn standard(kind: NumberKind) -> Self {
        Self::new(kind, ScalingFactor::one(), ScalingFactor::one()).expect("unit factors are valid for every kind")
    }

    pub fn kind(&self) -> NumberKind {
        self.kind
    }

    pub fn factor_t(&self) -> &ScalingFactor {
        &self.t
    }

    pub fn level_s(&self) -> &ScalingFactor {
        &self.s
    }

    /// `t/s`.
    pub fn ratio(&self) -> &Exact {
        &self.ratio
    }

    pub fn factors(&self) -> &OpFactors {
        &self.factors
    }

    /// For naturals, the `n` of `N_n`: the base set is its multiples.
    pub fn base_set_stride(&self) -> Option<BigRational> {
        (self.kind == NumberKind::Natural).then(|| self.t.value().re.clone())
    }

    /// Maps a value of the t-structure to its representation in the s-frame.
    pub fn embed(&self, value_in_t: &Exact) -> Exact {
        times(&self.ratio, value_in_t)
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn extract(&self, value_in_s: &Exact) -> Exact {
        quotient(value_in_s, &self.ratio)
    }

    /// Whether an s-frame value denotes an element of this structure.
    pub fn contains(&self, value: &Exact) -> bool {
        match self.kind {
            NumberKind::Natural => {
                let m = self.extract(value);
                is_real(&m) && m.re.is_integer() && !m.re.is_negative()
            }
            NumberKind::Rational | NumberKind::Real => is_real(value),
            NumberKind::Complex => true,
        }
    }

    pub fn zero(&self) -> Exact {
        Exact::zero()
    }

    /// The multiplicative identity, `(t/s)·1` in the s-frame.
    pub fn identity(&self) -> Exact {
        self.factors.identity.clone()
    }

    pub fn add(&self, a: &Exact, b: &Exact) -> Exact {
        plus(a, b)
    }

    /// Additive inverse. Naturals have none.
    pub fn neg(&self, a: &Exact) -> Result<Exact, ArithmeticError> {
        if self.kind == NumberKind::Natural && !a.is_zero() {
            return Err(ArithmeticError::NoInverse(self.kind));
        }
        Ok(-a.clone())
    }

    pub fn sub(&self, a: &Exact, b: &Exact) -> Result<Exact, ArithmeticError> {
        Ok(plus(a, &self.neg(b)?))
    }

    pub fn mul(&self, a: &Exact, b: &Exact) -> Exact {
        times(&times(&self.factors.mul, a), b)
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: &Exact) -> Result<Exact, ArithmeticError> {
        if a.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        if self.kind == NumberKind::Natural {
            return Err(ArithmeticError::NoInverse(self.kind));
        }
        Ok(quotient(&self.factors.inv, a))
    }

    /// Complex conjugation. On real kinds it is the identity map.
    pub fn conj(&self, a: &Exact) -> Exact {
        times(&self.factors.conj, &a.conj())
    }

    /// The structure's order relation `a < b`, reversed when `t/s < 0`.
    pub fn less(&self, a: &Exact, b: &Exact) -> Result<bool, ArithmeticError> {
        if !self.kind.is_ordered() || !is_real(&self.ratio) {
            return Err(ArithmeticError::OrderUndefined(self.kind));
        }
        if !is_real(a) || !is_real(b) {
            return Err(ArithmeticError::OrderUndefined(self.kind));
        }
        if self.ratio.re.is_positive() {
            Ok(a.re < b.re)
        } else {
            Ok(a.re > b.re)
        }
    }
}

/// A number value together with the frame it is expressed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledValue {
    kind: NumberKind,
    frame: ScalingFactor,
    value: Exact,
}

impl ScaledValue {
    pub fn new(kind: NumberKind, frame: ScalingFactor, value: Exact) -> Self {
        Self { kind, frame, value }
    }

    pub fn kind(&self) -> NumberKind {
        self.kind
    }

    pub fn frame(&self) -> &ScalingFactor {
        &self.frame
    }

    pub fn value(&self) -> &Exact {
        &self.value
    }
}

/// The value base number `a` has in the structure at level `s`: `a / s`.
///
/// For naturals `s` must be a positive integer dividing `a`.
pub fn value_of(a: &BaseNumber, s: &ScalingFactor) -> Result<ScaledValue, ArithmeticError> {
    if a.kind() == NumberKind::Natural {
        let stride = s.as_real().filter(|q| q.is_integer() && q.is_positive()).ok_or_else(|| {
            ArithmeticError::InvalidScaling {
                kind: NumberKind::Natural,
                factor: s.to_string(),
                reason: "natural structures need positive integer factors",
            }
        })?;
        if !a.payload().re.to_integer().is_multiple_of(&stride.to_integer()) {
            return Err(ArithmeticError::NotInBaseSet { number: a.to_string(), stride: s.to_string() });
        }
    } else if !s.is_real() && a.kind() != NumberKind::Complex {
        return Err(ArithmeticError::InvalidScaling {
            kind: a.kind(),
            factor: s.to_string(),
            reason: "ordered structures need real factors",
        });
    }
    Ok(ScaledValue::new(a.kind(), s.clone(), a.payload() / s.value()))
}

/// The base number whose value is `v` in `v`'s frame: `frame · value`.
///
/// Relabelling never changes the answer, so the frame carried by `v` is the
/// only one needed.
pub fn number_of(v: &ScaledValue) -> Result<BaseNumber, ArithmeticError> {
    let payload = v.frame.value() * &v.value;
    BaseNumber::new(v.kind, payload.clone()).map_err(|_| ArithmeticError::NotRepresentable {
        value: show_exact(&v.value),
        frame: v.frame.to_string(),
    })
}

/// Re-expresses `v` in the frame `s`: multiplies by `t/s` where `t` is the
/// frame `v` is currently in.
pub fn relabel(v: &ScaledValue, s: &ScalingFactor) -> ScaledValue {
    let value = relabel_value(&v.value, &v.frame, s);
    ScaledValue::new(v.kind, s.clone(), value)
}

/// `(t/s)·v`.
pub fn relabel_value(v: &Exact, t: &ScalingFactor, s: &ScalingFactor) -> Exact {
    times(&t.over(s), v)
}

/// Structure-group action on levels: `W(t)` sends level `c` to `t·c`.
pub fn group_action(t: &ScalingFactor, level: &ScalingFactor) -> ScalingFactor {
    t.compose(level)
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> Exact {
    super::number::exact_real(BigRational::new(n.into(), d.into()))
}

pub(crate) fn one() -> Exact {
    Complex::new(BigRational::one(), BigRational::zero())
}
