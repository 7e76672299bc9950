use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::NonlocalError;
use crate::manifold_field::{FieldError, ScalingField};
use crate::scaled_arithmetic::BaseNumber;

/// A computed or measured result: a physical system at `location` whose
/// state reads as `number`.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub location: Vec<f64>,
    pub number: BaseNumber,
}

impl Outcome {
    pub fn new(location: Vec<f64>, number: BaseNumber) -> Self {
        Self { location, number }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    /// The system carrying `r` is moved to `t`'s location and read there.
    PhysicalTransmission,
    /// `r`'s value is carried to `t`'s location by `f(y)/f(x)`.
    ParallelTransform,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub mode: CompareMode,
    pub agree: bool,
    /// Factor applied to `r`'s value; always 1 for physical transmission.
    pub ratio: Complex64,
    /// `r`'s value at `t`'s location.
    pub transported: Complex64,
    /// `t`'s value.
    pub target: Complex64,
    /// `transported / target`, absent when the target is zero.
    pub mismatch: Option<Complex64>,
}

/// Compares outcome `r` at `x` with outcome `t` at `y`.
///
/// Each outcome's local value is its numeral. Physical transmission
/// compares numerals directly, so the verdict never depends on `f`.
/// Parallel transform multiplies `r`'s value by `f(y)/f(x)` and agrees when
/// the result matches `t`'s value to a relative `1e-12`.
pub fn compare_outcomes(
    r: &Outcome,
    t: &Outcome,
    field: &ScalingField,
    mode: CompareMode,
) -> Result<Comparison, NonlocalError> {
    let m = field.manifold();
    m.check_contains(&r.location)?;
    m.check_contains(&t.location)?;
    let (re, im) = r.number.to_f64_pair();
    let value = Complex64::new(re, im);
    let (re, im) = t.number.to_f64_pair();
    let target = Complex64::new(re, im);
    let (ratio, agree) = match mode {
        CompareMode::PhysicalTransmission => (Complex64::new(1.0, 0.0), r.number == t.number),
        CompareMode::ParallelTransform => {
            let ratio = field.connection_factor(&t.location, &r.location)?;
            let transported = ratio * value;
            (ratio, (transported - target).norm() <= 1e-12 * target.norm().max(f64::MIN_POSITIVE))
        }
    };
    let transported = ratio * value;
    let mismatch = (target != Complex64::new(0.0, 0.0)).then(|| transported / target);
    Ok(Comparison { mode, agree, ratio, transported, target, mismatch })
}

/// `p + Γ(x) + iΔ(x)`, componentwise.
pub fn canonical_momentum_shift(p: &[f64], field: &ScalingField, x: &[f64]) -> Result<Vec<Complex64>, NonlocalError> {
    let d = field.manifold().dimension();
    if p.len() != d {
        return Err(FieldError::DimensionMismatch { expected: d, found: p.len() }.into());
    }
    let (gamma, delta) = field.gradients(x)?;
    Ok(p.iter().zip(gamma).zip(delta).map(|((p, g), d)| Complex64::new(p + g, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold_field::{GradientMode, Manifold, ScalarFieldSpec, Signature};
    use std::f64::consts::E;

    fn field(theta: ScalarFieldSpec, phi: ScalarFieldSpec) -> ScalingField {
        let m = Manifold::cube(Signature::Euclidean, -2.0, 2.0, 9).unwrap();
        ScalingField::new(m, theta, phi, GradientMode::Analytic).unwrap()
    }

    fn five(at: f64) -> Outcome {
        Outcome::new(vec![at, 0.0, 0.0], BaseNumber::natural(5))
    }

    #[test]
    fn equal_numbers_agree_physically_for_any_field() {
        let f = field(ScalarFieldSpec::gaussian(2.0, vec![0.0; 3], 0.3), ScalarFieldSpec::linear(vec![3.0, 0.0, 1.0], 0.0));
        let c = compare_outcomes(&five(0.0), &five(1.0), &f, CompareMode::PhysicalTransmission).unwrap();
        assert!(c.agree);
        assert_eq!(c.mismatch, Some(Complex64::new(1.0, 0.0)));
        let other = Outcome::new(vec![1.0, 0.0, 0.0], BaseNumber::natural(6));
        assert!(!compare_outcomes(&five(0.0), &other, &f, CompareMode::PhysicalTransmission).unwrap().agree);
    }

    #[test]
    fn unit_field_makes_modes_coincide() {
        let f = field(ScalarFieldSpec::zero(), ScalarFieldSpec::zero());
        let r = Outcome::new(vec![0.5, 0.0, -1.0], BaseNumber::parse(crate::scaled_arithmetic::NumberKind::Rational, "7/3").unwrap());
        let t = Outcome::new(vec![-0.5, 1.0, 1.0], BaseNumber::parse(crate::scaled_arithmetic::NumberKind::Rational, "7/3").unwrap());
        let a = compare_outcomes(&r, &t, &f, CompareMode::PhysicalTransmission).unwrap();
        let b = compare_outcomes(&r, &t, &f, CompareMode::ParallelTransform).unwrap();
        assert_eq!((a.agree, a.ratio, a.transported, a.mismatch), (b.agree, b.ratio, b.transported, b.mismatch));
    }

    #[test]
    fn parallel_transform_reports_ratio_e() {
        let f = field(ScalarFieldSpec::linear(vec![1.0, 0.0, 0.0], 0.0), ScalarFieldSpec::zero());
        let c = compare_outcomes(&five(0.0), &five(1.0), &f, CompareMode::ParallelTransform).unwrap();
        assert!((c.ratio - E).norm() < 1e-15);
        assert!((c.mismatch.unwrap() - E).norm() < 1e-15);
        assert!(!c.agree);
    }

    #[test]
    fn momentum_shift_examples() {
        let p = [0.3, -1.0, 2.0];
        let x = [0.1, 0.2, 0.3];
        let flat = field(ScalarFieldSpec::constant(4.0), ScalarFieldSpec::constant(1.0));
        let shifted = canonical_momentum_shift(&p, &flat, &x).unwrap();
        assert!(shifted.iter().zip(p).all(|(s, p)| *s == Complex64::new(p, 0.0)));

        let a = vec![0.5, -0.25, 1.5];
        let f = field(ScalarFieldSpec::linear(a.clone(), 0.0), ScalarFieldSpec::zero());
        let shifted = canonical_momentum_shift(&[0.0; 3], &f, &x).unwrap();
        assert!(shifted.iter().zip(&a).all(|(s, a)| *s == Complex64::new(*a, 0.0)));

        let b = vec![0.0, 2.0, 0.0];
        let f = field(ScalarFieldSpec::zero(), ScalarFieldSpec::linear(b.clone(), 0.0));
        let shifted = canonical_momentum_shift(&p, &f, &x).unwrap();
        assert!(shifted.iter().zip(p).zip(&b).all(|((s, p), b)| *s == Complex64::new(p, *b)));
    }
}
