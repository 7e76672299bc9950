//! Normed vector spaces over a scaled scalar structure.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::number::{Exact, NumberKind, ScalingFactor};
use super::structure::{FactorConvention, ScaledStructure};
use super::ArithmeticError;

/// `V^t` written in the frame of `V^s`. Vectors are stored as s-frame
/// component values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVectorSpace {
    dimension: usize,
    scalars: ScaledStructure,
    scalar_mul_factor: Exact,
}

impl ScaledVectorSpace {
    pub fn new(dimension: usize, kind: NumberKind, t: ScalingFactor, s: ScalingFactor) -> Result<Self, ArithmeticError> {
        Self::with_convention(dimension, kind, t, s, FactorConvention::AxiomForced)
    }

    /// Under [`FactorConvention::UniformRatio`] scalar multiplication carries
    /// `t/s`, which breaks the identity-scalar axiom unless `t = s`.
    pub fn with_convention(
        dimension: usize,
        kind: NumberKind,
        t: ScalingFactor,
        s: ScalingFactor,
        convention: FactorConvention,
    ) -> Result<Self, ArithmeticError> {
        if dimension == 0 {
            return Err(ArithmeticError::InvalidNumber("vector space dimension must be positive".into()));
        }
        let scalars = ScaledStructure::with_convention(kind, t, s, convention)?;
        let ratio = scalars.ratio().clone();
        let scalar_mul_factor = match convention {
            FactorConvention::AxiomForced => ratio.inv(),
            FactorConvention::UniformRatio => ratio,
        };
        Ok(Self { dimension, scalars, scalar_mul_factor })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn scalars(&self) -> &ScaledStructure {
        &self.scalars
    }

    /// Maps a t-frame vector to its s-frame representation.
    pub fn embed(&self, v: &[Exact]) -> Vec<Exact> {
        v.iter().map(|c| self.scalars.embed(c)).collect()
    }

    pub fn add(&self, u: &[Exact], v: &[Exact]) -> Vec<Exact> {
        u.iter().zip(v).map(|(a, b)| a + b).collect()
    }

    pub fn scalar_mul(&self, a: &Exact, v: &[Exact]) -> Vec<Exact> {
        let k = &self.scalar_mul_factor * a;
        v.iter().map(|c| &k * c).collect()
    }

    /// Whether the structure's identity scalar fixes `v`.
    pub fn identity_fixes(&self, v: &[Exact]) -> bool {
        self.scalar_mul(&self.scalars.identity(), v) == v
    }

    /// Norm as an s-frame scalar value. For a positive ratio this is the
    /// plain Euclidean norm; otherwise it carries the phase of `t/s`, so it
    /// is nonnegative in the structure's own order.
    pub fn norm(&self, v: &[Exact]) -> Complex64 {
        let r = to_c64(self.scalars.ratio());
        let euclid = v.iter().map(|c| to_c64(c).norm_sqr()).sum::<f64>().sqrt();
        (r / r.norm()) * euclid
    }

    /// Absolute value of a scalar, in the same convention as [`norm`](Self::norm).
    pub fn abs(&self, a: &Exact) -> Complex64 {
        let r = to_c64(self.scalars.ratio());
        (r / r.norm()) * to_c64(a).norm()
    }

    /// `norm` read back in the t-structure, where it is a nonnegative real.
    pub fn intrinsic_norm(&self, v: &[Exact]) -> f64 {
        (self.norm(v) / to_c64(self.scalars.ratio())).re
    }

    pub fn zero(&self) -> Vec<Exact> {
        vec![Exact::zero(); self.dimension]
    }
}

pub(crate) fn to_c64(z: &Exact) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaled_arithmetic::structure::rational;

    fn f(n: i64, d: i64) -> ScalingFactor {
        ScalingFactor::ratio(n, d).unwrap()
    }

    #[test]
    fn identity_scalar_fixes_vectors() {
        let space = ScaledVectorSpace::new(3, NumberKind::Real, f(5, 2), f(1, 3)).unwrap();
        let v = vec![rational(1, 2), rational(-7, 3), rational(4, 1)];
        assert!(space.identity_fixes(&v));

        let literal =
            ScaledVectorSpace::with_convention(3, NumberKind::Real, f(5, 2), f(1, 3), FactorConvention::UniformRatio)
                .unwrap();
        assert!(!literal.identity_fixes(&v));
    }

    #[test]
    fn norm_is_homogeneous() {
        let space = ScaledVectorSpace::new(2, NumberKind::Real, f(3, 1), f(2, 1)).unwrap();
        let v = space.embed(&[rational(3, 1), rational(4, 1)]);
        let a = space.scalars().embed(&rational(-2, 1));
        let lhs = space.norm(&space.scalar_mul(&a, &v));
        let rhs = to_c64(&space.scalars().factors().mul) * space.abs(&a) * space.norm(&v);
        assert!((lhs - rhs).norm() < 1e-12);
        assert!((space.intrinsic_norm(&v) - 5.0).abs() < 1e-12);
        assert!(space.norm(&v).re > 0.0);
    }

    #[test]
    fn norm_with_negative_ratio_is_nonnegative_in_reversed_order() {
        let space = ScaledVectorSpace::new(2, NumberKind::Real, f(-3, 1), f(2, 1)).unwrap();
        let v = space.embed(&[rational(3, 1), rational(4, 1)]);
        let n = space.norm(&v);
        // Reversed order: "nonnegative" means <= 0 as a plain number.
        assert!(n.re <= 0.0);
        assert!((space.intrinsic_norm(&v) - 5.0).abs() < 1e-12);
    }
}
