//! The scaling field `f(x) = exp(θ(x) + iφ(x))` and the derivatives it
//! induces.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::manifold::Manifold;
use super::spec::ScalarFieldSpec;
use super::FieldError;
use crate::scaled_arithmetic::{group_action, ScalingFactor};

/// How the gradient covectors `Γ = ∇θ` and `Δ = ∇φ` are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum GradientMode {
    /// Closed-form derivatives. Tabulated fields fall back to central
    /// differences with the grid spacing.
    #[default]
    Analytic,
    /// Second-order central differences with a uniform step.
    CentralDifference { step: f64 },
}

/// A scaling field over a flat manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingField {
    manifold: Manifold,
    theta: ScalarFieldSpec,
    phi: ScalarFieldSpec,
    mode: GradientMode,
}

impl ScalingField {
    pub fn new(
        manifold: Manifold,
        theta: ScalarFieldSpec,
        phi: ScalarFieldSpec,
        mode: GradientMode,
    ) -> Result<Self, FieldError> {
        let d = manifold.dimension();
        theta.validate(d)?;
        phi.validate(d)?;
        if let GradientMode::CentralDifference { step } = mode {
            if !(step > 0.0 && step.is_finite()) {
                return Err(FieldError::InvalidSpec(format!("gradient step must be positive, got {step}")));
            }
        }
        Ok(Self { manifold, theta, phi, mode })
    }

    /// `f ≡ 1`.
    pub fn unscaled(manifold: Manifold) -> Self {
        Self { manifold, theta: ScalarFieldSpec::zero(), phi: ScalarFieldSpec::zero(), mode: GradientMode::Analytic }
    }

    pub fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    pub fn theta_spec(&self) -> &ScalarFieldSpec {
        &self.theta
    }

    pub fn phi_spec(&self) -> &ScalarFieldSpec {
        &self.phi
    }

    pub fn gradient_mode(&self) -> GradientMode {
        self.mode
    }

    pub fn with_gradient_mode(mut self, mode: GradientMode) -> Result<Self, FieldError> {
        if let GradientMode::CentralDifference { step } = mode {
            if !(step > 0.0 && step.is_finite()) {
                return Err(FieldError::InvalidSpec(format!("gradient step must be positive, got {step}")));
            }
        }
        self.mode = mode;
        Ok(self)
    }

    pub fn with_phi(mut self, phi: ScalarFieldSpec) -> Result<Self, FieldError> {
        phi.validate(self.manifold.dimension())?;
        self.phi = phi;
        Ok(self)
    }

    /// `(θ + dθ, φ + dφ)`.
    pub fn shifted(&self, d_theta: f64, d_phi: f64) -> Self {
        Self {
            manifold: self.manifold.clone(),
            theta: self.theta.clone().shifted(d_theta),
            phi: self.phi.clone().shifted(d_phi),
            mode: self.mode,
        }
    }

    pub fn theta(&self, x: &[f64]) -> Result<f64, FieldError> {
        self.manifold.check_contains(x)?;
        Ok(self.theta.eval(x))
    }

    pub fn phi(&self, x: &[f64]) -> Result<f64, FieldError> {
        self.manifold.check_contains(x)?;
        Ok(self.phi.eval(x))
    }

    /// `f(x) = e^θ (cos φ + i sin φ)`; never zero.
    pub fn eval_f(&self, x: &[f64]) -> Result<Complex64, FieldError> {
        self.manifold.check_contains(x)?;
        Ok(Complex64::from_polar(self.theta.eval(x).exp(), self.phi.eval(x)))
    }

    /// Gradient of an arbitrary scalar field on this manifold, computed in
    /// this field's gradient mode.
    pub fn gradient_of(&self, spec: &ScalarFieldSpec, x: &[f64]) -> Result<Vec<f64>, FieldError> {
        let step: Vec<f64> = match self.mode {
            GradientMode::Analytic => match spec.gradient(x) {
                Some(g) => return Ok(g),
                None => self.manifold.axes().iter().map(|a| a.spacing).collect(),
            },
            GradientMode::CentralDifference { step } => vec![step; x.len()],
        };
        for (mu, h) in step.iter().enumerate() {
            let mut probe = x.to_vec();
            for sign in [1.0, -1.0] {
                probe[mu] = x[mu] + sign * h;
                if !self.manifold.contains(&probe) {
                    return Err(FieldError::BoundaryPoint { point: x.to_vec(), axis: mu });
                }
            }
        }
        Ok(spec.central_gradient(x, &step))
    }

    /// `(Γ(x), Δ(x)) = (∇θ(x), ∇φ(x))`, the real and imaginary parts of
    /// `∂f/f`.
    pub fn gradients(&self, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>), FieldError> {
        self.manifold.check_contains(x)?;
        Ok((self.gradient_of(&self.theta, x)?, self.gradient_of(&self.phi, x)?))
    }

    pub fn gamma(&self, x: &[f64]) -> Result<Vec<f64>, FieldError> {
        self.manifold.check_contains(x)?;
        self.gradient_of(&self.theta, x)
    }

    pub fn delta(&self, x: &[f64]) -> Result<Vec<f64>, FieldError> {
        self.manifold.check_contains(x)?;
        self.gradient_of(&self.phi, x)
    }

    /// `f(y)/f(x)`, the factor relating number values at `x` to those at `y`.
    ///
    /// Evaluated from the exponent differences, so constant shifts of θ and
    /// φ cancel before exponentiation.
    pub fn connection_factor(&self, y: &[f64], x: &[f64]) -> Result<Complex64, FieldError> {
        self.manifold.check_contains(y)?;
        self.manifold.check_contains(x)?;
        let d_theta = self.theta.eval(y) - self.theta.eval(x);
        let d_phi = self.phi.eval(y) - self.phi.eval(x);
        Ok(Complex64::from_polar(d_theta.exp(), d_phi))
    }

    /// `∂_μ f / f = Γ_μ + iΔ_μ`: the derivative of a structure-valued
    /// field. Its position part vanishes under the identity connection.
    pub fn structure_derivative(&self, x: &[f64], mu: usize) -> Result<Complex64, FieldError> {
        self.check_axis(mu)?;
        let (g, d) = self.gradients(x)?;
        Ok(Complex64::new(g[mu], d[mu]))
    }

    /// `D_μψ = ∂_μψ + (Γ_μ + iΔ_μ)ψ` at an interior grid node, with a
    /// central difference for `∂_μψ`.
    pub fn covariant_derivative(&self, psi: &FieldSample, index: &[usize], mu: usize) -> Result<Complex64, FieldError> {
        let x = self.manifold.point(index);
        let partial = psi.central_partial(index, mu)?;
        let coefficient = self.structure_derivative(&x, mu)?;
        Ok(partial + coefficient * psi.at(index))
    }

    fn check_axis(&self, mu: usize) -> Result<(), FieldError> {
        if mu >= self.manifold.dimension() {
            return Err(FieldError::DimensionMismatch { expected: self.manifold.dimension(), found: mu + 1 });
        }
        Ok(())
    }
}

/// Level `c` of a fiber: which of the scaled structures `S^c` a quantity is
/// expressed in. Held exactly so level ratios cancel without rounding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level(ScalingFactor);

impl Level {
    pub fn new(c: ScalingFactor) -> Self {
        Self(c)
    }

    pub fn from_f64(c: f64) -> Result<Self, FieldError> {
        let q = BigRational::from_float(c).ok_or(FieldError::ZeroLevel)?;
        if q.is_zero() {
            return Err(FieldError::ZeroLevel);
        }
        Ok(Self(ScalingFactor::rational(q).map_err(|_| FieldError::ZeroLevel)?))
    }

    pub fn factor(&self) -> &ScalingFactor {
        &self.0
    }

    /// The structure-group element taking this level to `other`.
    pub fn transition_to(&self, other: &Level) -> ScalingFactor {
        group_action(&other.0, &self.0.inverse())
    }

    /// The level reached by acting with `t`.
    pub fn act(&self, t: &ScalingFactor) -> Level {
        Level(group_action(t, &self.0))
    }
}

impl std::str::FromStr for Level {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let f: ScalingFactor = s.parse().map_err(|_| FieldError::ZeroLevel)?;
        Ok(Self(f))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleRole {
    Scalar,
    VectorComponent(usize),
}

/// Complex samples of a scalar field, or of one vector component, on every
/// node of a manifold grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSample {
    manifold: Manifold,
    role: SampleRole,
    values: Vec<Complex64>,
}

impl FieldSample {
    pub fn new(manifold: Manifold, role: SampleRole, values: Vec<Complex64>) -> Result<Self, FieldError> {
        if values.len() != manifold.node_count() {
            return Err(FieldError::GridMismatch(format!(
                "{} samples for a grid of {} nodes",
                values.len(),
                manifold.node_count()
            )));
        }
        Ok(Self { manifold, role, values })
    }

    pub fn from_fn(manifold: &Manifold, role: SampleRole, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = manifold.indices().map(|i| f(&manifold.point(&i))).collect();
        Self { manifold: manifold.clone(), role, values }
    }

    pub fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    pub fn role(&self) -> SampleRole {
        self.role
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, index: &[usize]) -> Complex64 {
        self.values[self.manifold.linear_index(index)]
    }

    /// Second-order central difference along axis `mu`.
    pub fn central_partial(&self, index: &[usize], mu: usize) -> Result<Complex64, FieldError> {
        let axis = self
            .manifold
            .axes()
            .get(mu)
            .ok_or(FieldError::DimensionMismatch { expected: self.manifold.dimension(), found: mu + 1 })?;
        let k = index[mu];
        if k == 0 || k + 1 >= axis.nodes() {
            return Err(FieldError::BoundaryPoint { point: self.manifold.point(index), axis: mu });
        }
        let mut up = index.to_vec();
        up[mu] += 1;
        let mut down = index.to_vec();
        down[mu] -= 1;
        Ok((self.at(&up) - self.at(&down)) / (2.0 * axis.spacing))
    }
}
