//! Abelian gauge-covariant derivative with scaling fields, and a numerical
//! check of local U(1) invariance.
//!
//! The derivative is
//!
//! ```text
//! D_μψ = ∂_μψ + (g_r Γ_μ + i g_i Δ_μ + i h_i B_μ) ψ
//! ```
//!
//! Under `ψ → e^{iβ}ψ` with `β = α + γ`, the connection terms stay
//! invariant when `Γ' = Γ`, `B' = B - ∂α/h_i` and `Δ' = Δ - ∂γ/g_i`. How
//! `β` is split into `α` and `γ` is left to the caller.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold_field::{FieldError, FieldSample, ScalarFieldSpec, ScalingField};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GaugeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("coupling {coupling} is zero but the {field} transform is not constant")]
    ZeroCoupling { coupling: &'static str, field: &'static str },
    #[error("photon field has {found} components, manifold needs {expected}")]
    ComponentCount { expected: usize, found: usize },
}

/// A covector field: one scalar field per axis, plus weighted gradients of
/// scalar fields accumulated by gauge transformations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovectorField {
    pub components: Vec<ScalarFieldSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gradient_terms: Vec<(f64, ScalarFieldSpec)>,
}

impl CovectorField {
    pub fn new(components: Vec<ScalarFieldSpec>) -> Self {
        Self { components, gradient_terms: Vec::new() }
    }

    pub fn zero(dimension: usize) -> Self {
        Self::new(vec![ScalarFieldSpec::zero(); dimension])
    }

    /// Components at `x`. Gradient terms are differentiated in the gradient
    /// mode of `field`.
    pub fn eval(&self, field: &ScalingField, x: &[f64]) -> Result<Vec<f64>, FieldError> {
        let mut out: Vec<f64> = self.components.iter().map(|c| c.eval(x)).collect();
        for (weight, spec) in &self.gradient_terms {
            for (o, g) in out.iter_mut().zip(field.gradient_of(spec, x)?) {
                *o += weight * g;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeConfig {
    pub g_r: f64,
    pub g_i: f64,
    pub h_i: f64,
    /// The photon field `B`.
    pub b: CovectorField,
}

impl GaugeConfig {
    pub fn new(g_r: f64, g_i: f64, h_i: f64, b: CovectorField) -> Self {
        Self { g_r, g_i, h_i, b }
    }

    pub fn validate(&self, dimension: usize) -> Result<(), GaugeError> {
        if self.b.components.len() != dimension {
            return Err(GaugeError::ComponentCount { expected: dimension, found: self.b.components.len() });
        }
        for c in self.b.components.iter().chain(self.b.gradient_terms.iter().map(|(_, s)| s)) {
            c.validate(dimension)?;
        }
        for (name, v) in [("g_r", self.g_r), ("g_i", self.g_i), ("h_i", self.h_i)] {
            if !v.is_finite() {
                return Err(FieldError::InvalidSpec(format!("coupling {name} must be finite")).into());
            }
        }
        Ok(())
    }

    /// `g_r Γ_μ + i g_i Δ_μ + i h_i B_μ` for every μ.
    pub fn connection(&self, field: &ScalingField, x: &[f64]) -> Result<Vec<Complex64>, GaugeError> {
        let (gamma, delta) = field.gradients(x)?;
        let b = self.b.eval(field, x)?;
        Ok(gamma
            .iter()
            .zip(&delta)
            .zip(&b)
            .map(|((g, d), b)| Complex64::new(self.g_r * g, self.g_i * d + self.h_i * b))
            .collect())
    }
}

/// A local U(1) transformation `e^{iβ}` with `β = α + γ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeTransform {
    /// Part of `β` absorbed by the photon field.
    pub alpha: ScalarFieldSpec,
    /// Part of `β` absorbed by the phase gradient `Δ`.
    pub gamma: ScalarFieldSpec,
}

impl GaugeTransform {
    pub fn new(alpha: ScalarFieldSpec, gamma: ScalarFieldSpec) -> Self {
        Self { alpha, gamma }
    }

    pub fn beta(&self) -> ScalarFieldSpec {
        self.alpha.clone().plus(self.gamma.clone())
    }
}

/// `D_μψ` at an interior grid node.
pub fn gauge_covariant_derivative(
    psi: &FieldSample,
    field: &ScalingField,
    cfg: &GaugeConfig,
    index: &[usize],
    mu: usize,
) -> Result<Complex64, GaugeError> {
    let partial = psi.central_partial(index, mu)?;
    let x = field.manifold().point(index);
    let conn = cfg.connection(field, &x)?;
    Ok(partial + conn[mu] * psi.at(index))
}

/// Transformed `(field, cfg)`: `φ' = φ - γ/g_i` (so `Δ' = Δ - ∂γ/g_i`),
/// `B' = B - ∂α/h_i`, and `θ` untouched.
pub fn apply_transform(
    field: &ScalingField,
    cfg: &GaugeConfig,
    transform: &GaugeTransform,
) -> Result<(ScalingField, GaugeConfig), GaugeError> {
    let mut field = field.clone();
    let mut cfg = cfg.clone();
    if !transform.gamma.is_constant() {
        if cfg.g_i == 0.0 {
            return Err(GaugeError::ZeroCoupling { coupling: "g_i", field: "gamma" });
        }
        let phi = field.phi_spec().clone().plus(transform.gamma.clone().scaled(-1.0 / cfg.g_i));
        field = field.with_phi(phi)?;
    }
    if !transform.alpha.is_constant() {
        if cfg.h_i == 0.0 {
            return Err(GaugeError::ZeroCoupling { coupling: "h_i", field: "alpha" });
        }
        cfg.b.gradient_terms.push((-1.0 / cfg.h_i, transform.alpha.clone()));
    }
    Ok((field, cfg))
}

/// `|LHS - RHS|` per axis of the invariance condition
///
/// ```text
/// g_r Γ' + i g_i Δ' + i h_i B' + i ∂β  =  g_r Γ + i g_i Δ + i h_i B
/// ```
///
/// for an already transformed pair, which need not come from
/// [`apply_transform`].
pub fn transformed_residuals(
    original: (&ScalingField, &GaugeConfig),
    transformed: (&ScalingField, &GaugeConfig),
    transform: &GaugeTransform,
    x: &[f64],
) -> Result<Vec<f64>, GaugeError> {
    let (field, cfg) = original;
    let (field_t, cfg_t) = transformed;
    let rhs = cfg.connection(field, x)?;
    let lhs = cfg_t.connection(field_t, x)?;
    let d_alpha = field.gradient_of(&transform.alpha, x)?;
    let d_gamma = field.gradient_of(&transform.gamma, x)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(mu, (l, r))| (l + Complex64::new(0.0, d_alpha[mu] + d_gamma[mu]) - r).norm())
        .collect())
}

/// Largest per-axis violation of the invariance condition at `x` after
/// [`apply_transform`].
pub fn invariance_residual(
    field: &ScalingField,
    cfg: &GaugeConfig,
    transform: &GaugeTransform,
    x: &[f64],
) -> Result<f64, GaugeError> {
    field.manifold().check_contains(x)?;
    let (field_t, cfg_t) = apply_transform(field, cfg, transform)?;
    let r = transformed_residuals((field, cfg), (&field_t, &cfg_t), transform, x)?;
    Ok(r.into_iter().fold(0.0, f64::max))
}

/// Largest component of the discrete curl `∂_i Δ_j - ∂_j Δ_i` at an
/// interior node. `Δ` and its derivatives are both taken as central
/// differences of `φ` at the grid spacing, so the curl of an exact gradient
/// cancels up to rounding.
pub fn delta_curl(field: &ScalingField, index: &[usize]) -> Result<f64, FieldError> {
    let m = field.manifold();
    let d = m.dimension();
    if !m.is_interior(index) {
        let axis = (0..d).find(|&i| index[i] == 0 || index[i] + 1 >= m.axes()[i].nodes()).unwrap_or(0);
        return Err(FieldError::BoundaryPoint { point: m.point(index), axis });
    }
    let h: Vec<f64> = m.axes().iter().map(|a| a.spacing).collect();
    let x = m.point(index);
    let delta_at = |i: usize, sign: f64| {
        let mut y = x.clone();
        y[i] += sign * h[i];
        field.phi_spec().central_gradient(&y, &h)
    };
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let (up_i, down_i) = (delta_at(i, 1.0), delta_at(i, -1.0));
        for j in 0..i {
            let (up_j, down_j) = (delta_at(j, 1.0), delta_at(j, -1.0));
            let d_i_delta_j = (up_i[j] - down_i[j]) / (2.0 * h[i]);
            let d_j_delta_i = (up_j[i] - down_j[i]) / (2.0 * h[j]);
            worst = worst.max((d_i_delta_j - d_j_delta_i).abs());
        }
    }
    Ok(worst)
}
