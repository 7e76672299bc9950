//! Real scalar fields over the manifold, described declaratively.

use serde::{Deserialize, Serialize};

use super::FieldError;

/// Grid samples of a scalar field, interpolated multilinearly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    /// Coordinates of the first node on each axis.
    pub lower: Vec<f64>,
    pub spacing: Vec<f64>,
    /// Node count per axis.
    pub shape: Vec<usize>,
    /// Row-major samples.
    pub values: Vec<f64>,
}

impl Table {
    fn validate(&self, dimension: usize) -> Result<(), FieldError> {
        if self.lower.len() != dimension || self.spacing.len() != dimension || self.shape.len() != dimension {
            return Err(FieldError::InvalidSpec(format!("table must have {dimension} axes")));
        }
        if self.shape.iter().any(|&n| n < 2) {
            return Err(FieldError::InvalidSpec("table needs at least 2 nodes per axis".into()));
        }
        if self.spacing.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(FieldError::InvalidSpec("table spacing must be positive".into()));
        }
        let expected: usize = self.shape.iter().product();
        if self.values.len() != expected {
            return Err(FieldError::InvalidSpec(format!(
                "table has {} values, shape needs {expected}",
                self.values.len()
            )));
        }
        if let Some(i) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(FieldError::InvalidSpec(format!("table value {i} is not finite")));
        }
        Ok(())
    }

    pub fn upper(&self, axis: usize) -> f64 {
        self.lower[axis] + (self.shape[axis] - 1) as f64 * self.spacing[axis]
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let d = self.shape.len();
        // Cell origin and fractional offset per axis, clamped to the table.
        let mut base = vec![0usize; d];
        let mut frac = vec![0.0; d];
        for k in 0..d {
            let u = ((x[k] - self.lower[k]) / self.spacing[k]).clamp(0.0, (self.shape[k] - 1) as f64);
            let i = (u.floor() as usize).min(self.shape[k] - 2);
            base[k] = i;
            frac[k] = u - i as f64;
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << d) {
            let mut weight = 1.0;
            let mut offset = 0;
            for k in 0..d {
                let bit = (corner >> (d - 1 - k)) & 1;
                weight *= if bit == 1 { frac[k] } else { 1.0 - frac[k] };
                offset = offset * self.shape[k] + base[k] + bit;
            }
            if weight != 0.0 {
                acc += weight * self.values[offset];
            }
        }
        acc
    }
}

/// A real scalar field given by a closed-form family or a table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScalarFieldSpec {
    /// `k` everywhere.
    Constant { value: f64 },
    /// `a·x + b`.
    Linear {
        a: Vec<f64>,
        #[serde(default)]
        b: f64,
    },
    /// `A·exp(-|x - x0|² / 2σ²)`.
    Gaussian { amplitude: f64, center: Vec<f64>, sigma: f64 },
    /// `g(|x|)` with `g(r) = Σ c_k r^k`.
    Radial { coefficients: Vec<f64> },
    Tabulated(Table),
    Sum { terms: Vec<ScalarFieldSpec> },
    Scaled { factor: f64, field: Box<ScalarFieldSpec> },
}

impl ScalarFieldSpec {
    pub fn zero() -> Self {
        ScalarFieldSpec::Constant { value: 0.0 }
    }

    pub fn constant(value: f64) -> Self {
        ScalarFieldSpec::Constant { value }
    }

    pub fn linear(a: Vec<f64>, b: f64) -> Self {
        ScalarFieldSpec::Linear { a, b }
    }

    pub fn gaussian(amplitude: f64, center: Vec<f64>, sigma: f64) -> Self {
        ScalarFieldSpec::Gaussian { amplitude, center, sigma }
    }

    /// `self + k`.
    pub fn shifted(self, k: f64) -> Self {
        ScalarFieldSpec::Sum { terms: vec![self, ScalarFieldSpec::constant(k)] }
    }

    /// `factor · self`.
    pub fn scaled(self, factor: f64) -> Self {
        ScalarFieldSpec::Scaled { factor, field: Box::new(self) }
    }

    pub fn plus(self, other: ScalarFieldSpec) -> Self {
        ScalarFieldSpec::Sum { terms: vec![self, other] }
    }

    pub fn validate(&self, dimension: usize) -> Result<(), FieldError> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(FieldError::InvalidSpec(format!("{what} must be finite")))
            }
        };
        match self {
            ScalarFieldSpec::Constant { value } => finite(*value, "constant value"),
            ScalarFieldSpec::Linear { a, b } => {
                if a.len() != dimension {
                    return Err(FieldError::InvalidSpec(format!(
                        "linear coefficients have {} entries, expected {dimension}",
                        a.len()
                    )));
                }
                a.iter().try_for_each(|v| finite(*v, "linear coefficient"))?;
                finite(*b, "linear offset")
            }
            ScalarFieldSpec::Gaussian { amplitude, center, sigma } => {
                if center.len() != dimension {
                    return Err(FieldError::InvalidSpec(format!(
                        "gaussian center has {} entries, expected {dimension}",
                        center.len()
                    )));
                }
                if !(*sigma > 0.0 && sigma.is_finite()) {
                    return Err(FieldError::InvalidSpec("gaussian sigma must be positive".into()));
                }
                center.iter().try_for_each(|v| finite(*v, "gaussian center"))?;
                finite(*amplitude, "gaussian amplitude")
            }
            ScalarFieldSpec::Radial { coefficients } => {
                coefficients.iter().try_for_each(|v| finite(*v, "radial coefficient"))
            }
            ScalarFieldSpec::Tabulated(t) => t.validate(dimension),
            ScalarFieldSpec::Sum { terms } => terms.iter().try_for_each(|t| t.validate(dimension)),
            ScalarFieldSpec::Scaled { factor, field } => {
                finite(*factor, "scale factor")?;
                field.validate(dimension)
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ScalarFieldSpec::Constant { value } => *value,
            ScalarFieldSpec::Linear { a, b } => a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() + b,
            ScalarFieldSpec::Gaussian { amplitude, center, sigma } => {
                let r2: f64 = x.iter().zip(center).map(|(x, c)| (x - c) * (x - c)).sum();
                amplitude * (-r2 / (2.0 * sigma * sigma)).exp()
            }
            ScalarFieldSpec::Radial { coefficients } => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                coefficients.iter().rev().fold(0.0, |acc, c| acc * r + c)
            }
            ScalarFieldSpec::Tabulated(t) => t.eval(x),
            ScalarFieldSpec::Sum { terms } => terms.iter().map(|t| t.eval(x)).sum(),
            ScalarFieldSpec::Scaled { factor, field } => factor * field.eval(x),
        }
    }

    /// Closed-form gradient, or `None` if the field contains a table.
    ///
    /// The radial family uses `g'(r)·x/r`, taken as zero at the origin.
    pub fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let d = x.len();
        match self {
            ScalarFieldSpec::Constant { .. } => Some(vec![0.0; d]),
            ScalarFieldSpec::Linear { a, .. } => Some(a.clone()),
            ScalarFieldSpec::Gaussian { center, sigma, .. } => {
                let g = self.eval(x);
                let s2 = sigma * sigma;
                Some(x.iter().zip(center).map(|(x, c)| -g * (x - c) / s2).collect())
            }
            ScalarFieldSpec::Radial { coefficients } => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                if r == 0.0 {
                    return Some(vec![0.0; d]);
                }
                let dg = coefficients
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, c)| acc * r + k as f64 * c);
                // dg above is Σ k c_k r^(k-1) evaluated by Horner in r.
                Some(x.iter().map(|v| dg * v / r).collect())
            }
            ScalarFieldSpec::Tabulated(_) => None,
            ScalarFieldSpec::Sum { terms } => {
                let mut acc = vec![0.0; d];
                for t in terms {
                    for (a, g) in acc.iter_mut().zip(t.gradient(x)?) {
                        *a += g;
                    }
                }
                Some(acc)
            }
            ScalarFieldSpec::Scaled { factor, field } => {
                Some(field.gradient(x)?.into_iter().map(|g| factor * g).collect())
            }
        }
    }

    /// Second-order central difference of the field along each axis.
    pub fn central_gradient(&self, x: &[f64], step: &[f64]) -> Vec<f64> {
        let mut probe = x.to_vec();
        (0..x.len())
            .map(|mu| {
                let h = step[mu];
                probe[mu] = x[mu] + h;
                let up = self.eval(&probe);
                probe[mu] = x[mu] - h;
                let down = self.eval(&probe);
                probe[mu] = x[mu];
                (up - down) / (2.0 * h)
            })
            .collect()
    }

    pub fn is_tabulated(&self) -> bool {
        match self {
            ScalarFieldSpec::Tabulated(_) => true,
            ScalarFieldSpec::Sum { terms } => terms.iter().any(Self::is_tabulated),
            ScalarFieldSpec::Scaled { field, .. } => field.is_tabulated(),
            _ => false,
        }
    }

    /// Whether the field is constant by construction.
    pub fn is_constant(&self) -> bool {
        match self {
            ScalarFieldSpec::Constant { .. } => true,
            ScalarFieldSpec::Linear { a, .. } => a.iter().all(|v| *v == 0.0),
            ScalarFieldSpec::Gaussian { amplitude, .. } => *amplitude == 0.0,
            ScalarFieldSpec::Radial { coefficients } => coefficients.iter().skip(1).all(|c| *c == 0.0),
            ScalarFieldSpec::Tabulated(t) => t.values.windows(2).all(|w| w[0] == w[1]),
            ScalarFieldSpec::Sum { terms } => terms.iter().all(Self::is_constant),
            ScalarFieldSpec::Scaled { factor, field } => *factor == 0.0 || field.is_constant(),
        }
    }
}
