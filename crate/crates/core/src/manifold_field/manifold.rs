//! Flat grid manifolds.

use serde::{Deserialize, Serialize};

use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    /// Three spatial axes, metric `diag(+1, +1, +1)`.
    Euclidean,
    /// Time plus three spatial axes, metric `diag(+1, -1, -1, -1)`.
    Minkowski,
}

impl Signature {
    pub fn dimension(self) -> usize {
        match self {
            Signature::Euclidean => 3,
            Signature::Minkowski => 4,
        }
    }

    pub fn metric(self) -> &'static [f64] {
        match self {
            Signature::Euclidean => &[1.0, 1.0, 1.0],
            Signature::Minkowski => &[1.0, -1.0, -1.0, -1.0],
        }
    }

    pub fn for_dimension(dimension: usize) -> Option<Self> {
        match dimension {
            3 => Some(Signature::Euclidean),
            4 => Some(Signature::Minkowski),
            _ => None,
        }
    }
}

/// One coordinate axis of the grid: nodes at `lower + k·spacing`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub lower: f64,
    pub upper: f64,
    pub spacing: f64,
}

impl Axis {
    pub fn new(lower: f64, upper: f64, spacing: f64) -> Result<Self, FieldError> {
        let axis = Self { lower, upper, spacing };
        axis.validate()?;
        Ok(axis)
    }

    /// `n` nodes covering `[lower, upper]`.
    pub fn with_nodes(lower: f64, upper: f64, nodes: usize) -> Result<Self, FieldError> {
        if nodes < 2 {
            return Err(FieldError::InvalidGrid(format!("an axis needs at least 2 nodes, got {nodes}")));
        }
        Self::new(lower, upper, (upper - lower) / (nodes - 1) as f64)
    }

    fn validate(&self) -> Result<(), FieldError> {
        if !(self.lower.is_finite() && self.upper.is_finite() && self.spacing.is_finite()) {
            return Err(FieldError::InvalidGrid("axis bounds and spacing must be finite".into()));
        }
        if self.spacing <= 0.0 {
            return Err(FieldError::InvalidGrid(format!("spacing must be positive, got {}", self.spacing)));
        }
        if self.upper <= self.lower {
            return Err(FieldError::InvalidGrid(format!(
                "bounds out of order: lower {} >= upper {}",
                self.lower, self.upper
            )));
        }
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        ((self.upper - self.lower) / self.spacing + 1e-9).floor() as usize + 1
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        self.lower + k as f64 * self.spacing
    }

    fn tolerance(&self) -> f64 {
        1e-9 * self.spacing.max(self.upper - self.lower)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower - self.tolerance() && x <= self.upper + self.tolerance()
    }
}

/// A flat manifold covered by one chart and sampled on a rectangular grid.
///
/// Every fiber carries the same identity chart, so a point has the same
/// coordinates in the fiber at any location.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifold {
    signature: Signature,
    axes: Vec<Axis>,
}

impl Manifold {
    pub fn new(signature: Signature, axes: Vec<Axis>) -> Result<Self, FieldError> {
        if axes.len() != signature.dimension() {
            return Err(FieldError::DimensionMismatch { expected: signature.dimension(), found: axes.len() });
        }
        for a in &axes {
            a.validate()?;
        }
        Ok(Self { signature, axes })
    }

    pub fn euclidean(axes: [Axis; 3]) -> Result<Self, FieldError> {
        Self::new(Signature::Euclidean, axes.to_vec())
    }

    pub fn minkowski(axes: [Axis; 4]) -> Result<Self, FieldError> {
        Self::new(Signature::Minkowski, axes.to_vec())
    }

    /// A cube `[lower, upper]^d` with `nodes` points per axis.
    pub fn cube(signature: Signature, lower: f64, upper: f64, nodes: usize) -> Result<Self, FieldError> {
        let axis = Axis::with_nodes(lower, upper, nodes)?;
        Self::new(signature, vec![axis; signature.dimension()])
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    /// Diagonal of the metric tensor.
    pub fn metric(&self) -> &'static [f64] {
        self.signature.metric()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Axis::nodes).collect()
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(Axis::nodes).product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing).product()
    }

    pub fn check_dimension(&self, x: &[f64]) -> Result<(), FieldError> {
        if x.len() != self.dimension() {
            return Err(FieldError::DimensionMismatch { expected: self.dimension(), found: x.len() });
        }
        Ok(())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension() && self.axes.iter().zip(x).all(|(a, &v)| a.contains(v))
    }

    pub fn check_contains(&self, x: &[f64]) -> Result<(), FieldError> {
        self.check_dimension(x)?;
        if !self.contains(x) {
            return Err(FieldError::OutOfBounds { point: x.to_vec() });
        }
        Ok(())
    }

    /// Coordinates of a grid node.
    pub fn point(&self, index: &[usize]) -> Vec<f64> {
        self.axes.iter().zip(index).map(|(a, &k)| a.coordinate(k)).collect()
    }

    /// Row-major linear offset of a grid node.
    pub fn linear_index(&self, index: &[usize]) -> usize {
        let mut offset = 0;
        for (a, &k) in self.axes.iter().zip(index) {
            offset = offset * a.nodes() + k;
        }
        offset
    }

    pub fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let shape = self.shape();
        let mut index = vec![0; shape.len()];
        for (slot, n) in index.iter_mut().zip(&shape).rev() {
            *slot = linear % n;
            linear /= n;
        }
        index
    }

    /// All grid nodes in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.node_count()).map(|i| self.multi_index(i))
    }

    /// Whether the node has a neighbour on both sides along every axis.
    pub fn is_interior(&self, index: &[usize]) -> bool {
        self.axes.iter().zip(index).all(|(a, &k)| k >= 1 && k + 1 < a.nodes())
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.indices().filter(|i| self.is_interior(i))
    }

    /// The chart of the fiber at `location`, applied to the point `z`.
    /// The manifold is flat and one chart covers it, so every fiber uses the
    /// identity coordinate map.
    pub fn chart(&self, location: &[f64], z: &[f64]) -> Vec<f64> {
        debug_assert_eq!(location.len(), z.len());
        z.to_vec()
    }
}
