use num_complex::Complex64;

use super::NonlocalError;
use crate::manifold_field::{FieldError, Level, Manifold, ScalingField, Signature};
use crate::scaled_arithmetic::to_c64;

/// Complex amplitudes on every node of a spatial grid, optionally sitting
/// at a fixed time inside a spacetime manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct WavePacket {
    grid: Manifold,
    time: Option<f64>,
    amplitudes: Vec<Complex64>,
}

impl WavePacket {
    pub fn new(grid: Manifold, amplitudes: Vec<Complex64>) -> Result<Self, NonlocalError> {
        if grid.signature() != Signature::Euclidean {
            return Err(NonlocalError::InvalidPacket("packet grid must be spatial".into()));
        }
        if amplitudes.len() != grid.node_count() {
            return Err(NonlocalError::InvalidPacket(format!(
                "{} amplitudes for a grid of {} nodes",
                amplitudes.len(),
                grid.node_count()
            )));
        }
        let packet = Self { grid, time: None, amplitudes };
        let n = packet.norm_sqr();
        if !(n > 0.0 && n.is_finite()) {
            return Err(NonlocalError::InvalidPacket(format!("norm² must be finite and positive, got {n}")));
        }
        Ok(packet)
    }

    pub fn from_fn(grid: Manifold, mut f: impl FnMut(&[f64]) -> Complex64) -> Result<Self, NonlocalError> {
        let amplitudes = grid.indices().map(|i| f(&grid.point(&i))).collect();
        Self::new(grid, amplitudes)
    }

    /// `exp(-|w - center|²/(2σ²) + i k·w)`.
    pub fn gaussian(grid: Manifold, center: &[f64], sigma: f64, k: &[f64]) -> Result<Self, NonlocalError> {
        if center.len() != grid.dimension() || k.len() != grid.dimension() {
            return Err(FieldError::DimensionMismatch { expected: grid.dimension(), found: center.len().min(k.len()) }.into());
        }
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(NonlocalError::InvalidPacket(format!("sigma must be positive, got {sigma}")));
        }
        Self::from_fn(grid, |w| {
            let r2: f64 = w.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum();
            let phase: f64 = w.iter().zip(k).map(|(a, b)| a * b).sum();
            Complex64::from_polar((-r2 / (2.0 * sigma * sigma)).exp(), phase)
        })
    }

    /// Places the packet on the constant-time slice `x⁰ = time` of a
    /// spacetime manifold.
    pub fn at_time(mut self, time: f64) -> Self {
        self.time = Some(time);
        self
    }

    pub fn grid(&self) -> &Manifold {
        &self.grid
    }

    pub fn time(&self) -> Option<f64> {
        self.time
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `Σ|ψ(w)|² h³` over the grid.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell_volume()
    }

    /// Coordinates of grid node `index` in a manifold of dimension `dim`.
    fn embed(&self, index: &[usize], dim: usize) -> Result<Vec<f64>, FieldError> {
        let w = self.grid.point(index);
        match (dim - w.len(), self.time) {
            (0, None) => Ok(w),
            (1, Some(t)) => Ok(std::iter::once(t).chain(w).collect()),
            _ => Err(FieldError::DimensionMismatch { expected: dim, found: w.len() + usize::from(self.time.is_some()) }),
        }
    }
}

/// Localizes `psi` at `x0` in level `c`: each amplitude is multiplied by
/// `c f(w) / (c f(x0))`. The level ratio is formed exactly, so the result
/// does not depend on `c` at all.
pub fn scale_wave_packet(
    psi: &WavePacket,
    field: &ScalingField,
    x0: &[f64],
    level: &Level,
) -> Result<WavePacket, NonlocalError> {
    let m = field.manifold();
    m.check_contains(x0)?;
    if m.dimension() < psi.grid.dimension() {
        return Err(FieldError::DimensionMismatch { expected: psi.grid.dimension(), found: m.dimension() }.into());
    }
    let c = to_c64(&level.factor().over(level.factor()));
    let mut amplitudes = Vec::with_capacity(psi.amplitudes.len());
    for (index, a) in psi.grid.indices().zip(&psi.amplitudes) {
        let w = psi.embed(&index, m.dimension())?;
        amplitudes.push(c * (field.connection_factor(&w, x0)? * a));
    }
    Ok(WavePacket { grid: psi.grid.clone(), time: psi.time, amplitudes })
}
