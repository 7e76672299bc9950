use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::path::{scaled_path_length, Curve, HermiteCurve, Perturbed};
use super::NonlocalError;
use crate::manifold_field::{FieldError, ScalingField};

/// How `Γ·q̇` in the drag term is contracted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DragContraction {
    /// `Σ_μ Γ_μ q̇^μ`, the rate of change of θ along the path.
    #[default]
    Euclidean,
    /// `Σ_μ η_μμ Γ_μ q̇^μ`.
    Minkowski,
}

/// Sign of the gradient force term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForceConvention {
    /// `q̈^μ = -(Γ·q̇) q̇^μ + ε η^μμ Γ_μ` with `ε = sign(η(q̇₀, q̇₀))`: the
    /// stationary curves of the `e^θ`-weighted length for a unit-speed
    /// start.
    #[default]
    Extremal,
    /// `q̈^μ = -(Γ·q̇) q̇^μ - η^μμ Γ_μ` for every start. Agrees with
    /// `Extremal` for spacelike starts in `(+,-,-,-)` only.
    Literal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicOptions {
    #[serde(default)]
    pub drag: DragContraction,
    #[serde(default)]
    pub force: ForceConvention,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicState {
    pub tau: f64,
    pub q: Vec<f64>,
    pub v: Vec<f64>,
}

impl GeodesicState {
    pub fn new(q: Vec<f64>, v: Vec<f64>) -> Self {
        Self { tau: 0.0, q, v }
    }
}

/// States at uniform proper-time steps. When the path leaves the grid the
/// states up to the last one inside are kept and `left_domain` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<GeodesicState>,
    pub step: f64,
    pub left_domain: bool,
}

impl Trajectory {
    pub fn last(&self) -> &GeodesicState {
        &self.states[self.states.len() - 1]
    }

    /// Cubic Hermite curve through the states, with `s` the rescaled
    /// proper time.
    pub fn to_curve(&self) -> Result<HermiteCurve, NonlocalError> {
        if self.states.len() < 2 {
            return Err(NonlocalError::InvalidPath("trajectory has fewer than two states".into()));
        }
        let (t0, span) = (self.states[0].tau, self.last().tau - self.states[0].tau);
        let n = self.states.len() - 1;
        let knots = (0..=n).map(|i| if i == n { 1.0 } else { (self.states[i].tau - t0) / span }).collect();
        let points = self.states.iter().map(|st| st.q.clone()).collect();
        let tangents = self.states.iter().map(|st| st.v.iter().map(|c| c * span).collect()).collect();
        HermiteCurve::new(knots, points, tangents)
    }
}

struct Rhs<'a> {
    field: &'a ScalingField,
    eta: &'a [f64],
    epsilon: f64,
    options: GeodesicOptions,
}

impl Rhs<'_> {
    fn acceleration(&self, q: &[f64], v: &[f64]) -> Result<Vec<f64>, FieldError> {
        let gamma = self.field.gamma(q)?;
        let drag: f64 = match self.options.drag {
            DragContraction::Euclidean => gamma.iter().zip(v).map(|(g, v)| g * v).sum(),
            DragContraction::Minkowski => gamma.iter().zip(v).zip(self.eta).map(|((g, v), e)| e * g * v).sum(),
        };
        let force = match self.options.force {
            ForceConvention::Extremal => self.epsilon,
            ForceConvention::Literal => -1.0,
        };
        Ok(gamma.iter().zip(v).zip(self.eta).map(|((g, v), e)| -drag * v + force * e * g).collect())
    }
}

fn axpy(x: &[f64], a: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(x, y)| x + a * y).collect()
}

/// Classical fourth-order Runge–Kutta integration of the geodesic equation
/// from `start.tau` to `tau_end`. The step is `h` adjusted so that a whole
/// number of steps lands on `tau_end`.
pub fn integrate_geodesic(
    start: &GeodesicState,
    field: &ScalingField,
    tau_end: f64,
    h: f64,
    options: GeodesicOptions,
) -> Result<Trajectory, NonlocalError> {
    let m = field.manifold();
    let d = m.dimension();
    for len in [start.q.len(), start.v.len()] {
        if len != d {
            return Err(FieldError::DimensionMismatch { expected: d, found: len }.into());
        }
    }
    m.check_contains(&start.q)?;
    if start.v.iter().any(|c| !c.is_finite()) {
        return Err(NonlocalError::InvalidStep("initial velocity must be finite".into()));
    }
    let span = tau_end - start.tau;
    if !(h > 0.0 && h.is_finite()) || !(span >= 0.0 && span.is_finite()) {
        return Err(NonlocalError::InvalidStep(format!("need h > 0 and tau_end >= tau, got h = {h}, span = {span}")));
    }
    let n = ((span / h).round() as usize).max(1);
    let step = span / n as f64;

    let eta = m.metric();
    let quad: f64 = start.v.iter().zip(eta).map(|(v, e)| e * v * v).sum();
    let epsilon = if quad > 0.0 {
        1.0
    } else if quad < 0.0 {
        -1.0
    } else {
        0.0
    };
    let rhs = Rhs { field, eta, epsilon, options };

    let mut states = vec![start.clone()];
    let (mut q, mut v) = (start.q.clone(), start.v.clone());
    for k in 1..=n {
        let stepped = (|| -> Result<(Vec<f64>, Vec<f64>), FieldError> {
            let a1 = rhs.acceleration(&q, &v)?;
            let (q2, v2) = (axpy(&q, step / 2.0, &v), axpy(&v, step / 2.0, &a1));
            let a2 = rhs.acceleration(&q2, &v2)?;
            let (q3, v3) = (axpy(&q, step / 2.0, &v2), axpy(&v, step / 2.0, &a2));
            let a3 = rhs.acceleration(&q3, &v3)?;
            let (q4, v4) = (axpy(&q, step, &v3), axpy(&v, step, &a3));
            let a4 = rhs.acceleration(&q4, &v4)?;
            let q_next = (0..d).map(|i| q[i] + step / 6.0 * (v[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])).collect();
            let v_next = (0..d).map(|i| v[i] + step / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i])).collect();
            Ok((q_next, v_next))
        })();
        match stepped {
            Ok((q_next, v_next)) if m.contains(&q_next) => {
                q = q_next;
                v = v_next;
                let tau = if k == n { tau_end } else { start.tau + k as f64 * step };
                states.push(GeodesicState { tau, q: q.clone(), v: v.clone() });
            }
            Ok(_) | Err(FieldError::OutOfBounds { .. }) | Err(FieldError::BoundaryPoint { .. }) => {
                return Ok(Trajectory { states, step, left_domain: true });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Trajectory { states, step, left_domain: false })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariationalOptions {
    pub perturbations: usize,
    pub amplitude: f64,
    /// Sine modes per axis.
    pub modes: usize,
    /// Quadrature steps per length.
    pub steps: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        Self { perturbations: 100, amplitude: 1e-2, modes: 5, steps: 2000, tolerance: 1e-7, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VariationalReport {
    pub reference_length: f64,
    pub perturbed_lengths: Vec<f64>,
    /// Perturbations whose length is at least the reference minus the
    /// tolerance.
    pub not_shorter: usize,
    pub fraction: f64,
    pub min_excess: f64,
}

/// Compares the scaled length of `q` against endpoint-fixed sine-mode
/// perturbations with seeded coefficients uniform in `[-amplitude, amplitude]`.
/// Lengths are referred to `q(0)`.
pub fn variational_check(
    q: &dyn Curve,
    field: &ScalingField,
    options: &VariationalOptions,
) -> Result<VariationalReport, NonlocalError> {
    let x_ref = q.position(0.0);
    let reference_length = scaled_path_length(q, field, &x_ref, options.steps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut perturbed_lengths = Vec::with_capacity(options.perturbations);
    for _ in 0..options.perturbations {
        let coefficients = (0..q.dimension())
            .map(|_| (0..options.modes).map(|_| options.amplitude * rng.random_range(-1.0..=1.0)).collect())
            .collect();
        let p = Perturbed::new(q, coefficients)?;
        perturbed_lengths.push(scaled_path_length(&p, field, &x_ref, options.steps)?);
    }
    let not_shorter = perturbed_lengths.iter().filter(|&&l| l >= reference_length - options.tolerance).count();
    let min_excess = perturbed_lengths.iter().map(|l| l - reference_length).fold(f64::INFINITY, f64::min);
    let fraction = if perturbed_lengths.is_empty() { 1.0 } else { not_shorter as f64 / perturbed_lengths.len() as f64 };
    Ok(VariationalReport { reference_length, perturbed_lengths, not_shorter, fraction, min_excess })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold_field::{GradientMode, Manifold, ScalarFieldSpec, Signature};
    use crate::nonlocal::Path;

    fn field(sig: Signature, theta: ScalarFieldSpec) -> ScalingField {
        let m = Manifold::cube(sig, -2.0, 2.0, 9).unwrap();
        ScalingField::new(m, theta, ScalarFieldSpec::zero(), GradientMode::Analytic).unwrap()
    }

    fn unit(v: &[f64]) -> Vec<f64> {
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.iter().map(|c| c / n).collect()
    }

    #[test]
    fn flat_field_gives_straight_line() {
        let f = field(Signature::Minkowski, ScalarFieldSpec::constant(0.4));
        let v0 = vec![1.0, 0.3, -0.2, 0.1];
        let traj = integrate_geodesic(&GeodesicState::new(vec![0.0; 4], v0.clone()), &f, 1.0, 1e-3, Default::default())
            .unwrap();
        assert_eq!(traj.states.len(), 1001);
        assert!(!traj.left_domain);
        for st in &traj.states {
            for (q, v) in st.q.iter().zip(&v0) {
                assert!((q - v * st.tau).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn leaves_domain_with_partial_trajectory() {
        let f = field(Signature::Euclidean, ScalarFieldSpec::zero());
        let traj =
            integrate_geodesic(&GeodesicState::new(vec![0.0; 3], vec![1.0, 0.0, 0.0]), &f, 5.0, 0.1, Default::default())
                .unwrap();
        assert!(traj.left_domain);
        assert!((traj.last().q[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn unit_speed_is_conserved_for_stationary_curves() {
        let f = field(Signature::Euclidean, ScalarFieldSpec::gaussian(0.8, vec![0.0, 0.2, 0.0], 0.5));
        let start = GeodesicState::new(vec![-1.0, 0.0, 0.0], unit(&[1.0, 0.1, 0.0]));
        let traj = integrate_geodesic(&start, &f, 2.0, 1e-2, Default::default()).unwrap();
        let speed: f64 = traj.last().v.iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!((speed - 1.0).abs() < 1e-8);
    }

    #[test]
    fn conventions_agree_for_spacelike_starts() {
        let f = field(Signature::Minkowski, ScalarFieldSpec::linear(vec![0.2, 0.3, -0.1, 0.4], 0.0));
        let start = GeodesicState::new(vec![0.0; 4], vec![0.1, 0.6, 0.0, 0.8]);
        let run = |force| {
            integrate_geodesic(&start, &f, 1.0, 0.01, GeodesicOptions { force, ..Default::default() }).unwrap()
        };
        assert_eq!(run(ForceConvention::Extremal), run(ForceConvention::Literal));
        let timelike = GeodesicState::new(vec![0.0; 4], vec![1.0, 0.1, 0.0, 0.0]);
        let a = integrate_geodesic(&timelike, &f, 1.0, 0.01, Default::default()).unwrap();
        let b = integrate_geodesic(&timelike, &f, 1.0, 0.01, GeodesicOptions { force: ForceConvention::Literal, ..Default::default() })
            .unwrap();
        assert_ne!(a.last().q, b.last().q);
    }

    #[test]
    fn fourth_order_self_convergence() {
        let f = field(Signature::Euclidean, ScalarFieldSpec::linear(vec![0.5, -0.3, 0.2], 0.0));
        let start = GeodesicState::new(vec![-0.5, 0.0, 0.0], unit(&[1.0, 0.5, 0.0]));
        let end = |h| integrate_geodesic(&start, &f, 1.0, h, Default::default()).unwrap().last().q.clone();
        let (a, b, c) = (end(0.2), end(0.1), end(0.05));
        let dist = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        let ratio = dist(&a, &b) / dist(&b, &c);
        assert!((12.0..20.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn straight_line_wins_without_scaling() {
        let f = field(Signature::Euclidean, ScalarFieldSpec::zero());
        let straight = Path::segment(vec![-1.0, 0.0, 0.0], vec![1.0, 0.5, 0.0]);
        let opts = VariationalOptions { perturbations: 20, steps: 400, seed: 3, ..Default::default() };
        assert_eq!(variational_check(&straight, &f, &opts).unwrap().fraction, 1.0);

        let detour = Path::polyline(vec![vec![-1.0, 0.0, 0.0], vec![0.0, 0.8, 0.0], vec![1.0, 0.5, 0.0]]);
        let opts = VariationalOptions { perturbations: 40, ..opts };
        let report = variational_check(&detour, &f, &opts).unwrap();
        let straight_len = crate::nonlocal::local_path_length(&straight, f.manifold(), 400).unwrap();
        assert!(straight_len < report.reference_length);
        assert!(report.fraction < 1.0, "{report:?}");
    }

    #[test]
    fn geodesic_under_linear_theta_is_stationary() {
        let f = field(Signature::Euclidean, ScalarFieldSpec::linear(vec![0.0, 0.6, 0.0], 0.0));
        let start = GeodesicState::new(vec![-1.0, 0.0, 0.0], unit(&[1.0, 0.0, 0.2]));
        let traj = integrate_geodesic(&start, &f, 2.0, 1e-2, Default::default()).unwrap();
        let curve = traj.to_curve().unwrap();
        let opts = VariationalOptions { perturbations: 30, seed: 11, ..Default::default() };
        let report = variational_check(&curve, &f, &opts).unwrap();
        assert_eq!(report.fraction, 1.0, "{report:?}");
        assert!(report.min_excess > 0.0);
    }
}
