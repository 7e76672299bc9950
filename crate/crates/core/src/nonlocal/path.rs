use std::convert::Infallible;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::NonlocalError;
use crate::manifold_field::{FieldError, Manifold, ScalingField};

/// A differentiable curve `q(s)`, `s ∈ [0, 1]`.
pub trait Curve {
    fn dimension(&self) -> usize;

    fn position(&self, s: f64) -> Vec<f64>;

    /// `dq/ds`.
    fn tangent(&self, s: f64) -> Vec<f64>;

    /// Parameters where the curve may fail to be smooth, including 0 and 1.
    /// Quadrature never straddles one.
    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0, 1.0]
    }

    /// Tangent as seen from inside piece `piece` (between consecutive
    /// breakpoints), which matters only at the breakpoints themselves.
    fn tangent_on(&self, s: f64, piece: usize) -> Vec<f64> {
        let _ = piece;
        self.tangent(s)
    }
}

/// Serializable path families. Every family uses a uniform parameter:
/// vertices and spline knots sit at `s = i/(n-1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Path {
    Segment { start: Vec<f64>, end: Vec<f64> },
    Polyline { points: Vec<Vec<f64>> },
    /// Natural cubic spline through the points.
    Spline {
        points: Vec<Vec<f64>>,
        #[serde(skip)]
        moments: Vec<Vec<f64>>,
    },
}

impl Path {
    pub fn segment(start: Vec<f64>, end: Vec<f64>) -> Self {
        Path::Segment { start, end }
    }

    pub fn polyline(points: Vec<Vec<f64>>) -> Self {
        Path::Polyline { points }
    }

    /// Natural cubic spline through uniformly parameterized samples.
    pub fn spline(points: Vec<Vec<f64>>) -> Self {
        let moments = natural_moments(&points);
        Path::Spline { points, moments }
    }

    /// Fills in derived data after deserialization and checks the shape.
    pub fn prepared(self, dimension: usize) -> Result<Self, NonlocalError> {
        let path = match self {
            Path::Spline { points, .. } => Path::spline(points),
            other => other,
        };
        path.validate(dimension)?;
        Ok(path)
    }

    pub fn validate(&self, dimension: usize) -> Result<(), NonlocalError> {
        let points: Vec<&Vec<f64>> = match self {
            Path::Segment { start, end } => vec![start, end],
            Path::Polyline { points } | Path::Spline { points, .. } => points.iter().collect(),
        };
        if points.len() < 2 {
            return Err(NonlocalError::InvalidPath("a path needs at least two points".into()));
        }
        for p in points {
            if p.len() != dimension {
                return Err(FieldError::DimensionMismatch { expected: dimension, found: p.len() }.into());
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(NonlocalError::InvalidPath("path coordinates must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Vec<f64> {
        self.position(0.0)
    }

    pub fn end(&self) -> Vec<f64> {
        self.position(1.0)
    }

    fn points(&self) -> &[Vec<f64>] {
        match self {
            Path::Segment { .. } => &[],
            Path::Polyline { points } | Path::Spline { points, .. } => points,
        }
    }
}

/// Interval `i` of `n - 1` uniform intervals containing `s`, and the local
/// coordinate in it.
fn uniform_cell(s: f64, n: usize) -> (usize, f64) {
    let cells = (n - 1) as f64;
    let i = ((s * cells).floor().max(0.0) as usize).min(n - 2);
    (i, s * cells - i as f64)
}

fn natural_moments(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points.len();
    if n < 3 {
        return vec![vec![0.0; points.first().map_or(0, Vec::len)]; n];
    }
    let d = points[0].len();
    let h = 1.0 / (n - 1) as f64;
    let mut moments = vec![vec![0.0; d]; n];
    for axis in 0..d {
        // Thomas algorithm on M[i-1] + 4M[i] + M[i+1] = rhs, M[0] = M[n-1] = 0.
        let m = n - 2;
        let mut c = vec![0.0; m];
        let mut r = vec![0.0; m];
        for k in 0..m {
            let i = k + 1;
            let rhs = 6.0 / (h * h) * (points[i + 1][axis] - 2.0 * points[i][axis] + points[i - 1][axis]);
            let (prev_c, prev_r) = if k == 0 { (0.0, 0.0) } else { (c[k - 1], r[k - 1]) };
            let denom = 4.0 - prev_c;
            c[k] = 1.0 / denom;
            r[k] = (rhs - prev_r) / denom;
        }
        for k in (0..m).rev() {
            let next = if k + 1 < m { moments[k + 2][axis] } else { 0.0 };
            moments[k + 1][axis] = r[k] - c[k] * next;
        }
    }
    moments
}

impl Curve for Path {
    fn dimension(&self) -> usize {
        match self {
            Path::Segment { start, .. } => start.len(),
            _ => self.points().first().map_or(0, Vec::len),
        }
    }

    fn position(&self, s: f64) -> Vec<f64> {
        match self {
            Path::Segment { start, end } => start.iter().zip(end).map(|(a, b)| a + s * (b - a)).collect(),
            Path::Polyline { points } => {
                let (i, t) = uniform_cell(s, points.len());
                points[i].iter().zip(&points[i + 1]).map(|(a, b)| a + t * (b - a)).collect()
            }
            Path::Spline { points, moments } => {
                let fresh;
                let moments = if moments.len() == points.len() {
                    moments
                } else {
                    fresh = natural_moments(points);
                    &fresh
                };
                let n = points.len();
                let h = 1.0 / (n - 1) as f64;
                let (i, t) = uniform_cell(s, n);
                let u = 1.0 - t;
                (0..points[0].len())
                    .map(|k| {
                        u * points[i][k]
                            + t * points[i + 1][k]
                            + h * h / 6.0 * ((u * u * u - u) * moments[i][k] + (t * t * t - t) * moments[i + 1][k])
                    })
                    .collect()
            }
        }
    }

    fn tangent(&self, s: f64) -> Vec<f64> {
        let piece = match self {
            Path::Polyline { points } => uniform_cell(s, points.len()).0,
            _ => 0,
        };
        self.tangent_on(s, piece)
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Path::Polyline { points } => {
                let n = points.len() - 1;
                (0..=n).map(|i| i as f64 / n as f64).collect()
            }
            _ => vec![0.0, 1.0],
        }
    }

    fn tangent_on(&self, s: f64, piece: usize) -> Vec<f64> {
        match self {
            Path::Segment { start, end } => start.iter().zip(end).map(|(a, b)| b - a).collect(),
            Path::Polyline { points } => {
                let cells = (points.len() - 1) as f64;
                let i = piece.min(points.len() - 2);
                points[i].iter().zip(&points[i + 1]).map(|(a, b)| (b - a) * cells).collect()
            }
            Path::Spline { points, moments } => {
                let fresh;
                let moments = if moments.len() == points.len() {
                    moments
                } else {
                    fresh = natural_moments(points);
                    &fresh
                };
                let n = points.len();
                let h = 1.0 / (n - 1) as f64;
                let (i, t) = uniform_cell(s, n);
                let u = 1.0 - t;
                (0..points[0].len())
                    .map(|k| {
                        (points[i + 1][k] - points[i][k]) / h
                            + h / 6.0 * ((1.0 - 3.0 * u * u) * moments[i][k] + (3.0 * t * t - 1.0) * moments[i + 1][k])
                    })
                    .collect()
            }
        }
    }
}

/// Piecewise cubic Hermite interpolant through positions and tangents at
/// increasing parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCurve {
    knots: Vec<f64>,
    points: Vec<Vec<f64>>,
    tangents: Vec<Vec<f64>>,
}

impl HermiteCurve {
    /// `knots` must start at 0, end at 1 and increase strictly; `tangents`
    /// are `dq/ds`.
    pub fn new(knots: Vec<f64>, points: Vec<Vec<f64>>, tangents: Vec<Vec<f64>>) -> Result<Self, NonlocalError> {
        if knots.len() < 2 || knots.len() != points.len() || knots.len() != tangents.len() {
            return Err(NonlocalError::InvalidPath("knots, points and tangents must match, at least two".into()));
        }
        if knots[0] != 0.0 || knots[knots.len() - 1] != 1.0 || knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NonlocalError::InvalidPath("knots must increase strictly from 0 to 1".into()));
        }
        let d = points[0].len();
        if points.iter().chain(&tangents).any(|p| p.len() != d) {
            return Err(FieldError::DimensionMismatch { expected: d, found: 0 }.into());
        }
        Ok(Self { knots, points, tangents })
    }

    fn cell(&self, s: f64) -> (usize, f64, f64) {
        let i = self.knots.partition_point(|&k| k <= s).clamp(1, self.knots.len() - 1) - 1;
        let h = self.knots[i + 1] - self.knots[i];
        (i, h, (s - self.knots[i]) / h)
    }

    fn blend(&self, i: usize, h: f64, w: [f64; 4]) -> Vec<f64> {
        (0..self.points[0].len())
            .map(|k| {
                w[0] * self.points[i][k]
                    + w[1] * h * self.tangents[i][k]
                    + w[2] * self.points[i + 1][k]
                    + w[3] * h * self.tangents[i + 1][k]
            })
            .collect()
    }
}

impl Curve for HermiteCurve {
    fn dimension(&self) -> usize {
        self.points[0].len()
    }

    fn position(&self, s: f64) -> Vec<f64> {
        let (i, h, t) = self.cell(s);
        let (t2, t3) = (t * t, t * t * t);
        self.blend(i, h, [2.0 * t3 - 3.0 * t2 + 1.0, t3 - 2.0 * t2 + t, -2.0 * t3 + 3.0 * t2, t3 - t2])
    }

    fn tangent(&self, s: f64) -> Vec<f64> {
        let (i, h, t) = self.cell(s);
        let t2 = t * t;
        let w = [6.0 * t2 - 6.0 * t, 3.0 * t2 - 4.0 * t + 1.0, -6.0 * t2 + 6.0 * t, 3.0 * t2 - 2.0 * t];
        self.blend(i, h, w).into_iter().map(|v| v / h).collect()
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.knots.clone()
    }
}

/// `base(s) + Σ_k c[μ][k] sin((k+1)πs)` on every axis `μ`; the endpoints
/// stay fixed.
pub struct Perturbed<'a> {
    base: &'a dyn Curve,
    coefficients: Vec<Vec<f64>>,
}

impl<'a> Perturbed<'a> {
    pub fn new(base: &'a dyn Curve, coefficients: Vec<Vec<f64>>) -> Result<Self, NonlocalError> {
        if coefficients.len() != base.dimension() {
            return Err(FieldError::DimensionMismatch { expected: base.dimension(), found: coefficients.len() }.into());
        }
        Ok(Self { base, coefficients })
    }

    fn offset(&self, s: f64, derivative: bool) -> impl Iterator<Item = f64> + '_ {
        self.coefficients.iter().map(move |modes| {
            modes
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let w = (k + 1) as f64 * PI;
                    if derivative {
                        c * w * (w * s).cos()
                    } else {
                        c * (w * s).sin()
                    }
                })
                .sum::<f64>()
        })
    }
}

impl Curve for Perturbed<'_> {
    fn dimension(&self) -> usize {
        self.base.dimension()
    }

    fn position(&self, s: f64) -> Vec<f64> {
        self.base.position(s).into_iter().zip(self.offset(s, false)).map(|(a, b)| a + b).collect()
    }

    fn tangent(&self, s: f64) -> Vec<f64> {
        self.base.tangent(s).into_iter().zip(self.offset(s, true)).map(|(a, b)| a + b).collect()
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.base.breakpoints()
    }

    fn tangent_on(&self, s: f64, piece: usize) -> Vec<f64> {
        self.base.tangent_on(s, piece).into_iter().zip(self.offset(s, true)).map(|(a, b)| a + b).collect()
    }
}

/// Composite Simpson rule with `n` intervals; odd `n` is rounded up.
pub fn simpson(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    match try_simpson(|x| Ok::<_, Infallible>(f(x)), a, b, n) {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

fn try_simpson<E>(mut f: impl FnMut(f64) -> Result<f64, E>, a: f64, b: f64, n: usize) -> Result<f64, E> {
    let n = (n.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a)? + f(b)?;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + k as f64 * h)?;
    }
    Ok(sum * h / 3.0)
}

/// `∫ weight(q(s)) |η_μμ q̇^μ q̇^μ|^{1/2} ds`, split at the curve's
/// breakpoints. `steps` is spread over the pieces in proportion to their
/// parameter length.
fn weighted_length(
    q: &dyn Curve,
    m: &Manifold,
    steps: usize,
    mut weight: impl FnMut(&[f64]) -> Result<f64, FieldError>,
) -> Result<f64, NonlocalError> {
    if steps < 2 {
        return Err(NonlocalError::TooFewSteps(steps));
    }
    if q.dimension() != m.dimension() {
        return Err(FieldError::DimensionMismatch { expected: m.dimension(), found: q.dimension() }.into());
    }
    let eta = m.metric();
    let mut moving = false;
    let mut total = 0.0;
    let breaks = q.breakpoints();
    for (piece, w) in breaks.windows(2).enumerate() {
        let n = ((steps as f64 * (w[1] - w[0])).ceil() as usize).max(2);
        total += try_simpson(
            |s| {
                let x = q.position(s);
                m.check_contains(&x)?;
                let v = q.tangent_on(s, piece);
                moving |= v.iter().any(|c| *c != 0.0);
                let quad: f64 = v.iter().zip(eta).map(|(c, e)| e * c * c).sum();
                Ok::<_, FieldError>(weight(&x)? * quad.abs().sqrt())
            },
            w[0],
            w[1],
            n,
        )?;
    }
    if !moving {
        return Err(NonlocalError::DegenerateParameterization);
    }
    Ok(total)
}

/// Length of `q` with no scaling: composite Simpson quadrature of
/// `|η q̇ q̇|^{1/2}`.
pub fn local_path_length(q: &dyn Curve, m: &Manifold, steps: usize) -> Result<f64, NonlocalError> {
    weighted_length(q, m, steps, |_| Ok(1.0))
}

/// Length of `q` with every line element carried to `x_ref`: the
/// integrand is weighted by `exp(θ(q(s)) - θ(x_ref))`.
pub fn scaled_path_length(q: &dyn Curve, field: &ScalingField, x_ref: &[f64], steps: usize) -> Result<f64, NonlocalError> {
    let theta_ref = field.theta(x_ref)?;
    weighted_length(q, field.manifold(), steps, |x| Ok((field.theta(x)? - theta_ref).exp()))
}

/// Re-expresses a length referred to `from` as one referred to `to`.
pub fn change_reference(length: f64, field: &ScalingField, from: &[f64], to: &[f64]) -> Result<f64, NonlocalError> {
    Ok(length * (field.theta(from)? - field.theta(to)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold_field::{GradientMode, ScalarFieldSpec, Signature};
    use std::f64::consts::E;

    fn spacetime() -> Manifold {
        Manifold::cube(Signature::Minkowski, -2.0, 2.0, 5).unwrap()
    }

    fn space() -> Manifold {
        Manifold::cube(Signature::Euclidean, -2.0, 2.0, 5).unwrap()
    }

    fn theta_field(m: Manifold, theta: ScalarFieldSpec) -> ScalingField {
        ScalingField::new(m, theta, ScalarFieldSpec::zero(), GradientMode::Analytic).unwrap()
    }

    struct QuarterCircle;

    impl Curve for QuarterCircle {
        fn dimension(&self) -> usize {
            4
        }
        fn position(&self, s: f64) -> Vec<f64> {
            let a = s * PI / 2.0;
            vec![0.0, a.cos(), a.sin(), 0.0]
        }
        fn tangent(&self, s: f64) -> Vec<f64> {
            let a = s * PI / 2.0;
            vec![0.0, -a.sin() * PI / 2.0, a.cos() * PI / 2.0, 0.0]
        }
    }

    #[test]
    fn unit_segments_in_spacetime() {
        let m = spacetime();
        let spatial = Path::segment(vec![0.0; 4], vec![0.0, 1.0, 0.0, 0.0]);
        let timelike = Path::segment(vec![0.0; 4], vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(local_path_length(&spatial, &m, 2).unwrap(), 1.0);
        assert_eq!(local_path_length(&timelike, &m, 2).unwrap(), 1.0);
        let null = Path::segment(vec![0.0; 4], vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(local_path_length(&null, &m, 10).unwrap(), 0.0);
    }

    #[test]
    fn quarter_circle_arc_length() {
        let l = local_path_length(&QuarterCircle, &spacetime(), 200).unwrap();
        assert!((l - PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn constant_theta_matches_local_exactly() {
        let m = space();
        let f = theta_field(m.clone(), ScalarFieldSpec::constant(0.9));
        let q = Path::spline(vec![vec![0.0, 0.0, 0.0], vec![0.5, 0.3, -0.2], vec![1.0, 0.1, 0.4], vec![1.2, -0.5, 0.0]]);
        let x_ref = [0.3, 0.2, 0.1];
        assert_eq!(scaled_path_length(&q, &f, &x_ref, 100).unwrap(), local_path_length(&q, &m, 100).unwrap());
    }

    #[test]
    fn exponential_weight_closed_form() {
        let f = theta_field(spacetime(), ScalarFieldSpec::linear(vec![0.0, 1.0, 0.0, 0.0], 0.0));
        let q = Path::segment(vec![0.0; 4], vec![0.0, 1.0, 0.0, 0.0]);
        let l = scaled_path_length(&q, &f, &[0.0; 4], 1000).unwrap();
        assert!((l - (E - 1.0)).abs() < 1e-8);

        let z = [0.0, 0.0, 1.5, 0.0];
        let moved = change_reference(l, &f, &[0.0; 4], &z).unwrap();
        assert_eq!(moved, l);
        let z = [0.0, 1.0, 0.0, 0.0];
        let direct = scaled_path_length(&q, &f, &z, 1000).unwrap();
        assert!((change_reference(l, &f, &[0.0; 4], &z).unwrap() - direct).abs() < 1e-14);
        assert!((change_reference(l, &f, &[0.0; 4], &z).unwrap() - l / E).abs() < 1e-14);
    }

    #[test]
    fn reference_changes_compose() {
        let f = theta_field(space(), ScalarFieldSpec::gaussian(1.3, vec![0.2, -0.1, 0.0], 0.7));
        let (a, b, c) = ([0.1, 0.2, 0.3], [-1.0, 0.5, 0.0], [1.5, -1.5, 0.7]);
        let two_hops = change_reference(change_reference(2.0, &f, &a, &b).unwrap(), &f, &b, &c).unwrap();
        let direct = change_reference(2.0, &f, &a, &c).unwrap();
        assert!((two_hops - direct).abs() < 1e-12);
        assert_eq!(change_reference(2.0, &f, &a, &a).unwrap(), 2.0);
    }

    #[test]
    fn polyline_corners_are_exact() {
        let q = Path::polyline(vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0]]);
        assert!((local_path_length(&q, &space(), 2).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(q.position(0.75), vec![1.0, 0.5, 0.0]);
    }

    #[test]
    fn spline_interpolates_and_reproduces_lines() {
        let pts = vec![vec![0.0, 0.0, 0.0], vec![0.5, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![1.5, -0.5, 0.0]];
        let q = Path::spline(pts.clone());
        for (i, p) in pts.iter().enumerate() {
            let x = q.position(i as f64 / 3.0);
            assert!(x.iter().zip(p).all(|(a, b)| (a - b).abs() < 1e-14));
        }
        let line = Path::spline((0..5).map(|i| vec![i as f64 * 0.25, -(i as f64) * 0.5, 0.0]).collect());
        let t = line.tangent(0.37);
        assert!((t[0] - 1.0).abs() < 1e-13 && (t[1] + 2.0).abs() < 1e-13);
    }

    #[test]
    fn spline_tangent_matches_finite_difference() {
        let q = Path::spline(vec![vec![0.0, 0.0, 0.0], vec![0.5, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![1.5, -0.5, 0.0]]);
        for s in [0.1, 0.4, 0.8] {
            let h = 1e-6;
            let (a, b) = (q.position(s + h), q.position(s - h));
            let t = q.tangent(s);
            for k in 0..3 {
                assert!(((a[k] - b[k]) / (2.0 * h) - t[k]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn hermite_reproduces_cubic() {
        let cubic = |s: f64| vec![s * s * s, 1.0 - s, 2.0 * s * s];
        let d = |s: f64| vec![3.0 * s * s, -1.0, 4.0 * s];
        let knots = vec![0.0, 0.3, 1.0];
        let h = HermiteCurve::new(knots.clone(), knots.iter().map(|&s| cubic(s)).collect(), knots.iter().map(|&s| d(s)).collect())
            .unwrap();
        for s in [0.0, 0.1, 0.5, 0.99, 1.0] {
            assert!(h.position(s).iter().zip(cubic(s)).all(|(a, b)| (a - b).abs() < 1e-14));
            assert!(h.tangent(s).iter().zip(d(s)).all(|(a, b)| (a - b).abs() < 1e-13));
        }
    }

    #[test]
    fn perturbation_fixes_endpoints() {
        let base = Path::segment(vec![0.0; 3], vec![1.0, 0.0, 0.0]);
        let p = Perturbed::new(&base, vec![vec![0.1, 0.2], vec![-0.3, 0.0], vec![0.0, 0.05]]).unwrap();
        for s in [0.0, 1.0] {
            assert!(p.position(s).iter().zip(base.position(s)).all(|(a, b)| (a - b).abs() < 1e-15));
        }
        assert!(local_path_length(&p, &space(), 400).unwrap() > 1.0);
    }

    #[test]
    fn degenerate_and_too_few_steps() {
        let m = space();
        let still = Path::segment(vec![0.5; 3], vec![0.5; 3]);
        assert_eq!(local_path_length(&still, &m, 10), Err(NonlocalError::DegenerateParameterization));
        let q = Path::segment(vec![0.0; 3], vec![1.0; 3]);
        assert_eq!(local_path_length(&q, &m, 1), Err(NonlocalError::TooFewSteps(1)));
        let outside = Path::segment(vec![0.0; 3], vec![3.0, 0.0, 0.0]);
        assert!(matches!(local_path_length(&outside, &m, 10), Err(NonlocalError::Field(FieldError::OutOfBounds { .. }))));
    }

    #[test]
    fn simpson_is_fourth_order() {
        let exact = E - 1.0;
        let err = |n| (simpson(f64::exp, 0.0, 1.0, n) - exact).abs();
        let ratio = err(8) / err(16);
        assert!((14.0..18.0).contains(&ratio), "{ratio}");
        assert_eq!(simpson(|x| x * x * x, 0.0, 2.0, 3), 4.0);
    }

    #[test]
    fn path_json_round_trip() {
        let text = r#"{"kind": "spline", "points": [[0, 0, 0], [1, 1, 0], [2, 0, 0]]}"#;
        let p: Path = serde_json::from_str(text).unwrap();
        let p = p.prepared(3).unwrap();
        assert_eq!(p, Path::spline(vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 0.0], vec![2.0, 0.0, 0.0]]));
        assert!(serde_json::from_str::<Path>(r#"{"kind": "segment", "start": [0], "end": [1], "x": 1}"#).is_err());
    }
}
