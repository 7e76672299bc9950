use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::gauge::{CovectorField, GaugeConfig, GaugeTransform};
use crate::manifold_field::{Axis, GradientMode, Level, Manifold, ScalarFieldSpec, ScalingField, Signature};
use crate::nonlocal::{CompareMode, DragContraction, ForceConvention, Outcome, Path, WavePacket};
use crate::scaled_arithmetic::{BaseNumber, FactorConvention, NumberKind, ScaledStructure, ScalingFactor};

/// A declarative run description. Unknown keys anywhere are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub manifold: ManifoldBlock,
    #[serde(default)]
    pub fields: FieldsBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeBlock>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub paths: BTreeMap<String, Path>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub packets: BTreeMap<String, PacketBlock>,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Grid bounds per axis plus either a spacing or a node count per axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldBlock {
    pub signature: Signature,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub bounds: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsBlock {
    #[serde(default = "ScalarFieldSpec::zero")]
    pub theta: ScalarFieldSpec,
    #[serde(default = "ScalarFieldSpec::zero")]
    pub phi: ScalarFieldSpec,
    #[serde(default)]
    pub gradient: GradientMode,
}

impl Default for FieldsBlock {
    fn default() -> Self {
        Self { theta: ScalarFieldSpec::zero(), phi: ScalarFieldSpec::zero(), gradient: GradientMode::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeBlock {
    pub g_r: f64,
    pub g_i: f64,
    pub h_i: f64,
    /// Photon field components, one per axis.
    pub b: Vec<ScalarFieldSpec>,
    pub transform: GaugeTransform,
}

/// A Gaussian packet on the spatial axes, at `time` for spacetime grids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketBlock {
    pub center: Vec<f64>,
    pub sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariationalBlock {
    #[serde(default = "defaults::perturbations")]
    pub perturbations: usize,
    #[serde(default = "defaults::amplitude")]
    pub amplitude: f64,
    #[serde(default = "defaults::modes")]
    pub modes: usize,
    #[serde(default = "defaults::variational_steps")]
    pub steps: usize,
    #[serde(default = "defaults::variational_tolerance")]
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeBlock {
    pub location: Vec<f64>,
    pub kind: NumberKind,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Axioms {
        kind: NumberKind,
        t: String,
        s: String,
        #[serde(default = "defaults::samples")]
        samples: usize,
        #[serde(default)]
        convention: FactorConvention,
    },
    Geodesic {
        start: Vec<f64>,
        velocity: Vec<f64>,
        #[serde(default = "defaults::tau_end")]
        tau_end: f64,
        #[serde(default = "defaults::tau_step")]
        step: f64,
        #[serde(default)]
        drag: DragContraction,
        #[serde(default)]
        force: ForceConvention,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variational: Option<VariationalBlock>,
    },
    Pathlen {
        path: String,
        /// Defaults to the path's start point.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference: Option<Vec<f64>>,
        #[serde(default = "defaults::quadrature_steps")]
        steps: usize,
    },
    Wavepacket {
        packet: String,
        reference: Vec<f64>,
        #[serde(default = "defaults::level")]
        level: String,
    },
    GaugeCheck {
        #[serde(default = "defaults::gauge_tolerance")]
        tolerance: f64,
    },
    Compare {
        r: OutcomeBlock,
        t: OutcomeBlock,
        mode: CompareMode,
    },
}

pub(crate) mod defaults {
    pub fn samples() -> usize {
        100
    }
    pub fn tau_end() -> f64 {
        1.0
    }
    pub fn tau_step() -> f64 {
        1e-3
    }
    pub fn quadrature_steps() -> usize {
        1000
    }
    pub fn level() -> String {
        "1".into()
    }
    pub fn gauge_tolerance() -> f64 {
        1e-10
    }
    pub fn perturbations() -> usize {
        100
    }
    pub fn amplitude() -> f64 {
        1e-2
    }
    pub fn modes() -> usize {
        5
    }
    pub fn variational_steps() -> usize {
        2000
    }
    pub fn variational_tolerance() -> f64 {
        1e-7
    }
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Axioms { .. } => "axioms",
            Task::Geodesic { .. } => "geodesic",
            Task::Pathlen { .. } => "pathlen",
            Task::Wavepacket { .. } => "wavepacket",
            Task::GaugeCheck { .. } => "gauge-check",
            Task::Compare { .. } => "compare",
        }
    }

    pub fn uses_seed(&self) -> bool {
        matches!(self, Task::Axioms { .. } | Task::Geodesic { variational: Some(_), .. })
    }
}

/// Parses scenario JSON. Errors carry the line, column and key path.
pub fn parse_scenario(text: &str, file: &str) -> Result<Scenario, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse { file: file.into(), line: inner.line(), column: inner.column(), path, message: inner.to_string() }
    })?;
    de.end().map_err(|e| CliError::Parse {
        file: file.into(),
        line: e.line(),
        column: e.column(),
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(scenario)
}

/// A validated scenario with every object built.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub scenario: Scenario,
    pub manifold: Manifold,
    pub field: ScalingField,
    pub gauge: Option<(GaugeConfig, GaugeTransform)>,
    pub paths: BTreeMap<String, Path>,
    pub packets: BTreeMap<String, WavePacket>,
    pub seed: Option<u64>,
}

fn invalid(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Validation { path: path.into(), message: message.to_string() }
}

impl Scenario {
    /// Builds the manifold, fields, paths and packets, and checks every
    /// task against them. `seed` overrides the scenario's seed.
    pub fn prepare(self, seed: Option<u64>) -> Result<Prepared, CliError> {
        let manifold = self.manifold.build()?;
        let d = manifold.dimension();
        let field = ScalingField::new(
            manifold.clone(),
            self.fields.theta.clone(),
            self.fields.phi.clone(),
            self.fields.gradient,
        )
        .map_err(|e| invalid("fields", e))?;

        let gauge = match &self.gauge {
            None => None,
            Some(g) => {
                let cfg = GaugeConfig::new(g.g_r, g.g_i, g.h_i, CovectorField::new(g.b.clone()));
                cfg.validate(d).map_err(|e| invalid("gauge", e))?;
                for (name, spec) in [("alpha", &g.transform.alpha), ("gamma", &g.transform.gamma)] {
                    spec.validate(d).map_err(|e| invalid(format!("gauge.transform.{name}"), e))?;
                }
                crate::gauge::apply_transform(&field, &cfg, &g.transform).map_err(|e| invalid("gauge.transform", e))?;
                Some((cfg, g.transform.clone()))
            }
        };

        let mut paths = BTreeMap::new();
        for (name, p) in &self.paths {
            let at = format!("paths.{name}");
            let p = p.clone().prepared(d).map_err(|e| invalid(&at, e))?;
            for end in [crate::nonlocal::Curve::position(&p, 0.0), crate::nonlocal::Curve::position(&p, 1.0)] {
                manifold.check_contains(&end).map_err(|e| invalid(&at, e))?;
            }
            paths.insert(name.clone(), p);
        }

        let mut packets = BTreeMap::new();
        for (name, block) in &self.packets {
            let at = format!("packets.{name}");
            packets.insert(name.clone(), block.build(&manifold).map_err(|e| invalid(&at, e))?);
        }

        let seed = seed.or(self.seed);
        for (i, task) in self.tasks.iter().enumerate() {
            let at = format!("tasks[{i}]");
            if task.uses_seed() && seed.is_none() {
                return Err(invalid(at, format!("task `{}` draws random samples and needs a seed", task.name())));
            }
            check_task(task, &manifold, &paths, &packets, gauge.is_some()).map_err(|(key, msg)| {
                invalid(if key.is_empty() { at.clone() } else { format!("{at}.{key}") }, msg)
            })?;
        }

        Ok(Prepared { scenario: self, manifold, field, gauge, paths, packets, seed })
    }
}

impl ManifoldBlock {
    pub fn build(&self) -> Result<Manifold, CliError> {
        let d = self.signature.dimension();
        if let Some(n) = self.dimension {
            if n != d {
                return Err(invalid("manifold.dimension", format!("{} signature has dimension {d}, got {n}", signature_name(self.signature))));
            }
        }
        if self.bounds.len() != d {
            return Err(invalid("manifold.bounds", format!("expected {d} axes, got {}", self.bounds.len())));
        }
        let axes: Result<Vec<Axis>, _> = match (&self.spacing, &self.nodes) {
            (Some(h), None) if h.len() == d => self.bounds.iter().zip(h).map(|(b, h)| Axis::new(b[0], b[1], *h)).collect(),
            (None, Some(n)) if n.len() == d => self.bounds.iter().zip(n).map(|(b, n)| Axis::with_nodes(b[0], b[1], *n)).collect(),
            (Some(_), Some(_)) | (None, None) => {
                return Err(invalid("manifold", "give exactly one of `spacing` and `nodes`"));
            }
            _ => return Err(invalid("manifold", format!("`spacing` or `nodes` needs {d} entries"))),
        };
        let axes = axes.map_err(|e| invalid("manifold", e))?;
        Manifold::new(self.signature, axes).map_err(|e| invalid("manifold", e))
    }
}

fn signature_name(s: Signature) -> &'static str {
    match s {
        Signature::Euclidean => "euclidean",
        Signature::Minkowski => "minkowski",
    }
}

/// The spatial axes of `m` as a Euclidean grid.
pub fn spatial_slice(m: &Manifold) -> Result<Manifold, crate::manifold_field::FieldError> {
    let axes = match m.signature() {
        Signature::Euclidean => m.axes().to_vec(),
        Signature::Minkowski => m.axes()[1..].to_vec(),
    };
    Manifold::new(Signature::Euclidean, axes)
}

impl PacketBlock {
    fn build(&self, m: &Manifold) -> Result<WavePacket, String> {
        let grid = spatial_slice(m).map_err(|e| e.to_string())?;
        let k = self.k.clone().unwrap_or_else(|| vec![0.0; grid.dimension()]);
        let packet = WavePacket::gaussian(grid, &self.center, self.sigma, &k).map_err(|e| e.to_string())?;
        match (m.signature(), self.time) {
            (Signature::Euclidean, None) => Ok(packet),
            (Signature::Minkowski, Some(t)) if m.axes()[0].contains(t) => Ok(packet.at_time(t)),
            (Signature::Minkowski, Some(t)) => Err(format!("time {t} lies outside the grid")),
            (Signature::Minkowski, None) => Err("spacetime packets need a `time`".into()),
            (Signature::Euclidean, Some(_)) => Err("`time` only applies to spacetime grids".into()),
        }
    }
}

fn check_point(m: &Manifold, x: &[f64], key: &str) -> Result<(), (String, String)> {
    m.check_contains(x).map_err(|e| (key.to_string(), e.to_string()))
}

fn check_task(
    task: &Task,
    m: &Manifold,
    paths: &BTreeMap<String, Path>,
    packets: &BTreeMap<String, WavePacket>,
    has_gauge: bool,
) -> Result<(), (String, String)> {
    let err = |key: &str, msg: String| Err((key.to_string(), msg));
    match task {
        Task::Axioms { kind, t, s, samples, convention } => {
            let t: ScalingFactor = t.parse().map_err(|e: crate::scaled_arithmetic::ArithmeticError| ("t".to_string(), e.to_string()))?;
            let s: ScalingFactor = s.parse().map_err(|e: crate::scaled_arithmetic::ArithmeticError| ("s".to_string(), e.to_string()))?;
            ScaledStructure::with_convention(*kind, t, s, *convention).map_err(|e| (String::new(), e.to_string()))?;
            if *samples == 0 {
                return err("samples", "need at least one sample".into());
            }
        }
        Task::Geodesic { start, velocity, tau_end, step, variational, .. } => {
            check_point(m, start, "start")?;
            if velocity.len() != m.dimension() || velocity.iter().any(|v| !v.is_finite()) {
                return err("velocity", format!("need {} finite components", m.dimension()));
            }
            if !(*tau_end > 0.0 && tau_end.is_finite()) {
                return err("tau_end", format!("must be positive, got {tau_end}"));
            }
            if !(*step > 0.0 && step.is_finite()) {
                return err("step", format!("must be positive, got {step}"));
            }
            if let Some(v) = variational {
                if !(v.amplitude > 0.0 && v.amplitude.is_finite()) || v.modes == 0 || v.steps < 2 || v.tolerance.is_nan() || v.tolerance < 0.0 {
                    return err("variational", "need amplitude > 0, modes >= 1, steps >= 2, tolerance >= 0".into());
                }
            }
        }
        Task::Pathlen { path, reference, steps } => {
            if !paths.contains_key(path) {
                return err("path", format!("unknown path `{path}`"));
            }
            if let Some(x) = reference {
                check_point(m, x, "reference")?;
            }
            if *steps < 2 {
                return err("steps", format!("need at least 2, got {steps}"));
            }
        }
        Task::Wavepacket { packet, reference, level } => {
            if !packets.contains_key(packet) {
                return err("packet", format!("unknown packet `{packet}`"));
            }
            check_point(m, reference, "reference")?;
            level.parse::<Level>().map_err(|e| ("level".to_string(), e.to_string()))?;
        }
        Task::GaugeCheck { tolerance } => {
            if !has_gauge {
                return err("", "gauge-check needs a `gauge` block".into());
            }
            if tolerance.is_nan() || *tolerance < 0.0 {
                return err("tolerance", format!("must be nonnegative, got {tolerance}"));
            }
        }
        Task::Compare { r, t, .. } => {
            for (key, o) in [("r", r), ("t", t)] {
                o.build(m).map_err(|msg| (key.to_string(), msg))?;
            }
        }
    }
    Ok(())
}

impl OutcomeBlock {
    pub fn build(&self, m: &Manifold) -> Result<Outcome, String> {
        m.check_contains(&self.location).map_err(|e| e.to_string())?;
        let number = BaseNumber::parse(self.kind, &self.value).map_err(|e| e.to_string())?;
        Ok(Outcome::new(self.location.clone(), number))
    }
}
