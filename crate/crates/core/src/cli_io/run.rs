use std::fs;
use std::path::{Path as FsPath, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use super::emit::{emit_csv, Cell, Records};
use super::scenario::{parse_scenario, Prepared, Task};
use super::CliError;
use crate::gauge::{apply_transform, transformed_residuals};
use crate::manifold_field::{Level, Manifold};
use crate::nonlocal::{
    compare_outcomes, integrate_geodesic, local_path_length, scaled_path_length, scale_wave_packet, variational_check,
    Curve, GeodesicOptions, GeodesicState, VariationalOptions,
};
use crate::scaled_arithmetic::{axiom_suite, AxiomReport, FactorConvention, NumberKind, ScaledStructure, ScalingFactor};

/// Output directory used when neither the caller nor the scenario names one.
pub const DEFAULT_OUTPUT_DIR: &str = "scalefield-out";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Takes precedence over the scenario's `output`.
    pub out: Option<PathBuf>,
    /// Takes precedence over the scenario's `seed`.
    pub seed: Option<u64>,
    pub verbose: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskStatus {
    Ok,
    Failed,
    Error,
}

impl std::fmt::Display for TaskStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TaskStatus::Ok => "ok",
            TaskStatus::Failed => "failed",
            TaskStatus::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskSummary {
    pub index: usize,
    pub task: &'static str,
    pub csv: String,
    pub status: TaskStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub parameters: Value,
    pub results: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub seed: Option<u64>,
    pub status: TaskStatus,
    pub setup: Value,
    pub tasks: Vec<TaskSummary>,
}

impl RunSummary {
    pub fn succeeded(&self) -> bool {
        self.status == TaskStatus::Ok
    }
}

/// Reads, validates and prepares a scenario file.
pub fn load_scenario(path: &FsPath, seed: Option<u64>) -> Result<Prepared, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&text, &path.display().to_string())?.prepare(seed)
}

/// Output directory: the explicit one, else the scenario's `output`
/// resolved against the scenario file's directory, else
/// [`DEFAULT_OUTPUT_DIR`].
pub fn output_dir(scenario_file: &FsPath, prepared: &Prepared, explicit: Option<&FsPath>) -> PathBuf {
    match (explicit, &prepared.scenario.output) {
        (Some(dir), _) => dir.to_path_buf(),
        (None, Some(dir)) if dir.is_relative() => {
            scenario_file.parent().unwrap_or_else(|| FsPath::new(".")).join(dir)
        }
        (None, Some(dir)) => dir.clone(),
        (None, None) => PathBuf::from(DEFAULT_OUTPUT_DIR),
    }
}

/// Runs a scenario file. Returns the summary even when tasks fail; only
/// parse, validation and I/O problems are errors.
pub fn run_scenario(path: &FsPath, options: &RunOptions) -> Result<RunSummary, CliError> {
    let prepared = load_scenario(path, options.seed)?;
    let out = output_dir(path, &prepared, options.out.as_deref());
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    run_prepared(&prepared, &name, &out, options.verbose)
}

/// Executes every task in order, writing `NN_task.csv` files and
/// `summary.json` into `out`.
pub fn run_prepared(prepared: &Prepared, name: &str, out: &FsPath, verbose: bool) -> Result<RunSummary, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let mut tasks = Vec::new();
    for (i, task) in prepared.scenario.tasks.iter().enumerate() {
        let csv = format!("{:02}_{}.csv", i + 1, task.name().replace('-', "_"));
        if verbose {
            eprintln!("[{}/{}] {} -> {}", i + 1, prepared.scenario.tasks.len(), task.name(), csv);
        }
        let (records, outcome) = match execute(task, prepared) {
            Ok(done) => (done.records, Ok((done.results, done.failure))),
            Err(e) => (Records::new(["error"]), Err(e)),
        };
        emit_csv(&records, &out.join(&csv))?;
        let (status, message, results) = match outcome {
            Ok((results, None)) => (TaskStatus::Ok, None, results),
            Ok((results, Some(why))) => (TaskStatus::Failed, Some(why), results),
            Err(e) => (TaskStatus::Error, Some(e), Value::Null),
        };
        if verbose {
            eprintln!("      {}{}", status, message.as_deref().map(|m| format!(": {m}")).unwrap_or_default());
        }
        let parameters = serde_json::to_value(task).expect("task parameters serialize");
        tasks.push(TaskSummary { index: i + 1, task: task.name(), csv, status, message, parameters, results });
    }
    let status = if tasks.iter().all(|t| t.status == TaskStatus::Ok) { TaskStatus::Ok } else { TaskStatus::Failed };
    let s = &prepared.scenario;
    let setup = json!({
        "manifold": {
            "signature": s.manifold.signature,
            "lower": prepared.manifold.axes().iter().map(|a| a.lower).collect::<Vec<_>>(),
            "upper": prepared.manifold.axes().iter().map(|a| a.upper).collect::<Vec<_>>(),
            "spacing": prepared.manifold.axes().iter().map(|a| a.spacing).collect::<Vec<_>>(),
            "nodes": prepared.manifold.shape(),
        },
        "fields": s.fields,
        "gauge": s.gauge,
        "paths": s.paths,
        "packets": s.packets,
    });
    let summary = RunSummary { scenario: name.into(), seed: prepared.seed, status, setup, tasks };
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    let target = out.join("summary.json");
    fs::write(&target, text).map_err(|e| CliError::io(&target, e))?;
    Ok(summary)
}

struct Done {
    records: Records,
    results: Value,
    failure: Option<String>,
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn axis_names(prefix: &str, d: usize) -> Vec<String> {
    (0..d).map(|i| format!("{prefix}{i}")).collect()
}

/// Runs the axiom suite for one `(t, s)` pair.
pub fn run_axioms(
    kind: NumberKind,
    t: &str,
    s: &str,
    samples: usize,
    seed: u64,
    convention: FactorConvention,
) -> Result<AxiomReport, CliError> {
    let bad = |key: &str, e: &dyn std::fmt::Display| CliError::Validation { path: key.into(), message: e.to_string() };
    let t: ScalingFactor = t.parse().map_err(|e| bad("t", &e))?;
    let s: ScalingFactor = s.parse().map_err(|e| bad("s", &e))?;
    let structure = ScaledStructure::with_convention(kind, t, s, convention).map_err(|e| bad("kind", &e))?;
    Ok(axiom_suite(&structure, samples, seed))
}

pub fn axiom_records(report: &AxiomReport) -> Records {
    let mut records = Records::new(["axiom", "checked", "passed", "counterexample"]);
    for o in &report.outcomes {
        records.push(vec![
            o.axiom.name().into(),
            o.checked.into(),
            o.passed().into(),
            o.counterexample.clone().unwrap_or_default().into(),
        ]);
    }
    records
}

fn execute(task: &Task, p: &Prepared) -> Result<Done, String> {
    let m: &Manifold = &p.manifold;
    let d = m.dimension();
    let seed = p.seed.unwrap_or(0);
    match task {
        Task::Axioms { kind, t, s, samples, convention } => {
            let report = run_axioms(*kind, t, s, *samples, seed, *convention).map_err(|e| e.to_string())?;
            let failed: Vec<&str> = report.failures().map(|o| o.axiom.name()).collect();
            let results = json!({
                "all_passed": report.all_passed(),
                "checks": report.outcomes.iter().map(|o| o.checked).sum::<usize>(),
                "failed_axioms": failed,
            });
            let failure = (!failed.is_empty()).then(|| format!("axioms failed: {}", failed.join(", ")));
            Ok(Done { records: axiom_records(&report), results, failure })
        }
        Task::Geodesic { start, velocity, tau_end, step, drag, force, variational } => {
            let options = GeodesicOptions { drag: *drag, force: *force };
            let state = GeodesicState::new(start.clone(), velocity.clone());
            let traj = integrate_geodesic(&state, &p.field, *tau_end, *step, options).map_err(|e| e.to_string())?;
            let mut records = Records::new(
                std::iter::once("tau".to_string()).chain(axis_names("q", d)).chain(axis_names("v", d)),
            );
            for st in &traj.states {
                let row = std::iter::once(st.tau).chain(st.q.iter().copied()).chain(st.v.iter().copied());
                records.push(row.map(Cell::from).collect());
            }
            let last = traj.last();
            let mut results = json!({
                "steps": traj.states.len() - 1,
                "step": traj.step,
                "left_domain": traj.left_domain,
                "end_tau": last.tau,
                "end_position": last.q,
                "end_velocity": last.v,
            });
            let mut failure = traj.left_domain.then(|| format!("trajectory left the grid at tau = {}", last.tau));
            if let (Some(v), false) = (variational, traj.left_domain) {
                let curve = traj.to_curve().map_err(|e| e.to_string())?;
                let opts = VariationalOptions {
                    perturbations: v.perturbations,
                    amplitude: v.amplitude,
                    modes: v.modes,
                    steps: v.steps,
                    tolerance: v.tolerance,
                    seed,
                };
                let report = variational_check(&curve, &p.field, &opts).map_err(|e| e.to_string())?;
                if report.fraction < 1.0 {
                    failure = Some(format!(
                        "{} of {} perturbations are shorter than the trajectory",
                        v.perturbations - report.not_shorter,
                        v.perturbations
                    ));
                }
                results["variational"] = json!({
                    "reference_length": report.reference_length,
                    "fraction": report.fraction,
                    "min_excess": report.min_excess,
                    "perturbations": v.perturbations,
                });
            }
            Ok(Done { records, results, failure })
        }
        Task::Pathlen { path, reference, steps } => {
            let q = &p.paths[path];
            let reference = reference.clone().unwrap_or_else(|| q.position(0.0));
            let local = local_path_length(q, m, *steps).map_err(|e| e.to_string())?;
            let scaled = scaled_path_length(q, &p.field, &reference, *steps).map_err(|e| e.to_string())?;
            let mut records =
                Records::new(["path", "steps", "local_length", "scaled_length"].map(String::from).into_iter().chain(axis_names("ref", d)));
            records.push(
                [Cell::from(path.as_str()), Cell::from(*steps), Cell::from(local), Cell::from(scaled)]
                    .into_iter()
                    .chain(reference.iter().map(|x| Cell::from(*x)))
                    .collect(),
            );
            let results = json!({ "local_length": local, "scaled_length": scaled, "reference": reference });
            Ok(Done { records, results, failure: None })
        }
        Task::Wavepacket { packet, reference, level } => {
            let psi = &p.packets[packet];
            let level: Level = level.parse().map_err(|e: crate::manifold_field::FieldError| e.to_string())?;
            let scaled = scale_wave_packet(psi, &p.field, reference, &level).map_err(|e| e.to_string())?;
            let grid = scaled.grid();
            let mut records =
                Records::new(axis_names("w", grid.dimension()).into_iter().chain(["re".to_string(), "im".to_string()]));
            for (index, a) in grid.indices().zip(scaled.amplitudes()) {
                records.push(grid.point(&index).into_iter().chain([a.re, a.im]).map(Cell::from).collect());
            }
            let results = json!({
                "nodes": grid.node_count(),
                "norm_sqr": psi.norm_sqr(),
                "scaled_norm_sqr": scaled.norm_sqr(),
            });
            Ok(Done { records, results, failure: None })
        }
        Task::GaugeCheck { tolerance } => {
            let (cfg, transform) = p.gauge.as_ref().ok_or("no gauge block")?;
            let (field_t, cfg_t) = apply_transform(&p.field, cfg, transform).map_err(|e| e.to_string())?;
            let mut records =
                Records::new(axis_names("x", d).into_iter().chain(["mu".to_string(), "residual".to_string()]));
            let (mut worst, mut points) = (0.0f64, 0usize);
            for index in m.interior_indices() {
                let x = m.point(&index);
                let r = transformed_residuals((&p.field, cfg), (&field_t, &cfg_t), transform, &x)
                    .map_err(|e| e.to_string())?;
                for (mu, r) in r.into_iter().enumerate() {
                    worst = worst.max(r);
                    records.push(x.iter().map(|c| Cell::from(*c)).chain([Cell::from(mu), Cell::from(r)]).collect());
                }
                points += 1;
            }
            let failure = (worst > *tolerance).then(|| format!("max residual {worst:e} exceeds {tolerance:e}"));
            let results = json!({ "points": points, "max_residual": worst });
            Ok(Done { records, results, failure })
        }
        Task::Compare { r, t, mode } => {
            let r = r.build(m)?;
            let t = t.build(m)?;
            let c = compare_outcomes(&r, &t, &p.field, *mode).map_err(|e| e.to_string())?;
            let mut records = Records::new([
                "mode",
                "agree",
                "ratio_re",
                "ratio_im",
                "transported_re",
                "transported_im",
                "target_re",
                "target_im",
                "mismatch_re",
                "mismatch_im",
            ]);
            let mismatch = c.mismatch.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let mode_name = serde_json::to_value(c.mode).expect("mode serializes");
            records.push(vec![
                Cell::from(mode_name.as_str().unwrap_or_default()),
                c.agree.into(),
                c.ratio.re.into(),
                c.ratio.im.into(),
                c.transported.re.into(),
                c.transported.im.into(),
                c.target.re.into(),
                c.target.im.into(),
                mismatch.re.into(),
                mismatch.im.into(),
            ]);
            let results = json!({
                "agree": c.agree,
                "ratio": complex_json(c.ratio),
                "transported": complex_json(c.transported),
                "target": complex_json(c.target),
                "mismatch": c.mismatch.map(complex_json),
            });
            Ok(Done { records, results, failure: None })
        }
    }
}
