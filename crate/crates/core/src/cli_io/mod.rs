//! Scenario files, the task runner and CSV/JSON output.
//!
//! A scenario is a strict JSON document naming a grid, the fields on it,
//! optional paths, packets and gauge data, and a list of tasks. Each task
//! writes one CSV file; the run ends with `summary.json`, which records
//! every parameter after defaults were filled in.
//!
//! ```
//! use scalefield::cli_io::format_float;
//!
//! assert_eq!(format_float(1.0 / 3.0), "0.33333333333333331");
//! ```

mod emit;
mod run;
mod scenario;

pub use emit::{emit_csv, format_float, Cell, Records};
pub use run::{
    axiom_records, load_scenario, output_dir, run_axioms, run_prepared, run_scenario, RunOptions, RunSummary,
    TaskStatus, TaskSummary, DEFAULT_OUTPUT_DIR,
};
pub use scenario::{
    parse_scenario, spatial_slice, FieldsBlock, GaugeBlock, ManifoldBlock, OutcomeBlock, PacketBlock, Prepared,
    Scenario, Task, VariationalBlock,
};

use std::path::Path;

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum CliError {
    #[error("{file}:{line}:{column}: at `{path}`: {message}")]
    Parse { file: String, line: usize, column: usize, path: String, message: String },
    #[error("invalid scenario at `{path}`: {message}")]
    Validation { path: String, message: String },
    #[error("{0}")]
    TaskFailure(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed records: {0}")]
    Records(String),
}

impl CliError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    /// Process exit code: 2 parse, 3 validation, 1 task failure, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Validation { .. } => 3,
            CliError::TaskFailure(_) => 1,
            CliError::Io { .. } | CliError::Records(_) => 4,
        }
    }
}
