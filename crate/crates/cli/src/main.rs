//! `scalefield` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scalefield::cli_io::{load_scenario, run_axioms, run_scenario, CliError, RunOptions};
use scalefield::scaled_arithmetic::{FactorConvention, NumberKind};

#[derive(Parser)]
#[command(name = "scalefield", version, about = "Scaled number structures over flat spacetime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario file.
    Run {
        scenario: PathBuf,
        /// Output directory.
        #[arg(long, env = "SCALEFIELD_OUT")]
        out: Option<PathBuf>,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, short)]
        verbose: bool,
    },
    /// Check the field axioms of one scaled structure.
    Axioms {
        #[arg(long, default_value = "rational")]
        kind: NumberKind,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Convention::AxiomForced)]
        convention: Convention,
    },
    /// Parse and validate a scenario without running it.
    Validate { scenario: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    AxiomForced,
    UniformRatio,
}

impl From<Convention> for FactorConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::AxiomForced => FactorConvention::AxiomForced,
            Convention::UniformRatio => FactorConvention::UniformRatio,
        }
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { scenario, out, seed, verbose } => {
            let summary = match run_scenario(&scenario, &RunOptions { out, seed, verbose }) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            for t in &summary.tasks {
                println!("{:02} {:<12} {}", t.index, t.task, t.status);
                if let Some(m) = &t.message {
                    eprintln!("   {}: {m}", t.csv);
                }
            }
            if summary.succeeded() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Axioms { kind, t, s, samples, seed, convention } => {
            match run_axioms(kind, &t, &s, samples, seed, convention.into()) {
                Ok(report) => {
                    print!("{report}");
                    if report.all_passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::Validate { scenario } => match load_scenario(&scenario, None) {
            Ok(p) => {
                println!("{}: ok, {} tasks", scenario.display(), p.scenario.tasks.len());
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
