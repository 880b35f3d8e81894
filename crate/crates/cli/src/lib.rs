//! Command-line harness for the robustjl pipelines.
//!
//! Each subcommand sweeps transform variants, reduction rates and trials over
//! one dataset. Rows are written as JSON lines; a CSV summary of the means per
//! (task, variant, rate) follows. Exit status is 0 on success, 1 for invalid
//! flags or input, 2 when a pipeline fails.

pub mod config;
pub mod report;
pub mod runner;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{Cli, ConfigError, ExperimentConfig, Task};
pub use runner::Row;

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Input(robustjl::Error),
    Pipeline(robustjl::Error),
    Output(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) => 1,
            CliError::Pipeline(_) | CliError::Output(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Input(e) => write!(f, "input error: {e}"),
            CliError::Pipeline(e) => write!(f, "pipeline failure: {e}"),
            CliError::Output(e) => write!(f, "cannot write report: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<robustjl::Error> for CliError {
    fn from(e: robustjl::Error) -> Self {
        use robustjl::Error::*;
        match e {
            ZeroDistance { .. } | IterationLimit { .. } | NotSeparable(_) | BlackBox { .. } | InvalidCombination(_) => {
                CliError::Pipeline(e)
            }
            _ => CliError::Input(e),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

/// Resolved configurations of a command line; `bench` expands to one per
/// solver task.
pub fn resolve(cli: Cli) -> Result<Vec<ExperimentConfig>, ConfigError> {
    let (task, flags) = cli.task.into_parts();
    if task != Task::Bench {
        return Ok(vec![ExperimentConfig::from_flags(task, flags)?]);
    }
    let bench = ExperimentConfig::from_flags(Task::Bench, flags.clone())?;
    [Task::Svm1, Task::Kcenter]
        .into_iter()
        .map(|t| {
            let mut cfg = ExperimentConfig::from_flags(t, flags.clone())?;
            cfg.variants = bench.variants.clone();
            Ok(cfg)
        })
        .collect()
}

fn summary_path(cfg: &ExperimentConfig) -> Option<PathBuf> {
    cfg.summary.clone().or_else(|| {
        cfg.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".summary.csv");
            PathBuf::from(s)
        })
    })
}

fn open(path: &Option<PathBuf>, fallback: Box<dyn Write>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p).map_err(CliError::Output)?))),
        None => Ok(fallback),
    }
}

/// Runs every configuration, then writes rows and summary.
pub fn execute(configs: &[ExperimentConfig]) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for cfg in configs {
        rows.extend(runner::run(cfg)?);
    }
    let first = &configs[0];
    let mut out = open(&first.output, Box::new(io::stdout().lock()))?;
    report::write_rows(&mut *out, &rows).map_err(CliError::Output)?;
    let mut summary = open(&summary_path(first), Box::new(io::stderr().lock()))?;
    report::write_summary(&mut *summary, &rows).map_err(CliError::Output)?;
    Ok(rows)
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let result = resolve(cli).map_err(CliError::from).and_then(|cfgs| execute(&cfgs));
    match result {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("robustjl: {e}");
            e.exit_code()
        }
    }
}
