//! Experiment configuration: command-line flags, defaults and validation.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robustjl::jl::Variant;
use serde::Serialize;

/// The experiment grid of reduction rates used when none is given.
pub const DEFAULT_RATES: [f64; 5] = [0.02, 0.04, 0.06, 0.08, 0.10];

#[derive(Debug, Parser)]
#[command(name = "robustjl", version, about = "Seeded experiments for JL reduction with recovery")]
pub struct Cli {
    #[command(subcommand)]
    pub task: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project a dataset and report pairwise distortion.
    Reduce(Flags),
    /// One-class SVM with outliers.
    Svm1(Flags),
    /// Two-class SVM with outliers on a labeled dataset.
    Svm2(Flags),
    /// k-center clustering with outliers.
    Kcenter(Flags),
    /// svm1 and kcenter over every transform variant.
    Bench(Flags),
}

impl Command {
    pub fn into_parts(self) -> (Task, Flags) {
        match self {
            Command::Reduce(f) => (Task::Reduce, f),
            Command::Svm1(f) => (Task::Svm1, f),
            Command::Svm2(f) => (Task::Svm2, f),
            Command::Kcenter(f) => (Task::Kcenter, f),
            Command::Bench(f) => (Task::Bench, f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Reduce,
    Svm1,
    Svm2,
    Kcenter,
    Bench,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Reduce => "reduce",
            Task::Svm1 => "svm1",
            Task::Svm2 => "svm2",
            Task::Kcenter => "kcenter",
            Task::Bench => "bench",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutlierKind {
    /// Negate labels of a random subset.
    Flip,
    /// Append points on spheres around the clusters' enclosing balls.
    Ball,
    /// Append reflections of random points through the origin.
    FarSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Gaussian,
    Binary,
    Fast,
    None,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Gaussian => Variant::Gaussian,
            VariantArg::Binary => Variant::Binary,
            VariantArg::Fast => Variant::Fast,
            VariantArg::None => Variant::Identity,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Seed for data generation, injection and every transform.
    #[arg(long)]
    pub seed: u64,
    /// Dataset file; without it a synthetic dataset is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// The last CSV column holds +1/-1 labels.
    #[arg(long)]
    pub labeled: bool,
    /// Synthetic clusters.
    #[arg(long, default_value_t = 2)]
    pub synth_k: usize,
    #[arg(long, default_value_t = 200)]
    pub per_cluster: usize,
    #[arg(long, default_value_t = 512)]
    pub dim: usize,
    #[arg(long, default_value_t = 0.5)]
    pub spread: f64,
    #[arg(long, default_value_t = 20.0)]
    pub separation: f64,
    /// Shift of the synthetic centers along the diagonal; defaults to 10 for
    /// svm1 and 0 otherwise.
    #[arg(long)]
    pub offset: Option<f64>,
    /// Fraction of outliers to inject.
    #[arg(long, default_value_t = 0.1)]
    pub outliers: f64,
    /// Injection method; defaults to far-side for svm1, flip for svm2 and
    /// ball otherwise.
    #[arg(long, value_enum)]
    pub outlier_kind: Option<OutlierKind>,
    #[arg(long, default_value_t = 3.0)]
    pub outlier_scale: f64,
    /// Transform variants, comma separated; gaussian by default, every
    /// variant for bench.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub variant: Vec<VariantArg>,
    /// Reduction rates d~/d, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RATES)]
    pub rates: Vec<f64>,
    /// Outlier fraction trimmed by the solver (class 1 for svm2); defaults to
    /// the injected fraction.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Class 2 outlier fraction for svm2.
    #[arg(long)]
    pub gamma2: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Ball accuracy for kcenter and distortion threshold for reduce.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Polytope-distance accuracy for the SVM tasks.
    #[arg(long, default_value_t = 0.1)]
    pub eps0: f64,
    /// Alternating-trimming rounds of the default SVM black boxes.
    #[arg(long, default_value_t = robustjl::svm::DEFAULT_ROUNDS)]
    pub rounds: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Sampled pairs for the reduce distortion report.
    #[arg(long, default_value_t = 2000)]
    pub pairs: usize,
    /// JSON-lines report; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// CSV summary; defaults to the report path with a `.summary.csv`
    /// suffix, or stderr when writing to stdout.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", tag = "source")]
pub enum InputSpec {
    File { path: PathBuf, format: Format, labeled: bool },
    Synth { k: usize, per_cluster: usize, d: usize, spread: f64, separation: f64, offset: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutlierSpec {
    pub kind: OutlierKind,
    pub fraction: f64,
    pub scale: f64,
}

/// Fully resolved experiment; echoed into every report row.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub task: Task,
    pub input: InputSpec,
    pub outliers: OutlierSpec,
    pub variants: Vec<Variant>,
    pub reduction_rates: Vec<f64>,
    pub gamma: Option<f64>,
    pub gamma2: Option<f64>,
    pub k: usize,
    pub eps: f64,
    pub eps0: f64,
    pub rounds: usize,
    pub seed: u64,
    pub trials: usize,
    pub pairs: usize,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub summary: Option<PathBuf>,
}

/// A rejected configuration field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.reason)
    }
}

impl std::error::Error for ConfigError {}

fn reject(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError { field, reason: reason.into() }
}

impl ExperimentConfig {
    pub fn from_flags(task: Task, f: Flags) -> Result<Self, ConfigError> {
        let input = match f.input {
            Some(path) => InputSpec::File { path, format: f.format, labeled: f.labeled },
            None => InputSpec::Synth {
                k: f.synth_k,
                per_cluster: f.per_cluster,
                d: f.dim,
                spread: f.spread,
                separation: f.separation,
                offset: f.offset.unwrap_or(if task == Task::Svm1 { 10.0 } else { 0.0 }),
            },
        };
        let kind = f.outlier_kind.unwrap_or(match task {
            Task::Svm1 => OutlierKind::FarSide,
            Task::Svm2 => OutlierKind::Flip,
            _ => OutlierKind::Ball,
        });
        let cfg = ExperimentConfig {
            task,
            input,
            outliers: OutlierSpec { kind, fraction: f.outliers, scale: f.outlier_scale },
            variants: if f.variant.is_empty() {
                if task == Task::Bench {
                    vec![Variant::Gaussian, Variant::Binary, Variant::Fast, Variant::Identity]
                } else {
                    vec![Variant::Gaussian]
                }
            } else {
                f.variant.into_iter().map(Variant::from).collect()
            },
            reduction_rates: f.rates,
            gamma: f.gamma,
            gamma2: f.gamma2,
            k: f.k,
            eps: f.eps,
            eps0: f.eps0,
            rounds: f.rounds,
            seed: f.seed,
            trials: f.trials,
            pairs: f.pairs,
            output: f.output,
            summary: f.summary,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.reduction_rates.is_empty() {
            return Err(reject("rates", "at least one rate is required"));
        }
        if let Some(r) = self.reduction_rates.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(reject("rates", format!("{r} is outside (0, 1]")));
        }
        if self.trials == 0 {
            return Err(reject("trials", "must be at least 1"));
        }
        if self.pairs == 0 {
            return Err(reject("pairs", "must be at least 1"));
        }
        if self.k == 0 {
            return Err(reject("k", "must be at least 1"));
        }
        if self.rounds == 0 {
            return Err(reject("rounds", "must be at least 1"));
        }
        let open = |field, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(reject(field, format!("{v} is outside (0, 1)")))
            }
        };
        open("eps", self.eps)?;
        open("eps0", self.eps0)?;
        for (field, g) in [("gamma", self.gamma), ("gamma2", self.gamma2)] {
            if let Some(g) = g {
                if !(0.0..1.0).contains(&g) {
                    return Err(reject(field, format!("{g} is outside [0, 1)")));
                }
            }
        }
        if !(0.0..1.0).contains(&self.outliers.fraction) {
            return Err(reject("outliers", format!("{} is outside [0, 1)", self.outliers.fraction)));
        }
        if self.outliers.kind == OutlierKind::Ball && !(self.outliers.scale > 1.0) {
            return Err(reject("outlier-scale", "must exceed 1"));
        }
        if let InputSpec::Synth { k, per_cluster, d, spread, separation, offset } = self.input {
            if k == 0 || per_cluster == 0 || d == 0 {
                return Err(reject("synth-k", "cluster count, cluster size and dimension must be positive"));
            }
            if k > d {
                return Err(reject("synth-k", format!("{k} clusters need dim >= {k}")));
            }
            if !(spread >= 0.0 && separation >= 0.0 && offset.is_finite()) {
                return Err(reject("spread", "spread and separation must be nonnegative"));
            }
        }
        if self.task == Task::Svm2 && self.outliers.kind != OutlierKind::Flip && self.outliers.fraction > 0.0 {
            return Err(reject("outlier-kind", "svm2 injects outliers by label flips only"));
        }
        if self.task == Task::Svm1 && self.outliers.kind == OutlierKind::Flip && self.outliers.fraction > 0.0 {
            return Err(reject("outlier-kind", "label flips do not affect one-class data"));
        }
        Ok(())
    }
}
