//! Runs a resolved configuration and produces report rows.

use std::time::Instant;

use robustjl::data::{
    inject_ball_outliers, inject_far_side_outliers, inject_label_flip, load_csv, load_sparse_labeled, split_by_label,
    synth_clusters, LabeledDataset, SynthSpec,
};
use robustjl::jl::{dimension_for_rate, distortion_report, ReduceSpec, TargetDim, Variant};
use robustjl::kcenter::{solve_kcenter, Charikar, KCenterResult};
use robustjl::rng::child_seed;
use robustjl::svm::{solve_one_class, solve_two_class, DefaultOneClass, DefaultTwoClass, MarginResult};
use robustjl::{Error, Timing};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Format, InputSpec, OutlierKind, Task};

/// Seed offsets of the derived random streams.
const INJECT_SEED: u64 = 1;
const PAIR_SEED: u64 = 2;
const MAP_SEED_BASE: u64 = 100;

/// One JSON line of the report.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub task: Task,
    pub variant: Variant,
    pub rate: f64,
    pub d_tilde: usize,
    pub trial: usize,
    pub map_seed: u64,
    pub n: usize,
    pub d: usize,
    /// Name of the headline quantity in `value`.
    pub metric: &'static str,
    pub value: f64,
    /// `value` relative to the unreduced run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<f64>,
    pub timing: Timing,
    pub seconds: f64,
    /// Total time relative to the unreduced run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_time: Option<f64>,
    pub details: Value,
    pub config: Value,
}

/// Loads or generates the dataset, then injects outliers.
pub fn load_dataset(cfg: &ExperimentConfig) -> Result<LabeledDataset, Error> {
    let base = match &cfg.input {
        InputSpec::File { path, format: Format::Csv, labeled } => load_csv(path, *labeled)?,
        InputSpec::File { path, format: Format::Sparse, .. } => load_sparse_labeled(path)?,
        &InputSpec::Synth { k, per_cluster, d, spread, separation, offset } => {
            synth_clusters(&SynthSpec { k, per_cluster, d, spread, separation, offset }, cfg.seed)?
        }
    };
    let o = &cfg.outliers;
    if o.fraction == 0.0 {
        return Ok(base);
    }
    let seed = child_seed(cfg.seed, INJECT_SEED);
    match o.kind {
        OutlierKind::Flip => inject_label_flip(&base, o.fraction, seed),
        OutlierKind::Ball => inject_ball_outliers(&base, o.fraction, o.scale, seed),
        OutlierKind::FarSide => inject_far_side_outliers(&base, o.fraction, seed),
    }
}

/// Share of `index` that was injected.
fn injected_share(ds: &LabeledDataset, index: &[usize]) -> f64 {
    if index.is_empty() {
        return 0.0;
    }
    let hit = index.iter().filter(|i| ds.injected.binary_search(i).is_ok()).count();
    hit as f64 / index.len() as f64
}

enum Outcome {
    Margin(MarginResult),
    Centers(KCenterResult),
}

impl Outcome {
    fn value(&self) -> f64 {
        match self {
            Outcome::Margin(m) => m.width,
            Outcome::Centers(c) => c.radius,
        }
    }

    fn timing(&self) -> Timing {
        match self {
            Outcome::Margin(m) => m.timing,
            Outcome::Centers(c) => c.timing,
        }
    }

    fn details(&self, baseline: f64) -> Value {
        let ratio = |v: f64| if baseline > 0.0 { v / baseline } else { f64::NAN };
        match self {
            Outcome::Margin(m) => json!({
                "width": m.width,
                "normalizedWidth": ratio(m.width),
                "gilbertIterations": m.gilbert_iterations,
                "recoveryResidual": m.recovery_residual,
                "inliers": m.inliers.iter().map(Vec::len).collect::<Vec<_>>(),
                "blackbox": m.blackbox.solver,
                "map": m.map,
            }),
            Outcome::Centers(c) => json!({
                "radius": c.radius,
                "normalizedRadius": ratio(c.radius),
                "reassignedRadius": c.reassigned_radius,
                "centers": c.centers.len(),
                "recoveryResidual": c.recovery_residual,
                "blackbox": c.blackbox,
                "map": c.map,
            }),
        }
    }
}

/// The solver call of one task, parameterized by the reduction.
struct Experiment<'a> {
    cfg: &'a ExperimentConfig,
    ds: LabeledDataset,
    split: Option<robustjl::data::ClassSplit>,
    gammas: (f64, f64),
}

impl<'a> Experiment<'a> {
    fn new(cfg: &'a ExperimentConfig, ds: LabeledDataset) -> Result<Self, Error> {
        let n = ds.len();
        let all: Vec<usize> = (0..n).collect();
        let (split, gammas) = if cfg.task == Task::Svm2 {
            let split = split_by_label(&ds)?;
            let g1 = cfg.gamma.unwrap_or_else(|| injected_share(&ds, &split.positive_index));
            let g2 = cfg.gamma2.or(cfg.gamma).unwrap_or_else(|| injected_share(&ds, &split.negative_index));
            (Some(split), (g1, g2))
        } else {
            let g = cfg.gamma.unwrap_or_else(|| injected_share(&ds, &all));
            (None, (g, 0.0))
        };
        Ok(Experiment { cfg, ds, split, gammas })
    }

    fn run(&self, spec: &ReduceSpec) -> Result<Outcome, Error> {
        let cfg = self.cfg;
        match cfg.task {
            Task::Svm1 => {
                let bb = DefaultOneClass { eps0: cfg.eps0, rounds: cfg.rounds };
                solve_one_class(&self.ds.points, self.gammas.0, cfg.eps0, spec, &bb).map(Outcome::Margin)
            }
            Task::Svm2 => {
                let s = self.split.as_ref().expect("split exists for svm2");
                let bb = DefaultTwoClass { eps0: cfg.eps0, rounds: cfg.rounds };
                solve_two_class(&s.positive, &s.negative, self.gammas.0, self.gammas.1, cfg.eps0, spec, &bb)
                    .map(Outcome::Margin)
            }
            Task::Kcenter => {
                solve_kcenter(&self.ds.points, cfg.k, self.gammas.0, cfg.eps, spec, &Charikar).map(Outcome::Centers)
            }
            Task::Reduce | Task::Bench => unreachable!("not a solver task"),
        }
    }

    fn metric(&self) -> &'static str {
        if self.cfg.task == Task::Kcenter {
            "radius"
        } else {
            "width"
        }
    }
}

fn echo(cfg: &ExperimentConfig, d_tilde: usize, gammas: Option<(f64, f64)>) -> Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    v["dTilde"] = json!(d_tilde);
    if let Some((g1, g2)) = gammas {
        v["gamma"] = json!(g1);
        if cfg.task == Task::Svm2 {
            v["gamma2"] = json!(g2);
        }
    }
    v
}

/// Every (variant, rate, trial) row of a solver or `reduce` task.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Row>, Error> {
    let ds = load_dataset(cfg)?;
    if cfg.task == Task::Reduce {
        return run_reduce(cfg, &ds);
    }
    let (n, d) = (ds.len(), ds.dim());
    let exp = Experiment::new(cfg, ds)?;
    let identity = ReduceSpec::new(Variant::Identity, cfg.seed, TargetDim::default());
    let base = exp.run(&identity)?;
    let (base_value, base_time) = (base.value(), base.timing().total());
    let mut rows = Vec::new();
    for &variant in &cfg.variants {
        for &rate in &cfg.reduction_rates {
            for trial in 0..cfg.trials {
                let map_seed = child_seed(cfg.seed, MAP_SEED_BASE + trial as u64);
                let spec = ReduceSpec::new(variant, map_seed, TargetDim::Rate(rate));
                let fresh;
                let (out, d_tilde) = if variant == Variant::Identity {
                    (&base, d)
                } else {
                    fresh = exp.run(&spec)?;
                    (&fresh, dimension_for_rate(d, rate))
                };
                let timing = out.timing();
                rows.push(Row {
                    task: cfg.task,
                    variant,
                    rate,
                    d_tilde,
                    trial,
                    map_seed,
                    n,
                    d,
                    metric: exp.metric(),
                    value: out.value(),
                    normalized: Some(if base_value > 0.0 { out.value() / base_value } else { f64::NAN }),
                    timing,
                    seconds: timing.total(),
                    normalized_time: Some(if base_time > 0.0 { timing.total() / base_time } else { f64::NAN }),
                    details: out.details(base_value),
                    config: echo(cfg, d_tilde, Some(exp.gammas)),
                });
            }
        }
    }
    Ok(rows)
}

fn run_reduce(cfg: &ExperimentConfig, ds: &LabeledDataset) -> Result<Vec<Row>, Error> {
    let (n, d) = (ds.len(), ds.dim());
    let mut rows = Vec::new();
    for &variant in &cfg.variants {
        for &rate in &cfg.reduction_rates {
            for trial in 0..cfg.trials {
                let map_seed = child_seed(cfg.seed, MAP_SEED_BASE + trial as u64);
                let spec = ReduceSpec::new(variant, map_seed, TargetDim::Rate(rate));
                let d_tilde = spec.dimension(n, d, || Ok(cfg.eps))?;
                let start = Instant::now();
                let map = spec.build(d, d_tilde)?;
                let build = start.elapsed().as_secs_f64();
                let start = Instant::now();
                let report = distortion_report(&ds.points, &map, cfg.pairs, child_seed(cfg.seed, PAIR_SEED), cfg.eps)?;
                let measure = start.elapsed().as_secs_f64();
                let timing = Timing { jl: build, blackbox: 0.0, recover: measure };
                rows.push(Row {
                    task: cfg.task,
                    variant,
                    rate,
                    d_tilde,
                    trial,
                    map_seed,
                    n,
                    d,
                    metric: "maxDistortion",
                    value: report.max,
                    normalized: None,
                    timing,
                    seconds: build,
                    normalized_time: None,
                    details: json!({
                        "meanDistortion": report.mean,
                        "fractionWithin": report.fraction_within,
                        "pairs": report.pairs,
                        "epsilon": report.epsilon,
                    }),
                    config: echo(cfg, d_tilde, None),
                });
            }
        }
    }
    Ok(rows)
}
