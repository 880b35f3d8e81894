//! Acceptance gate: runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

mod common;

use std::cell::RefCell;
use std::process::ExitCode;
use std::time::Instant;

use common::{gaussian_set, rng, uniform_set};
use robustjl::data::{inject_ball_outliers, inject_far_side_outliers, split_by_label, synth_clusters, LabeledDataset, SynthSpec};
use robustjl::geometry::{
    brute_force_kcenter_outliers, brute_force_margin_one_class, brute_force_margin_two_class,
    check_triangle_bound, exact_meb, inlier_count, polytope_distance, TriangleWitness,
};
use robustjl::hull::{bc_meb, gilbert, gilbert_minkowski};
use robustjl::jl::{apply, distortion_all_pairs, target_dimension, ProjectionMap, ReduceSpec, TargetDim, Variant};
use robustjl::kcenter::{charikar_kcenter_outliers, solve_kcenter, Charikar};
use robustjl::svm::{
    margin_along, margin_along_two_class, solve_one_class, solve_two_class, DefaultOneClass, DefaultTwoClass,
};
use robustjl::{Error, PointSet};

thread_local! {
    /// Recovery residuals of every pipeline run made by the gate.
    static RESIDUALS: RefCell<Vec<f64>> = const { RefCell::new(Vec::new()) };
}

fn record(residual: f64) {
    RESIDUALS.with(|r| r.borrow_mut().push(residual));
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_pairwise_sq(s: &PointSet) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            best = best.max(s.row(i).iter().zip(s.row(j)).map(|(a, b)| (a - b) * (a - b)).sum());
        }
    }
    best
}

fn lemma2() -> Outcome {
    let mut r = rng(1);
    let mut ok = 0;
    for _ in 0..10_000 {
        let w = TriangleWitness::sample(&mut r);
        if matches!(check_triangle_bound(&w), Ok(true)) {
            ok += 1;
        }
    }
    outcome(ok == 10_000, format!("{ok}/10000 witnesses satisfy the bound"))
}

fn jl_distortion() -> Outcome {
    let (n, d, eps) = (200, 512, 0.5);
    let dt = target_dimension(n, eps, 8.0).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for v in Variant::SEEDED {
        let mut good = 0;
        let mut worst: f64 = 1.0;
        for seed in 0..9u64 {
            let mut r = rng(100 + seed);
            let p = gaussian_set(&mut r, n, d, &[], 1.0);
            let map = ProjectionMap::new(v, d, dt, seed).unwrap();
            let f = distortion_all_pairs(&p, &apply(&map, &p).unwrap(), eps).unwrap().fraction_within;
            worst = worst.min(f);
            if f >= 0.9 {
                good += 1;
            }
        }
        pass &= good >= 5;
        parts.push(format!("{v} {good}/9 (min {worst:.4})"));
    }
    outcome(pass, format!("dTilde={dt}: {}", parts.join(", ")))
}

fn gilbert_correctness() -> Outcome {
    let mut r = rng(2);
    let eps_list = [0.5, 0.2, 0.1, 0.05];
    let (mut approx_ok, mut iter_ok, mut count) = (0, 0, 0);
    let mut worst_ratio: f64 = 0.0;
    while count < 100 {
        let n = 3 + count % 18;
        let d = 2 + count % 4;
        let shift: Vec<f64> = (0..d).map(|j| if j == 0 { 2.0 } else { 0.5 }).collect();
        let s = gaussian_set(&mut r, n, d, &shift, 0.8);
        let rho = polytope_distance(&s).distance;
        if rho < 1e-3 {
            continue;
        }
        let eps0 = eps_list[count % eps_list.len()];
        count += 1;
        let sol = gilbert(&s, eps0, None).unwrap();
        if sol.distance() <= rho / (1.0 - eps0) * (1.0 + 1e-12) {
            approx_ok += 1;
        }
        let e = max_pairwise_sq(&s) / (rho * rho);
        let bound = 2 * (2 * (2.0 * e / eps0).ceil() as usize);
        worst_ratio = worst_ratio.max(sol.iterations as f64 / bound as f64);
        if sol.iterations <= bound {
            iter_ok += 1;
        }
    }
    outcome(
        approx_ok == 100 && iter_ok == 100,
        format!("approximation {approx_ok}/100, iteration bound {iter_ok}/100 (max iterations/bound {worst_ratio:.3})"),
    )
}

fn minkowski_equivalence() -> Outcome {
    let mut r = rng(3);
    let mut equal = 0;
    for t in 0..50 {
        let (n1, n2) = (1 + t % 8, 1 + (t * 3) % 8);
        let q1 = gaussian_set(&mut r, n1, 3, &[1.5, 0.0, 0.5], 0.7);
        let q2 = gaussian_set(&mut r, n2, 3, &[-1.5, 0.3, 0.0], 0.7);
        let rows = q1
            .rows()
            .flat_map(|a| q2.rows().map(move |b| a.iter().zip(b).map(|(x, y)| x - y).collect()))
            .collect();
        let md = PointSet::new(rows).unwrap();
        let same = match (gilbert(&md, 0.01, Some(100_000)), gilbert_minkowski(&q1, &q2, 0.01, Some(100_000))) {
            (Ok(e), Ok(m)) => {
                let pairs: Vec<(usize, usize)> = e.trace.iter().map(|k| (k / n2, k % n2)).collect();
                pairs == m.trace && e.iterations == m.iterations
            }
            (Err(Error::ZeroDistance { .. }), Err(Error::ZeroDistance { .. })) => true,
            _ => false,
        };
        if same {
            equal += 1;
        }
    }
    outcome(equal == 50, format!("{equal}/50 instances with identical index traces"))
}

fn bc_meb_coverage() -> Outcome {
    let mut r = rng(4);
    let mut ok = 0;
    let mut worst: f64 = 0.0;
    for t in 0..100 {
        let n = 1 + t % 40;
        let d = 1 + t % 5;
        let s = uniform_set(&mut r, n, d, -3.0, 3.0);
        let exact = exact_meb(&s).unwrap().radius;
        let mut good = true;
        for eps in [0.1, 0.5] {
            let sol = bc_meb(&s, eps).unwrap();
            if exact > 0.0 {
                worst = worst.max(sol.radius / exact / (1.0 + eps));
            }
            good &= sol.radius <= (1.0 + eps) * exact + 1e-12;
        }
        if good {
            ok += 1;
        }
    }
    outcome(ok == 100, format!("{ok}/100 instances (max radius/((1+eps) exact) {worst:.4})"))
}

fn charikar() -> Outcome {
    let mut r = rng(5);
    let (mut ok, mut cover) = (0, 0);
    let mut worst: f64 = 0.0;
    for t in 0..50 {
        let n = 4 + t % 11;
        let k = 1 + t % 3;
        let gamma = [0.0, 0.1, 0.25][t % 3];
        let p = uniform_set(&mut r, n, 2, -5.0, 5.0);
        let c = charikar_kcenter_outliers(&p, k, gamma).unwrap();
        let oracle = brute_force_kcenter_outliers(&p, k, gamma).unwrap();
        if oracle > 0.0 {
            worst = worst.max(c.radius / oracle);
        }
        if c.radius <= 3.0 * oracle + 1e-12 {
            ok += 1;
        }
        if c.clusters.iter().map(Vec::len).sum::<usize>() == inlier_count(n, gamma) {
            cover += 1;
        }
    }
    outcome(ok == 50 && cover == 50, format!("ratio {ok}/50 (max radius/oracle {worst:.3}), coverage {cover}/50"))
}

fn margin_chain() -> Outcome {
    let eps0 = 0.3;
    let d = 64;
    let (mut one_ok, mut two_ok) = (0, 0);
    for trial in 0..30u64 {
        let mut r = rng(600 + trial);
        // one-class: 10 inliers away from the origin plus one far-side outlier
        let mut shift = vec![0.0; d];
        shift[0] = 2.0;
        let inl = gaussian_set(&mut r, 10, d, &shift, 0.15);
        let ds = inject_far_side_outliers(&LabeledDataset::new(inl, None, "t").unwrap(), 0.1, trial).unwrap();
        let gamma = 1.0 / 11.0;
        let reduce = ReduceSpec::new(Variant::Gaussian, trial, TargetDim::default());
        if let Ok(res) = solve_one_class(&ds.points, gamma, eps0, &reduce, &DefaultOneClass::new(eps0)) {
            record(res.recovery_residual);
            let map = reduce.build(d, res.target_dim).unwrap();
            let fp = apply(&map, &ds.points).unwrap();
            let v = DefaultOneClass::new(eps0).run(&fp, gamma).unwrap().0;
            let lambda = brute_force_margin_one_class(&fp, gamma).unwrap() / margin_along(&fp, &v, gamma).unwrap();
            let oracle = brute_force_margin_one_class(&ds.points, gamma).unwrap();
            if lambda > 0.0 && res.width >= (1.0 - eps0).powi(3) * oracle / lambda {
                one_ok += 1;
            }
        }
        // two-class: 6 + 6 points, one flipped label per class
        let spec = SynthSpec { k: 2, per_cluster: 6, d, spread: 0.2, separation: 3.0, offset: 0.0 };
        let mut ds = synth_clusters(&spec, 700 + trial).unwrap();
        let labels = ds.labels.as_mut().unwrap();
        labels.swap(0, 6);
        let split = split_by_label(&ds).unwrap();
        let (g1, g2) = (1.0 / 6.0, 1.0 / 6.0);
        let reduce = ReduceSpec::new(Variant::Binary, trial, TargetDim::default());
        if let Ok(res) = solve_two_class(&split.positive, &split.negative, g1, g2, eps0, &reduce, &DefaultTwoClass::new(eps0)) {
            record(res.recovery_residual);
            let map = reduce.build(d, res.target_dim).unwrap();
            let f1 = apply(&map, &split.positive).unwrap();
            let f2 = apply(&map, &split.negative).unwrap();
            let v = DefaultTwoClass::new(eps0).run(&f1, &f2, g1, g2).unwrap().0;
            let lambda = brute_force_margin_two_class(&f1, &f2, g1, g2).unwrap()
                / margin_along_two_class(&f1, &f2, &v, g1, g2).unwrap();
            let oracle = brute_force_margin_two_class(&split.positive, &split.negative, g1, g2).unwrap();
            if lambda > 0.0 && res.width >= (1.0 - eps0).powi(3) * oracle / lambda {
                two_ok += 1;
            }
        }
    }
    outcome(
        one_ok >= 24 && two_ok >= 24,
        format!("one-class {one_ok}/30, two-class {two_ok}/30 (need 24)"),
    )
}

fn radius_chain() -> Outcome {
    let (n, d, eps) = (30, 64, 0.2f64);
    let slack = ((1.0 + eps).powi(3) / (1.0 - eps)).sqrt();
    let mut ok = 0;
    let mut dt = 0;
    for trial in 0..30u64 {
        let mut r = rng(800 + trial);
        let p = gaussian_set(&mut r, n, d, &[1.0; 64], 0.5);
        let reduce = ReduceSpec::new(Variant::Fast, trial, TargetDim::default());
        let Ok(res) = solve_kcenter(&p, 1, 0.0, eps, &reduce, &Charikar) else { continue };
        record(res.recovery_residual);
        dt = res.target_dim;
        let map = reduce.build(d, res.target_dim).unwrap();
        let fp = apply(&map, &p).unwrap();
        let cluster_radius = res
            .clusters
            .iter()
            .map(|c| exact_meb(&fp.select(c).unwrap()).unwrap().radius)
            .fold(0.0, f64::max);
        let lambda = cluster_radius / exact_meb(&fp).unwrap().radius;
        if res.radius <= lambda * slack * exact_meb(&p).unwrap().radius * (1.0 + 1e-12) {
            ok += 1;
        }
    }
    outcome(ok >= 24, format!("{ok}/30 trials within the bound (need 24, dTilde={dt})"))
}

fn recovery_identities() -> Outcome {
    let worst = RESIDUALS.with(|r| r.borrow().iter().copied().fold(0.0, f64::max));
    let runs = RESIDUALS.with(|r| r.borrow().len());
    outcome(runs > 0 && worst <= 1e-9, format!("{runs} pipeline runs, max relative residual {worst:.3e}"))
}

/// Wall time of one pipeline run; its recovery residual is recorded.
fn timed_run(f: impl FnOnce() -> f64) -> f64 {
    let t = Instant::now();
    let residual = f();
    let secs = t.elapsed().as_secs_f64();
    record(residual);
    secs
}

fn runtime_sanity() -> Outcome {
    let d = 2048;
    let rate = TargetDim::Rate(0.1);
    let one = SynthSpec { k: 1, per_cluster: 1818, d, spread: 0.5, separation: 0.0, offset: 10.0 };
    let svm_ds = inject_far_side_outliers(&synth_clusters(&one, 10).unwrap(), 0.1, 11).unwrap();
    let gamma = 0.1;
    let eps0 = 0.1;
    let bb = DefaultOneClass::new(eps0);
    let two = SynthSpec { k: 2, per_cluster: 909, d, spread: 0.5, separation: 30.0, offset: 0.0 };
    let kc_ds = inject_ball_outliers(&synth_clusters(&two, 12).unwrap(), 0.1, 3.0, 13).unwrap();
    let kc_gamma = kc_ds.injected.len() as f64 / kc_ds.len() as f64;
    let svm_points = &svm_ds.points;
    let kc_points = &kc_ds.points;
    let svm = |variant: Variant| {
        let spec = ReduceSpec::new(variant, 14, rate);
        timed_run(|| solve_one_class(svm_points, gamma, eps0, &spec, &bb).unwrap().recovery_residual)
    };
    let kc = |variant: Variant| {
        let spec = ReduceSpec::new(variant, 15, rate);
        timed_run(|| solve_kcenter(kc_points, 2, kc_gamma, 0.1, &spec, &Charikar).unwrap().recovery_residual)
    };
    let svm_base = svm(Variant::Identity);
    let kc_base = kc(Variant::Identity);
    let mut pass = true;
    let mut parts = Vec::new();
    for v in Variant::SEEDED {
        let ts = svm(v) / svm_base;
        let tk = kc(v) / kc_base;
        pass &= ts < 1.0 && tk < 1.0;
        parts.push(format!("{v} svm1 {ts:.3} kcenter {tk:.3}"));
    }
    outcome(
        pass,
        format!(
            "n={}/{} d={d}, baselines svm1 {svm_base:.2} s, kcenter {kc_base:.2} s; normalized {}",
            svm_ds.len(),
            kc_ds.len(),
            parts.join(", ")
        ),
    )
}

fn trimming_efficacy() -> Outcome {
    let mut good = 0;
    let mut rates = Vec::new();
    for trial in 0..9u64 {
        let spec = SynthSpec { k: 3, per_cluster: 100, d: 1024, spread: 0.3, separation: 25.0, offset: 0.0 };
        let ds = inject_ball_outliers(&synth_clusters(&spec, 900 + trial).unwrap(), 0.1, 3.0, 950 + trial).unwrap();
        let gamma = ds.injected.len() as f64 / ds.len() as f64;
        let reduce = ReduceSpec::new(Variant::Gaussian, trial, TargetDim::Rate(0.1));
        let Ok(res) = solve_kcenter(&ds.points, 3, gamma, 0.1, &reduce, &Charikar) else { continue };
        record(res.recovery_residual);
        let dropped = ds.injected.iter().filter(|&&i| res.assignment[i].is_none()).count();
        let rate = dropped as f64 / ds.injected.len() as f64;
        rates.push(format!("{rate:.2}"));
        if rate >= 0.95 {
            good += 1;
        }
    }
    outcome(good >= 5, format!("{good}/9 trials discard >= 95% of injected outliers (rates {})", rates.join(" ")))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, f64, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("triangle bound verifier", 1.0, lemma2),
        ("JL distortion", 10.0, jl_distortion),
        ("Gilbert correctness", 30.0, gilbert_correctness),
        ("Minkowski equivalence", f64::INFINITY, minkowski_equivalence),
        ("Badoiu-Clarkson MEB", f64::INFINITY, bc_meb_coverage),
        ("Charikar k-center", f64::INFINITY, charikar),
        ("margin chain (one-class, two-class)", f64::INFINITY, margin_chain),
        ("radius chain (k-center)", f64::INFINITY, radius_chain),
        ("recovery identities", f64::INFINITY, recovery_identities),
        ("runtime sanity", 300.0, runtime_sanity),
        ("outlier trimming efficacy", f64::INFINITY, trimming_efficacy),
    ];
    // recovery identities aggregate the pipeline runs of criteria 7, 8, 10
    // and 11, so it is evaluated last but reported in order
    let order = [0, 1, 2, 3, 4, 5, 6, 7, 9, 10, 8];
    let mut results: Vec<Option<(Outcome, f64)>> = (0..criteria.len()).map(|_| None).collect();
    for &i in &order {
        let (_, budget, run) = criteria[i];
        let start = Instant::now();
        let mut out = run();
        let secs = start.elapsed().as_secs_f64();
        if secs >= budget {
            out.pass = false;
            out.detail.push_str(&format!("; over the {budget} s budget"));
        }
        results[i] = Some((out, secs));
    }
    let mut failed = 0;
    for (i, r) in results.into_iter().enumerate() {
        let (out, secs) = r.expect("every criterion ran");
        let tag = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!("{tag} {:>2} {}: {} [{secs:.2} s]", i + 1, criteria[i].0, out.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
