use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_robustjl");

fn run(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn rows(path: &Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn without_timing(mut v: Value) -> Value {
    let obj = v.as_object_mut().unwrap();
    for key in ["timing", "seconds", "normalizedTime"] {
        obj.remove(key);
    }
    v
}

const SMALL: [&str; 8] = ["--per-cluster", "40", "--dim", "64", "--rates", "0.25", "--variant", "gaussian,fast,none"];

#[test]
fn same_seed_same_rows() {
    let dir = tempfile::tempdir().unwrap();
    let mut results = Vec::new();
    for name in ["a.jsonl", "b.jsonl"] {
        let out = dir.path().join(name);
        let mut args = vec!["svm1", "--seed", "21", "--output", out.to_str().unwrap()];
        args.extend(SMALL);
        let status = run(&args);
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        results.push(rows(&out).into_iter().map(without_timing).collect::<Vec<_>>());
    }
    assert_eq!(results[0], results[1]);
    assert_eq!(results[0].len(), 3);
    let other = dir.path().join("c.jsonl");
    let mut args = vec!["svm1", "--seed", "22", "--output", other.to_str().unwrap()];
    args.extend(SMALL);
    assert!(run(&args).status.success());
    let changed = rows(&other).into_iter().map(without_timing).collect::<Vec<_>>();
    assert_ne!(changed[0]["value"], results[0][0]["value"]);
}

#[test]
fn baseline_rows_are_normalized_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.jsonl");
    let status = run(&[
        "kcenter", "--seed", "4", "--per-cluster", "30", "--dim", "32", "--rates", "0.25,0.5", "--variant", "binary,none",
        "--trials", "2", "--output", out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let rows = rows(&out);
    assert_eq!(rows.len(), 2 * 2 * 2);
    for r in rows.iter().filter(|r| r["variant"] == "none") {
        assert_eq!(r["normalizedTime"], 1.0);
        assert_eq!(r["normalized"], 1.0);
        assert_eq!(r["details"]["normalizedRadius"], 1.0);
        assert_eq!(r["dTilde"], 32);
    }
    let binary: Vec<_> = rows.iter().filter(|r| r["variant"] == "binary").collect();
    assert_eq!(binary[0]["dTilde"], 8);
    assert_eq!(binary[0]["config"]["dTilde"], 8);
    assert_ne!(binary[0]["mapSeed"], binary[1]["mapSeed"]);

    let summary = fs::read_to_string(dir.path().join("k.jsonl.summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], robustjl_cli::report::SUMMARY_HEADER);
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines[1].starts_with("kcenter,binary,0.25,8,2,radius,"));
}

#[test]
fn bench_covers_both_tasks_and_all_variants() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.jsonl");
    let summary = dir.path().join("s.csv");
    let status = run(&[
        "bench", "--seed", "2", "--per-cluster", "30", "--dim", "32", "--rates", "0.5", "--output",
        out.to_str().unwrap(), "--summary", summary.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let rows = rows(&out);
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.iter().filter(|r| r["task"] == "svm1").count(), 4);
    assert_eq!(fs::read_to_string(summary).unwrap().lines().count(), 9);
}

#[test]
fn reduce_streams_to_stdout_and_summary_to_stderr() {
    let status = run(&["reduce", "--seed", "5", "--per-cluster", "20", "--dim", "128", "--rates", "0.5", "--variant", "fast"]);
    assert!(status.status.success());
    let stdout = String::from_utf8(status.stdout).unwrap();
    let row: Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(row["metric"], "maxDistortion");
    assert_eq!(row["dTilde"], 64);
    let within = row["details"]["fractionWithin"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&within));
    let stderr = String::from_utf8(status.stderr).unwrap();
    assert!(stderr.starts_with(robustjl_cli::report::SUMMARY_HEADER));
}

#[test]
fn reads_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let spec = robustjl::data::SynthSpec { k: 2, per_cluster: 25, d: 16, spread: 0.3, separation: 12.0, offset: 0.0 };
    let ds = robustjl::data::synth_clusters(&spec, 8).unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, robustjl::data::write_csv(&ds)).unwrap();
    let out = dir.path().join("o.jsonl");
    let status = run(&[
        "svm2", "--seed", "1", "--input", input.to_str().unwrap(), "--labeled", "--rates", "0.5", "--outliers", "0",
        "--output", out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let rows = rows(&out);
    assert_eq!(rows[0]["n"], 50);
    assert!(rows[0]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["svm1"]).status.code(), Some(1), "missing seed");
    assert_eq!(run(&["svm1", "--seed", "x"]).status.code(), Some(1));
    assert_eq!(run(&["svm1", "--seed", "1", "--rates", "1.5"]).status.code(), Some(1));
    assert_eq!(run(&["kcenter", "--seed", "1", "--k", "0"]).status.code(), Some(1));
    assert_eq!(run(&["svm1", "--seed", "1", "--input", "/nonexistent/file.csv"]).status.code(), Some(1));
    let fails = run(&[
        "svm1", "--seed", "1", "--gamma", "0", "--offset", "0", "--per-cluster", "30", "--dim", "16", "--rates", "0.5",
    ]);
    assert_eq!(fails.status.code(), Some(2), "{}", String::from_utf8_lossy(&fails.stderr));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
