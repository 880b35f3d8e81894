//! JSON-lines rows and the CSV summary of per-cell means.

use std::io::{self, Write};

use crate::runner::Row;

pub fn write_rows(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, row)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub const SUMMARY_HEADER: &str =
    "task,variant,rate,dTilde,trials,metric,meanValue,meanNormalized,meanSeconds,meanNormalizedTime";

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

fn cell(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x}")
    }
}

/// One line per (task, variant, rate) in first-seen order, averaged over
/// trials.
pub fn write_summary(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    let mut keys: Vec<(String, String, u64)> = Vec::new();
    for r in rows {
        let key = (r.task.to_string(), r.variant.to_string(), r.rate.to_bits());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    for key in keys {
        let group: Vec<&Row> = rows
            .iter()
            .filter(|r| (r.task.to_string(), r.variant.to_string(), r.rate.to_bits()) == key)
            .collect();
        let first = group[0];
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            key.0,
            key.1,
            first.rate,
            first.d_tilde,
            group.len(),
            first.metric,
            cell(mean(group.iter().map(|r| r.value))),
            cell(mean(group.iter().filter_map(|r| r.normalized))),
            cell(mean(group.iter().map(|r| r.seconds))),
            cell(mean(group.iter().filter_map(|r| r.normalized_time))),
        )?;
    }
    out.flush()
}
