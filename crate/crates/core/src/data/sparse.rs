use std::path::Path;

use super::csv::{parse_label, parse_real};
use super::LabeledDataset;
use crate::geometry::PointSet;
use crate::{Error, Result};

/// Parses sparse labeled text; see the module docs for the format.
pub fn parse_sparse(text: &str) -> Result<LabeledDataset> {
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut labels = Vec::new();
    let mut d = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        labels.push(parse_label(tokens.next().expect("nonempty line"), line_no, 1)?);
        let mut entries = Vec::new();
        let mut last = 0;
        for (t, tok) in tokens.enumerate() {
            let pos = t + 2;
            let bad = |reason: String| Error::Parse { line: line_no, token: pos, reason };
            let (i, v) = tok.split_once(':').ok_or_else(|| bad(format!("`{tok}` is not idx:value")))?;
            let idx: usize = i.parse().map_err(|_| bad(format!("index `{i}` is not a positive integer")))?;
            if idx == 0 {
                return Err(bad("indices are 1-based".into()));
            }
            if idx <= last {
                return Err(bad(format!("index {idx} does not increase past {last}")));
            }
            last = idx;
            entries.push((idx - 1, parse_real(v, line_no, pos)?));
        }
        d = d.max(last);
        rows.push(entries);
    }
    if rows.is_empty() {
        return Err(Error::Empty("dataset"));
    }
    if d == 0 {
        return Err(Error::param("dimension", "no features in any line"));
    }
    let mut data = vec![0.0; rows.len() * d];
    for (r, entries) in rows.iter().enumerate() {
        for &(j, v) in entries {
            data[r * d + j] = v;
        }
    }
    LabeledDataset::new(PointSet::from_flat(d, data)?, Some(labels), "sparse")
}

pub fn load_sparse_labeled(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let mut ds = parse_sparse(&std::fs::read_to_string(path)?)?;
    ds.provenance = format!("sparse:{}", path.display());
    Ok(ds)
}
