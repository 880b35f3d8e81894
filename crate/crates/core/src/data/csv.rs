use std::fmt::Write as _;
use std::path::Path;

use super::LabeledDataset;
use crate::geometry::PointSet;
use crate::{Error, Result};

fn parse_error(line: usize, token: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, token, reason: reason.into() }
}

pub(crate) fn parse_label(s: &str, line: usize, token: usize) -> Result<i8> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(parse_error(line, token, format!("label `{other}` is not +1 or -1"))),
    }
}

pub(crate) fn parse_real(s: &str, line: usize, token: usize) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(parse_error(line, token, format!("`{s}` is not finite"))),
        Err(_) => Err(parse_error(line, token, format!("`{s}` is not a number"))),
    }
}

/// Parses CSV text; line and token numbers in errors are 1-based.
pub fn parse_csv(text: &str, labeled: bool) -> Result<LabeledDataset> {
    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        match width {
            None => {
                if labeled && cells.len() < 2 {
                    return Err(parse_error(line_no, 1, "labeled rows need a coordinate and a label"));
                }
                width = Some(cells.len());
            }
            Some(w) if w != cells.len() => {
                return Err(parse_error(line_no, cells.len().min(w) + 1, format!("expected {w} columns, found {}", cells.len())));
            }
            _ => {}
        }
        let coords = if labeled { cells.len() - 1 } else { cells.len() };
        for (t, cell) in cells[..coords].iter().enumerate() {
            data.push(parse_real(cell, line_no, t + 1)?);
        }
        if labeled {
            labels.push(parse_label(cells[coords], line_no, coords + 1)?);
        }
    }
    let width = width.ok_or(Error::Empty("dataset"))?;
    let d = if labeled { width - 1 } else { width };
    let points = PointSet::from_flat(d, data)?;
    LabeledDataset::new(points, labeled.then_some(labels), "csv")
}

pub fn load_csv(path: impl AsRef<Path>, labeled: bool) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let mut ds = parse_csv(&std::fs::read_to_string(path)?, labeled)?;
    ds.provenance = format!("csv:{}", path.display());
    Ok(ds)
}

/// Writes the dataset in the format [`parse_csv`] reads. Reals use Rust's
/// shortest round-trip formatting; labels are written as `+1`/`-1`.
pub fn write_csv(ds: &LabeledDataset) -> String {
    let mut out = String::new();
    for (i, row) in ds.points.rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("writing to a String");
        }
        if let Some(labels) = &ds.labels {
            out.push_str(if labels[i] > 0 { ",+1" } else { ",-1" });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlabeled() {
        let ds = parse_csv("1,2\n3,4", false).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.points.row(1), &[3.0, 4.0]);
        assert!(ds.labels.is_none());
    }

    #[test]
    fn labeled() {
        let ds = parse_csv("1,2,+1\n", true).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.labels, Some(vec![1]));
        assert_eq!(ds.dim(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_csv("", false), Err(Error::Empty(_))));
        assert!(matches!(parse_csv("\n\n", false), Err(Error::Empty(_))));
        match parse_csv("1,2\n3\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_csv("1,x\n", false) {
            Err(Error::Parse { line, token, .. }) => assert_eq!((line, token), (1, 2)),
            other => panic!("{other:?}"),
        }
        assert!(parse_csv("1,2,0\n", true).is_err());
        assert!(parse_csv("1,inf\n", false).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "0.1,-2.5,+1\n3,1e-7,-1\n";
        let ds = parse_csv(text, true).unwrap();
        let written = write_csv(&ds);
        assert_eq!(written, write_csv(&parse_csv(&written, true).unwrap()));
        assert_eq!(parse_csv(&written, true).unwrap().points, ds.points);
    }
}
