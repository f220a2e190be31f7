//! Input files and argument parsers.

use crate::error::{CliError, CliResult};
use std::ops::RangeInclusive;
use std::path::Path;

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError { kind: "io", message: format!("{}: {e}", path.display()) })
}

/// Square matrix from CSV, one row per line, no header.
pub fn read_matrix(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let text = read_text(path)?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| CliError::input(format!("bad matrix entry {s:?}: {e}"))))
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::input(format!("{}: expected a nonempty square matrix", path.display())));
    }
    Ok(rows)
}

/// A JSON value from a file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

/// `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad number {t:?}: {e}"));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(r)
}

/// Comma-separated indices.
pub fn parse_indices(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad index {t:?}: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("8..12").unwrap(), 8..=12);
        assert_eq!(parse_range("8..=12").unwrap(), 8..=12);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn indices() {
        assert_eq!(parse_indices("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert!(parse_indices("1,a").is_err());
    }
}
