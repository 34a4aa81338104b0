//! Reading and writing signal files.
//!
//! Two formats are supported. CSV holds one signal per line as
//! comma-separated decimals with no header; blank lines are ignored. JSON
//! holds an array of arrays of numbers. In both formats every signal in a
//! file must have the same length, and values are written with the shortest
//! decimal representation that round-trips the underlying binary value.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalFormat {
    Csv,
    Json,
}

/// Reads every signal from `path`, enforcing the one-length-per-file rule.
pub fn read_signals(path: &Path, format: SignalFormat) -> Result<Vec<Vec<f64>>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    let rows = match format {
        SignalFormat::Csv => parse_csv(&text, path)?,
        SignalFormat::Json => serde_json::from_str::<Vec<Vec<f64>>>(&text)
            .map_err(|e| format!("cannot parse {} as a JSON array of arrays: {}", path.display(), e))?,
    };
    validate_rows(&rows, path)?;
    Ok(rows)
}

/// Writes `rows` to `path` in the requested format.
pub fn write_signals(path: &Path, format: SignalFormat, rows: &[Vec<f64>]) -> Result<(), String> {
    let text = match format {
        SignalFormat::Csv => render_csv(rows),
        SignalFormat::Json => {
            let mut body = serde_json::to_string(rows)
                .map_err(|e| format!("cannot serialize output: {}", e))?;
            body.push('\n');
            body
        }
    };
    fs::write(path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e))
}

fn parse_csv(text: &str, path: &Path) -> Result<Vec<Vec<f64>>, String> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| {
                format!(
                    "{}:{}: cannot parse {:?} as a number",
                    path.display(),
                    idx + 1,
                    token
                )
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn render_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        for (i, value) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", value);
        }
        out.push('\n');
    }
    out
}

fn validate_rows(rows: &[Vec<f64>], path: &Path) -> Result<(), String> {
    if rows.is_empty() {
        return Err(format!("{}: no signals found", path.display()));
    }
    let len = rows[0].len();
    if len == 0 {
        return Err(format!("{}: signals must not be empty", path.display()));
    }
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != len {
            return Err(format!(
                "{}: signal {} has length {} but earlier signals have length {}",
                path.display(),
                idx,
                row.len(),
                len
            ));
        }
    }
    Ok(())
}
