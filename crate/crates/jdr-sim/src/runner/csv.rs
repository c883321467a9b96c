//! CSV emission and parsing for sweep results.
//!
//! The column set and order are a stable interface: plotting, downstream
//! analysis, and the byte-for-byte determinism check all depend on them.
//! Real values are written in scientific notation with 12 significant
//! digits, which round-trips every f64 produced by the sweep to well below
//! any physically meaningful difference while keeping files diffable.

use std::fs;
use std::path::Path;

use super::{RunnerError, SweepRow};

/// Exact header line of a sweep CSV (no trailing newline).
pub const CSV_HEADER: &str = "magnitude,alpha_sq,nbar,p_err_classical,p_err_optimal,\
                              p_err_pgm,p_err_vqc,ykl_residual,train_iterations,seed";

/// Render rows to CSV text: header plus one line per row, `\n` terminated.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let real = |v: f64| format!("{v:.11e}");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            real(row.magnitude),
            real(row.alpha_sq),
            real(row.nbar),
            real(row.p_err_classical),
            real(row.p_err_optimal),
            real(row.p_err_pgm),
            real(row.p_err_vqc),
            real(row.ykl_residual),
            row.train_iterations,
            row.seed,
        ));
    }
    out
}

/// Write rows as CSV to `path`.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), RunnerError> {
    fs::write(path, format_csv(rows)).map_err(|e| RunnerError::io(path, e))
}

/// Parse CSV text produced by [`format_csv`] back into rows.
///
/// The header must match [`CSV_HEADER`] exactly; every data line must have
/// ten fields. Errors cite 1-based line numbers.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, RunnerError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| RunnerError::config("CSV is empty".to_string()))?;
    if header != CSV_HEADER {
        return Err(RunnerError::config(format!(
            "CSV header mismatch: expected {CSV_HEADER:?}, got {header:?}"
        )));
    }
    let mut rows = Vec::new();
    for (index, line) in lines.enumerate() {
        let line_no = index + 2;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(RunnerError::config(format!(
                "line {line_no}: expected 10 fields, got {}",
                fields.len()
            )));
        }
        let real = |i: usize| -> Result<f64, RunnerError> {
            fields[i].parse::<f64>().map_err(|e| {
                RunnerError::config(format!("line {line_no}, field {}: {e}", i + 1))
            })
        };
        rows.push(SweepRow {
            magnitude: real(0)?,
            alpha_sq: real(1)?,
            nbar: real(2)?,
            p_err_classical: real(3)?,
            p_err_optimal: real(4)?,
            p_err_pgm: real(5)?,
            p_err_vqc: real(6)?,
            ykl_residual: real(7)?,
            train_iterations: fields[8].parse().map_err(|e| {
                RunnerError::config(format!("line {line_no}, field 9: {e}"))
            })?,
            seed: fields[9].parse().map_err(|e| {
                RunnerError::config(format!("line {line_no}, field 10: {e}"))
            })?,
        });
    }
    Ok(rows)
}
