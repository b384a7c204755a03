//! CSV and JSON rendering of sweep records.
//!
//! Floats are printed with `{:.16e}` (17 significant digits) so a decimal
//! round-trip is bit-exact and two runs of the same config produce
//! byte-identical output. Absent differences render as an empty CSV cell
//! and a JSON `null`.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::sweep::SweepRecord;
use crate::{HarnessError, Result};

/// Output encodings for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// The exact CSV column set, in order.
pub const CSV_HEADER: &str =
    "n, log_p, ratio_log, second_diff, predicted_ratio_log, predicted_leading, converged, min_pivot";

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

fn fmt_opt_json(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_else(|| "null".to_string())
}

/// Render records as CSV. Empty input is an error: an empty table is
/// indistinguishable from a truncated file.
pub fn to_csv(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::EmptyEmit);
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{}, {}, {}, {}, {}, {}, {}, {}\n",
            r.n,
            fmt_f(r.log_p),
            fmt_opt(r.ratio_log),
            fmt_opt(r.second_diff),
            fmt_f(r.predicted_ratio_log),
            fmt_f(r.predicted_leading),
            r.converged,
            fmt_f(r.min_pivot),
        ));
    }
    Ok(out)
}

/// Render records as a JSON array with the same field names as the CSV
/// columns. Built by hand so that number formatting (and therefore the
/// round-trip guarantee) is shared with the CSV path.
pub fn to_json(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(HarnessError::EmptyEmit);
    }
    let mut out = String::from("[\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"n\": {}, \"log_p\": {}, \"ratio_log\": {}, \"second_diff\": {}, \
             \"predicted_ratio_log\": {}, \"predicted_leading\": {}, \
             \"converged\": {}, \"min_pivot\": {}}}",
            r.n,
            fmt_f(r.log_p),
            fmt_opt_json(r.ratio_log),
            fmt_opt_json(r.second_diff),
            fmt_f(r.predicted_ratio_log),
            fmt_f(r.predicted_leading),
            r.converged,
            fmt_f(r.min_pivot),
        ));
        out.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    Ok(out)
}

/// Render in the requested format.
pub fn render(records: &[SweepRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => to_json(records),
    }
}

/// Write `text` to a file, or to stdout when `out` is `None`.
pub fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            let stdout = std::io::stdout();
            stdout
                .lock()
                .write_all(text.as_bytes())
                .map_err(|source| HarnessError::Io {
                    dest: "stdout".to_string(),
                    source,
                })
        }
        Some(path) => fs::write(path, text).map_err(|source| HarnessError::Io {
            dest: path.display().to_string(),
            source,
        }),
    }
}
