//! JSON experiment configuration.
//!
//! A config file is a flat JSON object; unknown keys are rejected so a
//! typo cannot silently fall back to a default. Command-line flags take
//! precedence over file values, and the file is optional throughout.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::{HarnessError, Result};

/// Raw contents of a config file. Every field is optional here; defaults
/// and the psi/field exclusivity rule are applied by the caller after
/// command-line flags have been merged on top.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub psi: Option<f64>,
    pub field_h: Option<f64>,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub m_nodes: Option<usize>,
    pub hl_nodes: Option<usize>,
    pub phi_coeffs: Option<Vec<String>>,
    pub gamma: Option<f64>,
    pub output: Option<String>,
}

/// Read and parse a config file.
pub fn load(path: &Path) -> Result<ConfigFile> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        dest: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Config {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

/// Parse a complex literal in `re`, `imi`, or `re+imi` form.
///
/// Accepted shapes: `"1.5"`, `"-2e-3"`, `"0.5i"`, `"-i"`, `"1+0.5i"`,
/// `"1e-3-2e-4i"`. The split point is the last sign that is neither the
/// leading sign nor part of an exponent.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |reason: &'static str| HarnessError::BadComplex {
        literal: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad("empty literal"));
    }
    if !t.ends_with('i') {
        let re: f64 = t.parse().map_err(|_| bad("not a real number"))?;
        return Ok(Complex64::new(re, 0.0));
    }
    let body = &t[..t.len() - 1];
    // Find the split between real and imaginary parts, if any.
    let mut split = None;
    let bytes = body.as_bytes();
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
            split = Some(idx);
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("0", body),
    };
    let re: f64 = re_str.parse().map_err(|_| bad("bad real part"))?;
    let im: f64 = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_str.parse().map_err(|_| bad("bad imaginary part"))?,
    };
    Ok(Complex64::new(re, im))
}

/// Parse a comma-separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}
