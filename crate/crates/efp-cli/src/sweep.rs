//! Determinant sweeps over the string length.
//!
//! A sweep evaluates `log P(n)` for a range of `n` at fixed arc and
//! coupling, tags each row with the predicted leading behaviour, and
//! forms the discrete first and second differences that the asymptotic
//! comparison lives on. Rows whose pivots fall below the trust floor are
//! dropped (with a reason), never silently patched.

use std::collections::BTreeMap;

use efp_core::asymptotics::predictions;
use efp_core::contour::{build_arc, ModelParams};
use efp_core::fredholm::{fredholm_logdet, LogDet};

use crate::{HarnessError, Result};

/// One row of a sweep.
///
/// `ratio_log` is `log P(n+1) - log P(n)` and is present only when both
/// rows were computed; `second_diff` additionally needs `n-1`. Under the
/// model assumptions `P(n+1) < P(n)`, so `ratio_log` is negative whenever
/// it is present.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: u32,
    pub log_p: f64,
    pub ratio_log: Option<f64>,
    pub second_diff: Option<f64>,
    pub predicted_ratio_log: f64,
    pub predicted_leading: f64,
    pub converged: bool,
    pub min_pivot: f64,
}

/// A completed sweep: the surviving rows plus the skip log.
#[derive(Debug, Default)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    /// `(n, reason)` for every row that was dropped.
    pub skipped: Vec<(u32, String)>,
}

/// Pivot magnitudes below this are not trusted for difference-taking.
const PIVOT_FLOOR: f64 = 1e-12;

/// Run a sweep of `fredholm_logdet` over `n_min..=n_max`.
///
/// Every row is attempted; a row only joins `records` when its LU pivots
/// stay above the trust floor. Differences are formed from surviving
/// neighbours only, so a dropped row punches a hole in `ratio_log` and
/// `second_diff` rather than corrupting them.
pub fn run_sweep(
    base: &ModelParams,
    n_min: u32,
    n_max: u32,
    m_nodes: usize,
) -> Result<SweepResult> {
    if n_min > n_max {
        return Err(HarnessError::BadRange(n_min, n_max));
    }
    // Grid-construction problems are input errors, not per-row skips.
    build_arc(base.psi, m_nodes)?;
    let mut kept: BTreeMap<u32, LogDet> = BTreeMap::new();
    let mut skipped = Vec::new();
    for n in n_min..=n_max {
        let params = base.with_n(n);
        match fredholm_logdet(&params, m_nodes) {
            Ok(ld) if ld.trusted() => {
                kept.insert(n, ld);
            }
            Ok(ld) => skipped.push((
                n,
                format!("pivot {:.3e} under the trust floor {PIVOT_FLOOR:.0e}", ld.min_pivot),
            )),
            Err(e) => skipped.push((n, e.to_string())),
        }
    }
    if kept.is_empty() {
        let detail = skipped
            .last()
            .map(|(n, r)| format!("all {} rows dropped, e.g. n={n}: {r}", skipped.len()))
            .unwrap_or_else(|| "empty range".to_string());
        return Err(HarnessError::AllRowsSkipped(detail));
    }

    let log_p = |n: u32| kept.get(&n).map(|ld| ld.log_abs);
    let mut records = Vec::with_capacity(kept.len());
    for (&n, ld) in &kept {
        let here = ld.log_abs;
        let ratio_log = log_p(n + 1).map(|next| next - here);
        let second_diff = match (n.checked_sub(1).and_then(log_p), log_p(n + 1)) {
            (Some(prev), Some(next)) => Some(next - 2.0 * here + prev),
            _ => None,
        };
        let pred = predictions(n, base.psi)?;
        records.push(SweepRecord {
            n,
            log_p: here,
            ratio_log,
            second_diff,
            predicted_ratio_log: pred.log_ratio,
            predicted_leading: pred.leading_log_p,
            converged: ld.converged,
            min_pivot: ld.min_pivot,
        });
    }
    Ok(SweepResult { records, skipped })
}
