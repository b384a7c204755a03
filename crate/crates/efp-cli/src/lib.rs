//! Command-line companion to the arc-kernel determinant library.
//!
//! Everything with a standard-library footprint lives here: argument
//! parsing, JSON configuration, CSV/JSON emission, the field-to-arc
//! conversion, determinant sweeps over the string length, and the
//! aggregated verification suite. The numerics stay in `efp-core`.

pub mod cli;
pub mod config;
pub mod emit;
pub mod field;
pub mod sweep;
pub mod verify;

use thiserror::Error;

/// Everything the harness can refuse to do.
///
/// [`cli::run`] maps these onto process exit codes: invalid input exits
/// with 2, a numerical-trust failure (no row survived the pivot guard)
/// with 3. Verification failures are not errors — `verify` reports them
/// and exits with 1.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("field strength {0} is outside (0, 2)")]
    FieldOutOfRange(f64),
    #[error("invalid complex literal `{literal}`: {reason}")]
    BadComplex { literal: String, reason: &'static str },
    #[error("config {path}: {detail}")]
    Config { path: String, detail: String },
    #[error("exactly one of `psi` and `field_h` must be given")]
    PsiFieldConflict,
    #[error("n_min {0} exceeds n_max {1}")]
    BadRange(u32, u32),
    #[error("nothing to emit: the record list is empty")]
    EmptyEmit,
    #[error("writing {dest}: {source}")]
    Io {
        dest: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no usable rows: {0}")]
    AllRowsSkipped(String),
    #[error(transparent)]
    Core(#[from] efp_core::Error),
}

pub type Result<T> = core::result::Result<T, HarnessError>;

/// Process exit code for a harness error: 3 when the pivot guard left no
/// trustworthy result, 2 (invalid input) for everything else. Verification
/// failures exit with 1 but are reported, not returned as errors.
pub fn exit_code(e: &HarnessError) -> i32 {
    match e {
        HarnessError::AllRowsSkipped(_) => 3,
        _ => 2,
    }
}
