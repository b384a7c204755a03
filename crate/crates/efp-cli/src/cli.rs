//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input (both
//! clap usage errors and semantic validation), 3 numerical-trust failure
//! (a pivot guard fired and no trustworthy result exists).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use efp_core::contour::{build_arc, build_halfline, ModelParams};
use efp_core::fredholm::{assemble, assemble_finite_rank, fredholm_logdet};

use crate::config::{self, ConfigFile};
use crate::emit::{self, Format};
use crate::field::psi_from_field;
use crate::sweep::run_sweep;
use crate::verify::{run_verify, Level};
use crate::{HarnessError, Result};

#[derive(Parser)]
#[command(
    name = "efp",
    version,
    about = "Fredholm determinants for the arc kernel: single values, sweeps, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute log P(n) for a single string length
    Compute(ComputeArgs),
    /// Sweep log P(n) over a range of n and emit CSV or JSON
    Sweep(SweepArgs),
    /// Run the verification suite; exits 1 if any check fails
    Verify(VerifyArgs),
    /// Convert a field strength to the arc angle
    Psi(PsiArgs),
}

/// Model parameters shared by `compute` and `sweep`. Command-line flags
/// override config-file values.
#[derive(Args)]
struct ModelFlags {
    /// Arc angle in (-π, 0), radians
    #[arg(long, allow_hyphen_values = true, conflicts_with = "field")]
    psi: Option<f64>,

    /// Field strength in (0, 2); converted to the arc angle
    #[arg(long)]
    field: Option<f64>,

    /// Exposure polynomial coefficients c0,c1,... (each "re", "imi" or "re+imi")
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,

    /// Coupling constant in [0, 1] [default: 1]
    #[arg(long)]
    gamma: Option<f64>,

    /// Arc quadrature nodes [default: 128]
    #[arg(long)]
    nodes: Option<usize>,

    /// Half-line quadrature nodes for the finite-rank cross-check [default: 64]
    #[arg(long)]
    hl_nodes: Option<usize>,

    /// JSON config file supplying any of the above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    model: ModelFlags,

    /// String length n
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelFlags,

    /// First string length [default: 0]
    #[arg(long)]
    n_min: Option<u32>,

    /// Last string length, inclusive [default: 12]
    #[arg(long)]
    n_max: Option<u32>,

    /// Output encoding
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output destination: a path, or "stdout"
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the full-size suite (128-node grids, 50 sample points) instead
    /// of the quick one (64 nodes, 10 points)
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct PsiArgs {
    /// Field strength in (0, 2)
    #[arg(long)]
    field: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Flags merged over the config file, with defaults applied.
struct Resolved {
    psi: f64,
    phi: Vec<Complex64>,
    gamma: f64,
    nodes: usize,
    hl_nodes: usize,
    n_min: Option<u32>,
    n_max: Option<u32>,
    output: Option<String>,
}

fn resolve(model: &ModelFlags) -> Result<Resolved> {
    let cfg = match &model.config {
        Some(path) => config::load(path)?,
        None => ConfigFile::default(),
    };
    let psi = match (model.psi, model.field) {
        (Some(psi), None) => psi,
        (None, Some(h)) => psi_from_field(h)?.0,
        (Some(_), Some(_)) => return Err(HarnessError::PsiFieldConflict),
        (None, None) => match (cfg.psi, cfg.field_h) {
            (Some(psi), None) => psi,
            (None, Some(h)) => psi_from_field(h)?.0,
            _ => return Err(HarnessError::PsiFieldConflict),
        },
    };
    let phi = match &model.phi {
        Some(list) => config::parse_complex_list(list)?,
        None => cfg
            .phi_coeffs
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|s| config::parse_complex(s))
            .collect::<Result<_>>()?,
    };
    Ok(Resolved {
        psi,
        phi,
        gamma: model.gamma.or(cfg.gamma).unwrap_or(1.0),
        nodes: model.nodes.or(cfg.m_nodes).unwrap_or(128),
        hl_nodes: model.hl_nodes.or(cfg.hl_nodes).unwrap_or(64),
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        output: cfg.output,
    })
}

/// Parse arguments, dispatch, and translate errors into exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            crate::exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Compute(args) => {
            let r = resolve(&args.model)?;
            let params = ModelParams::new(args.n, r.psi, r.phi, r.gamma)?;
            let ld = fredholm_logdet(&params, r.nodes)?;
            println!("log_abs = {:.16e}", ld.log_abs);
            println!("arg = {:.16e}", ld.arg);
            println!("min_pivot = {:.3e}", ld.min_pivot);
            println!("converged = {}", ld.converged);
            // Independent route to the same matrix: resolvent-free assembly
            // against the finite-rank factorization on the half line.
            let aq = build_arc(r.psi, r.nodes)?;
            let hq = build_halfline(r.hl_nodes)?;
            let delta = assemble(&aq, &params)?
                .sub(&assemble_finite_rank(&aq, &hq, &params)?)
                .max_abs_entry();
            println!("finite_rank_delta = {delta:.3e}");
            if !ld.trusted() {
                eprintln!(
                    "pivot {:.3e} fell under the trust floor; result is not trustworthy",
                    ld.min_pivot
                );
                return Ok(3);
            }
            Ok(0)
        }
        Command::Sweep(args) => {
            let r = resolve(&args.model)?;
            let n_min = args.n_min.or(r.n_min).unwrap_or(0);
            let n_max = args.n_max.or(r.n_max).unwrap_or(12);
            let params = ModelParams::new(n_min, r.psi, r.phi, r.gamma)?;
            let result = run_sweep(&params, n_min, n_max, r.nodes)?;
            for (n, reason) in &result.skipped {
                eprintln!("skipped n={n}: {reason}");
            }
            let format = match args.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            let text = emit::render(&result.records, format)?;
            let out = args.out.or(r.output);
            let dest = out.as_deref().filter(|s| *s != "stdout").map(Path::new);
            emit::write_output(&text, dest)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let level = if args.full { Level::Full } else { Level::Quick };
            let report = run_verify(level)?;
            print!("{}", report.render());
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::Psi(args) => {
            let (psi, wrapped) = psi_from_field(args.field)?;
            println!("psi = {psi:.16e}");
            println!("wrapped = {wrapped}");
            Ok(0)
        }
    }
}
