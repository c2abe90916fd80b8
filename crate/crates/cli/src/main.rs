//! `dirac-step`: scattering tables, sweeps, limits, verification suites and
//! wavefunction samples for a Dirac particle at a potential step.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

// `!(a < b)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dirac-step",
    version,
    about = "Dirac particle scattering off a potential step"
)]
pub struct Cli {
    /// Decimal places in printed tables.
    #[arg(long, global = true, default_value_t = 10)]
    pub precision: usize,

    /// Directory for machine-readable summaries.
    #[arg(long, global = true, default_value = ".")]
    pub output_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form solution for one setup.
    Scatter(ScatterArgs),
    /// One row per setup over a range of step heights or energies, as CSV.
    Sweep(SweepArgs),
    /// Impenetrable, nonrelativistic or infinite-step limit.
    Limit(LimitArgs),
    /// Randomised property suites.
    Verify(VerifyArgs),
    /// Sample a solution on a grid and write CSV plus a metadata sidecar.
    Wavefunction(WavefunctionArgs),
}

#[derive(Debug, Args)]
pub struct Particle {
    /// Rest energy mc²; 0 selects the massless formulas.
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,

    /// Transmitted-wave convention: main, a3, traditional or b5.
    #[arg(long, default_value = "main")]
    pub convention: String,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub energy: f64,
    #[arg(long)]
    pub step_height: f64,
    #[command(flatten)]
    pub particle: Particle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vary {
    StepHeight,
    Energy,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub vary: Vary,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Fixed energy when varying the step height.
    #[arg(long)]
    pub energy: Option<f64>,
    /// Fixed step height when varying the energy.
    #[arg(long)]
    pub step_height: Option<f64>,
    #[command(flatten)]
    pub particle: Particle,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Impenetrable,
    Nonrel,
    Infinite,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub energy: f64,
    #[arg(long, value_enum)]
    pub which: Which,
    #[command(flatten)]
    pub particle: Particle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    ClosedVsOracle,
    Limits,
    Conservation,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Trials per suite (per regime for conservation). Defaults: 1000
    /// conservation, 100 limits, 20 closed-vs-oracle.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Smoothing width of the oracle step.
    #[arg(long, default_value_t = 1e-3)]
    pub width: f64,
    /// Oracle integration tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Compare the w → 0 extrapolation (4R(w/2) − R(w))/3 instead of R(w).
    #[arg(long)]
    pub richardson: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitChoice {
    Impenetrable,
    Nonrel,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long)]
    pub energy: f64,
    #[arg(long, conflicts_with = "limit", required_unless_present = "limit")]
    pub step_height: Option<f64>,
    #[arg(long, value_enum)]
    pub limit: Option<LimitChoice>,
    /// Sampling interval as `XMIN,XMAX`.
    #[arg(long, default_value = "-10,10", allow_hyphen_values = true, value_parser = format::parse_range)]
    pub range: (f64, f64),
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[command(flatten)]
    pub particle: Particle,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
