use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Accuracy limits of displaced squeezed vacuum probes.
///
/// Angles are in radians. Quadratures follow x = (a + a†)/2 (vacuum variance 1/4).
#[derive(Debug, Parser)]
#[command(name = "dsvmet", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cramér–Rao, shot-noise, Heisenberg and Hofmann limits for one probe
    Limits(LimitsArgs),
    /// Limits as a function of the phase-sensitive angle φ − θ/2
    SweepPhase(SweepPhaseArgs),
    /// Cramér–Rao limit against mean photon number along constant-r lines
    SweepNbar(SweepNbarArgs),
    /// Cramér–Rao and δ density grids over (|α|, r) with the δ-optimal cell
    Grid(GridArgs),
    /// Compare closed forms against the truncated Fock-space simulation
    Oracle(OracleArgs),
    /// Quadrature error ellipse of the probe
    Ellipse(EllipseArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    /// Displacement magnitude |α|
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Displacement phase φ
    #[arg(long, default_value_t = 0.0, conflicts_with = "phase")]
    pub phi: f64,
    /// Squeezing strength r
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    /// Squeezing phase θ
    #[arg(long, default_value_t = 0.0, conflicts_with = "phase")]
    pub theta: f64,
    /// Phase-sensitive angle φ − θ/2, applied as φ = PHASE, θ = 0 [default: unset, use --phi/--theta]
    #[arg(long)]
    pub phase: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct LimitsArgs {
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Number of repeated measurements M
    #[arg(long, default_value_t = 1)]
    pub measurements: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepPhaseArgs {
    /// Displacement magnitude |α|
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Squeezing strength r
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    /// First phase sample
    #[arg(long, default_value_t = -1.5 * PI)]
    pub start: f64,
    /// Last phase sample
    #[arg(long, default_value_t = 1.5 * PI)]
    pub stop: f64,
    /// Number of samples, endpoints included
    #[arg(long, default_value_t = 601)]
    pub points: usize,
    /// Number of repeated measurements M
    #[arg(long, default_value_t = 1)]
    pub measurements: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepNbarArgs {
    /// Phase-sensitive angle φ − θ/2
    #[arg(long, default_value_t = PI / 2.0)]
    pub phase: f64,
    /// First mean-photon sample
    #[arg(long, default_value_t = 0.0)]
    pub start: f64,
    /// Last mean-photon sample
    #[arg(long, default_value_t = 60.0)]
    pub stop: f64,
    /// Number of samples, endpoints included
    #[arg(long, default_value_t = 601)]
    pub points: usize,
    /// Comma-separated squeezing strengths, one line each
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,1.5,2")]
    pub r_values: Vec<f64>,
    /// Number of repeated measurements M
    #[arg(long, default_value_t = 1)]
    pub measurements: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct GridArgs {
    /// Phase-sensitive angle φ − θ/2
    #[arg(long, default_value_t = PI / 2.0)]
    pub phase: f64,
    /// Largest |α| on the grid (the axis starts at 0)
    #[arg(long, default_value_t = 10.0)]
    pub alpha_max: f64,
    /// Largest r on the grid (the axis starts at 0)
    #[arg(long, default_value_t = 2.5)]
    pub r_max: f64,
    /// Number of |α| samples, endpoints included
    #[arg(long, default_value_t = 201)]
    pub alpha_points: usize,
    /// Number of r samples, endpoints included
    #[arg(long, default_value_t = 201)]
    pub r_points: usize,
    /// Number of repeated measurements M
    #[arg(long, default_value_t = 1)]
    pub measurements: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleArgs {
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Truncation dimension [default: auto, smallest power of two from 64 meeting --tail-tol]
    #[arg(long)]
    pub dim: Option<usize>,
    /// Largest tolerated probability weight beyond the truncation
    #[arg(long, default_value_t = 1e-10)]
    pub tail_tol: f64,
    /// Phase step of the fidelity-based QFI
    #[arg(long, default_value_t = 1e-4)]
    pub dphi: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct EllipseArgs {
    #[command(flatten)]
    pub probe: ProbeArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}
