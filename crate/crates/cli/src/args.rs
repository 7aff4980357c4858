use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "arconf",
    version,
    about = "Anytime-valid confidence sequences for the AR(1) coefficient"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate an AR(1) path and write it as `t,y` CSV.
    Simulate(SimulateArgs),
    /// Stream a `t,y` CSV through the confidence sequence.
    Analyze(AnalyzeArgs),
    /// Terminal capital ln S_T over a grid of coefficients.
    Curve(CurveArgs),
    /// Weak and strong interval widths, single path or Monte Carlo.
    Table(ExperimentArgs),
    /// Time-uniform coverage and terminal capital mean (JSON report).
    Coverage(ExperimentArgs),
    /// Simulated quantiles of the unit-root limit law (JSON).
    Quantiles(QuantilesArgs),
    /// Prediction interval for the next observation of a `t,y` CSV.
    Predict(PredictArgs),
}

fn parse_unit_open(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("must lie strictly between 0 and 1, got {v}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be finite, got {v}"))
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Autoregressive coefficient.
    #[arg(long, default_value_t = 0.8, value_parser = parse_finite, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Initial value y_0.
    #[arg(long, default_value_t = 0.0, value_parser = parse_finite, allow_negative_numbers = true)]
    pub y0: f64,
    /// Number of steps T.
    #[arg(long = "t", default_value_t = 1000, value_parser = parse_count)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct InferenceArgs {
    /// Standard deviation of the Gaussian mixing distribution.
    #[arg(long, default_value_t = 0.1, value_parser = parse_positive)]
    pub a: f64,
    /// Miscoverage budget of the confidence sequence.
    #[arg(long, default_value_t = 0.01, value_parser = parse_unit_open)]
    pub delta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Lowest grid coefficient [default: alpha - 0.3].
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub grid_lo: Option<f64>,
    /// Highest grid coefficient [default: alpha + 0.3].
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub grid_hi: Option<f64>,
    #[arg(long, default_value_t = 0.005, value_parser = parse_positive)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// `t,y` CSV, as written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub inference: InferenceArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0.1, value_parser = parse_positive)]
    pub a: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Use this `t,y` CSV instead of simulating a path.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub inference: InferenceArgs,
    /// Monte Carlo replications; `table` with 1 prints a single path.
    #[arg(long, default_value_t = 500, value_parser = parse_count)]
    pub reps: usize,
    /// Brownian grid size for the unit-root weak baseline.
    #[arg(long, default_value_t = 1000, value_parser = parse_count)]
    pub quantile_grid: usize,
    /// Replications for the unit-root weak baseline.
    #[arg(long, default_value_t = 20_000, value_parser = parse_count)]
    pub quantile_reps: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct QuantilesArgs {
    #[arg(long, default_value_t = 0.01, value_parser = parse_unit_open)]
    pub delta: f64,
    #[arg(long, default_value_t = 100_000, value_parser = parse_count)]
    pub reps: usize,
    /// Steps of the Brownian grid on [0, 1].
    #[arg(long, default_value_t = 4096, value_parser = parse_count)]
    pub grid: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub inference: InferenceArgs,
    /// Level of each per-coefficient prediction interval; separate from --delta.
    #[arg(long, default_value_t = 0.05, value_parser = parse_unit_open)]
    pub delta_pred: f64,
    #[command(flatten)]
    pub out: Output,
}
