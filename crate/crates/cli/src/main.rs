mod args;
mod io;

use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use arconf_core::confseq::{analyze_series, prediction_interval, ConfSeqState, StreamRow};
use arconf_core::harness::{
    run_coverage_experiment, run_figure_curve, run_single_path, run_table_experiment,
    table_csv_aggregate, table_csv_single, ExperimentConfig,
};
use arconf_core::martingale::{curve_from_stats, curve_to_csv, AlphaGrid, MixtureParams};
use arconf_core::{format_f64, simulate_unit_root_quantiles, Ar1Config, GammaStats, Path};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use serde::Serialize;
use serde_json::json;

use crate::args::{
    AnalyzeArgs, Cli, Command, CurveArgs, ExperimentArgs, GridArgs, PredictArgs, QuantilesArgs,
    SimulateArgs,
};
use crate::io::{read_series, write_output, Provenance};

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<arconf_core::Error> for Failure {
    fn from(e: arconf_core::Error) -> Self {
        Failure::Data(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Simulate(a) => simulate(a),
        Command::Analyze(a) => analyze(a),
        Command::Curve(a) => curve(a),
        Command::Table(a) => table(a),
        Command::Coverage(a) => coverage(a),
        Command::Quantiles(a) => quantiles(a),
        Command::Predict(a) => predict(a),
    }
}

/// JSON document: the result's fields plus a `provenance` object.
fn json_with_provenance<T: Serialize>(provenance: &Provenance, result: &T) -> Result<String> {
    let mut doc = serde_json::to_value(result)?;
    let map = doc
        .as_object_mut()
        .ok_or_else(|| anyhow!("result is not a JSON object"))?;
    map.insert("provenance".into(), serde_json::to_value(provenance)?);
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let m = &args.model;
    let config = Ar1Config::new(m.alpha, m.y0, m.horizon, m.seed)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let path = Path::gaussian(config)?;
    let provenance = Provenance::new(
        "simulate",
        json!({
            "alpha": m.alpha, "y0": m.y0, "t": m.horizon, "seed": m.seed,
            "innovations": "gaussian-polar-chacha8",
        }),
    );
    let content = provenance.csv_line() + &path.to_csv();
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn params(a: f64) -> Result<MixtureParams, Failure> {
    MixtureParams::new(a).map_err(|e| Failure::Usage(e.to_string()))
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let series = read_series(&args.input)?;
    let inf = &args.inference;
    let rows = analyze_series(&series.values, params(inf.a)?, inf.delta)?;
    let provenance = Provenance::new(
        "analyze",
        json!({
            "input": args.input.display().to_string(),
            "input_sha256": series.sha256,
            "a": inf.a, "delta": inf.delta,
        }),
    );
    let mut content = provenance.csv_line();
    content.push_str(StreamRow::CSV_HEADER);
    content.push('\n');
    for row in &rows {
        content.push_str(&row.to_csv_line());
        content.push('\n');
    }
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn grid(alpha: f64, g: &GridArgs) -> Result<AlphaGrid, Failure> {
    AlphaGrid::new(
        g.grid_lo.unwrap_or(alpha - 0.3),
        g.grid_hi.unwrap_or(alpha + 0.3),
        g.grid_step,
    )
    .map_err(|e| Failure::Usage(e.to_string()))
}

fn curve(args: CurveArgs) -> Result<(), Failure> {
    let m = &args.model;
    let alpha_grid = grid(m.alpha, &args.grid)?;
    let params = params(args.a)?;
    let (points, stats_json, source) = match &args.input {
        Some(input) => {
            let series = read_series(input)?;
            let stats = GammaStats::from_values(&series.values)?;
            let points = curve_from_stats(&stats, params, &alpha_grid.points())?;
            let ls = stats.ls_estimate().unwrap_or(f64::NAN);
            (
                points,
                json!({"gamma0": stats.gamma0(), "gamma1": stats.gamma1(), "ls_estimate": format_f64(ls)}),
                json!({"input": input.display().to_string(), "input_sha256": series.sha256}),
            )
        }
        None => {
            let config = ExperimentConfig {
                y0: m.y0,
                horizon: m.horizon,
                a: args.a,
                base_seed: m.seed,
                alpha_grid,
                ..ExperimentConfig::new(m.alpha)
            };
            let data = run_figure_curve(&config)?;
            (
                data.points,
                json!({"gamma0": data.gamma0, "gamma1": data.gamma1, "ls_estimate": data.ls_estimate}),
                json!({"alpha": m.alpha, "y0": m.y0, "t": m.horizon, "seed": m.seed}),
            )
        }
    };
    let provenance = Provenance::new(
        "curve",
        json!({
            "source": source, "a": args.a,
            "grid_lo": alpha_grid.lo, "grid_hi": alpha_grid.hi, "grid_step": alpha_grid.step,
            "stats": stats_json,
        }),
    );
    let content = provenance.csv_line() + &curve_to_csv(&points);
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig, Failure> {
    let m = &args.model;
    let config = ExperimentConfig {
        y0: m.y0,
        horizon: m.horizon,
        a: args.inference.a,
        delta: args.inference.delta,
        replications: args.reps,
        base_seed: m.seed,
        quantile_grid_n: args.quantile_grid,
        quantile_reps: args.quantile_reps,
        ..ExperimentConfig::new(m.alpha)
    };
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if config.weak_method() == arconf_core::harness::WeakMethod::UnitRoot
        && (config.quantile_grid_n < 2 || config.quantile_reps < 2)
    {
        return Err(Failure::Usage(
            "--quantile-grid and --quantile-reps must be at least 2".into(),
        ));
    }
    Ok(config)
}

fn experiment_provenance(command: &'static str, config: &ExperimentConfig) -> Provenance {
    Provenance::new(
        command,
        json!({
            "alpha": config.alpha_true, "y0": config.y0, "t": config.horizon,
            "a": config.a, "delta": config.delta, "reps": config.replications,
            "seed": config.base_seed, "quantile_grid": config.quantile_grid_n,
            "quantile_reps": config.quantile_reps,
            "weak_method": config.weak_method(),
        }),
    )
}

fn table(args: ExperimentArgs) -> Result<(), Failure> {
    let config = experiment_config(&args)?;
    let single = run_single_path(&config, 0)?;
    let body = if config.replications == 1 {
        table_csv_single(&single)
    } else {
        let report = run_table_experiment(&config)?;
        table_csv_aggregate(&single, &report)
    };
    let content = experiment_provenance("table", &config).csv_line() + &body;
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn coverage(args: ExperimentArgs) -> Result<(), Failure> {
    let config = experiment_config(&args)?;
    let report = run_coverage_experiment(&config)?;
    let content = json_with_provenance(&experiment_provenance("coverage", &config), &report)?;
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn quantiles(args: QuantilesArgs) -> Result<(), Failure> {
    if args.grid < 2 || args.reps < 2 {
        return Err(Failure::Usage("--grid and --reps must be at least 2".into()));
    }
    let q = simulate_unit_root_quantiles(args.delta, args.grid, args.reps, args.seed)?;
    let provenance = Provenance::new(
        "quantiles",
        json!({"delta": args.delta, "grid": args.grid, "reps": args.reps, "seed": args.seed}),
    );
    let content = json_with_provenance(&provenance, &q)?;
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

fn predict(args: PredictArgs) -> Result<(), Failure> {
    let series = read_series(&args.input)?;
    let inf = &args.inference;
    let (&y0, rest) = series.values.split_first().expect("parser yields y0");
    let mut state = ConfSeqState::new(y0, params(inf.a)?, inf.delta)?;
    for &y in rest {
        state.advance(y)?;
        if state.rejected() {
            return Err(Failure::Data(anyhow!(
                "model rejected at t = {}: the running confidence interval is empty, \
                 no prediction interval exists",
                state.stats().t()
            )));
        }
    }
    let running = state.running();
    let y_t = state.stats().last_y();
    let pred = prediction_interval(&running, y_t, args.delta_pred)
        .context("forming the prediction interval")?;
    let provenance = Provenance::new(
        "predict",
        json!({
            "input": args.input.display().to_string(),
            "input_sha256": series.sha256,
            "a": inf.a, "delta": inf.delta, "delta_pred": args.delta_pred,
        }),
    );
    let mut content = provenance.csv_line();
    content.push_str("t,y,run_lower,run_upper,pred_lower,pred_upper\n");
    content.push_str(&format!(
        "{},{},{},{},{},{}\n",
        state.stats().t(),
        format_f64(y_t),
        format_f64(running.lower()),
        format_f64(running.upper()),
        format_f64(pred.lower()),
        format_f64(pred.upper()),
    ));
    write_output(args.out.output.as_ref(), &content)?;
    Ok(())
}

