//! Monte Carlo experiments: width tables, coverage checks and capital curves.
//!
//! Replication `r` simulates its path from substream `r` of `base_seed`, so
//! replication 0 is the same path `Path::gaussian` produces for that seed.
//! Replications run in parallel and are reduced in index order, which keeps
//! reports bit-identical for a given configuration.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ar1::{simulate_path, Ar1Config, GaussianInnovations, Path};
use crate::baselines::{
    empirical_quantile, simulate_unit_root_quantiles, weak_interval_normal,
    weak_interval_unit_root, UnitRootQuantiles,
};
use crate::confseq::{check_delta, ConfSeqState, Interval, DEFAULT_DELTA};
use crate::error::{Error, Result};
use crate::format_f64;
use crate::martingale::{
    capital, curve_from_stats, log_mixture, AlphaGrid, CurvePoint, MixtureParams,
    DEFAULT_MIXTURE_SD,
};
use crate::stats::GammaStats;

/// Offset applied to `base_seed` for the unit-root quantile simulation so its
/// substreams never coincide with the path substreams.
const QUANTILE_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub alpha_true: f64,
    pub y0: f64,
    pub horizon: usize,
    pub a: f64,
    pub delta: f64,
    pub replications: usize,
    pub base_seed: u64,
    pub alpha_grid: AlphaGrid,
    /// Brownian grid size for the unit-root weak baseline.
    pub quantile_grid_n: usize,
    /// Replications for the unit-root weak baseline.
    pub quantile_reps: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::new(0.8)
    }
}

impl ExperimentConfig {
    /// Defaults (`y0 = 0`, `T = 1000`, `a = 0.1`, `delta = 0.01`, 500
    /// replications) with a grid of half-width 0.3 around `alpha_true`.
    pub fn new(alpha_true: f64) -> Self {
        Self {
            alpha_true,
            y0: 0.0,
            horizon: 1000,
            a: DEFAULT_MIXTURE_SD,
            delta: DEFAULT_DELTA,
            replications: 500,
            base_seed: 1,
            alpha_grid: AlphaGrid {
                lo: alpha_true - 0.3,
                hi: alpha_true + 0.3,
                step: 0.005,
            },
            quantile_grid_n: 1000,
            quantile_reps: 20_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        Ar1Config::new(self.alpha_true, self.y0, self.horizon, self.base_seed)?;
        MixtureParams::new(self.a)?;
        check_delta(self.delta)?;
        if self.replications == 0 {
            return Err(Error::InvalidConfig("replications must be at least 1".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> MixtureParams {
        MixtureParams::new(self.a).expect("validated mixture scale")
    }

    pub fn weak_method(&self) -> WeakMethod {
        if self.alpha_true.abs() == 1.0 {
            WeakMethod::UnitRoot
        } else {
            WeakMethod::Normal
        }
    }

    /// Path of replication `rep`.
    pub fn path(&self, rep: u64) -> Result<Path> {
        let config = Ar1Config::new(self.alpha_true, self.y0, self.horizon, self.base_seed)?;
        simulate_path(config, GaussianInnovations::from_seed_stream(self.base_seed, rep))
    }
}

/// Which limit law the approximate weak interval uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakMethod {
    Normal,
    UnitRoot,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum WeakBaseline {
    Normal,
    UnitRoot(UnitRootQuantiles),
}

impl WeakBaseline {
    fn prepare(config: &ExperimentConfig) -> Result<Self> {
        Ok(match config.weak_method() {
            WeakMethod::Normal => Self::Normal,
            WeakMethod::UnitRoot => Self::UnitRoot(simulate_unit_root_quantiles(
                config.delta,
                config.quantile_grid_n,
                config.quantile_reps,
                config.base_seed.wrapping_add(QUANTILE_SEED_OFFSET),
            )?),
        })
    }

    fn interval(&self, stats: &GammaStats, delta: f64) -> Result<Interval> {
        match self {
            Self::Normal => weak_interval_normal(stats, delta),
            Self::UnitRoot(q) => weak_interval_unit_root(stats, q),
        }
    }

    fn quantiles(&self) -> Option<UnitRootQuantiles> {
        match self {
            Self::Normal => None,
            Self::UnitRoot(q) => Some(*q),
        }
    }
}

/// Outcome of one replication at the final time `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    /// `alpha_true` stayed inside the running intersection for every `t <= T`.
    pub covered: bool,
    /// Per-step strong interval at `T`.
    pub strong: Interval,
    pub running: Interval,
    pub weak: Option<Interval>,
    pub log_s_true: f64,
    pub stats: GammaStats,
}

fn run_replication(
    config: &ExperimentConfig,
    rep: u64,
    weak: Option<&WeakBaseline>,
) -> Result<Replication> {
    let path = config.path(rep)?;
    let params = config.params();
    let mut state = ConfSeqState::new(path.y0(), params, config.delta)?;
    for &y in path.observations() {
        state.advance(y)?;
    }
    let stats = *state.stats();
    let weak = weak
        .map(|w| w.interval(&stats, config.delta))
        .transpose()?;
    Ok(Replication {
        // The running intersection only shrinks, so membership at T is
        // membership at every t <= T.
        covered: state.running().contains(config.alpha_true),
        strong: state.current(),
        running: state.running(),
        weak,
        log_s_true: log_mixture(config.alpha_true, params, &stats)?,
        stats,
    })
}

/// Per-replication outcomes in index order.
pub fn run_replications(config: &ExperimentConfig, with_weak: bool) -> Result<Vec<Replication>> {
    config.validate()?;
    let weak = if with_weak {
        Some(WeakBaseline::prepare(config)?)
    } else {
        None
    };
    (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| run_replication(config, rep, weak.as_ref()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// Fraction of replications whose running intersection kept `alpha_true`.
    pub coverage_freq: f64,
    pub mean_strong_width: f64,
    pub median_strong_width: f64,
    /// Labelled approximate: built from an asymptotic law of `tau`.
    pub mean_weak_width: Option<f64>,
    pub median_weak_width: Option<f64>,
    /// Fraction of replications whose weak interval at `T` held `alpha_true`.
    pub weak_coverage_freq: Option<f64>,
    pub weak_method: Option<WeakMethod>,
    pub unit_root_quantiles: Option<UnitRootQuantiles>,
    /// Sample mean of `S_T^{alpha_true}`.
    pub martingale_mean_at_t: f64,
    /// Sample standard error of that mean.
    pub martingale_se_at_t: f64,
    pub rejections: usize,
    pub replications: usize,
    pub config: ExperimentConfig,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn median(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    empirical_quantile(&sorted, 0.5)
}

fn summarize(
    config: &ExperimentConfig,
    reps: &[Replication],
    weak: Option<&WeakBaseline>,
) -> CoverageReport {
    let n = reps.len() as f64;
    let strong: Vec<f64> = reps.iter().map(|r| r.strong.width()).collect();
    let capitals: Vec<f64> = reps.iter().map(|r| capital(r.log_s_true)).collect();
    let cap_mean = mean(&capitals);
    let cap_var = if reps.len() > 1 {
        capitals.iter().map(|c| (c - cap_mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        f64::NAN
    };
    let weak_widths: Option<Vec<f64>> = reps
        .iter()
        .map(|r| r.weak.map(|w| w.width()))
        .collect();
    let weak_cover = reps
        .iter()
        .map(|r| r.weak.map(|w| w.contains(config.alpha_true)))
        .collect::<Option<Vec<bool>>>()
        .map(|v| v.iter().filter(|&&c| c).count() as f64 / n);
    CoverageReport {
        coverage_freq: reps.iter().filter(|r| r.covered).count() as f64 / n,
        mean_strong_width: mean(&strong),
        median_strong_width: median(&strong),
        mean_weak_width: weak_widths.as_deref().map(mean),
        median_weak_width: weak_widths.as_deref().map(median),
        weak_coverage_freq: weak_cover,
        weak_method: weak.map(|_| config.weak_method()),
        unit_root_quantiles: weak.and_then(WeakBaseline::quantiles),
        martingale_mean_at_t: cap_mean,
        martingale_se_at_t: (cap_var / n).sqrt(),
        rejections: reps.iter().filter(|r| r.running.is_empty()).count(),
        replications: reps.len(),
        config: *config,
    }
}

/// Strong and weak widths over replications, as in the paper-style tables.
pub fn run_table_experiment(config: &ExperimentConfig) -> Result<CoverageReport> {
    config.validate()?;
    let weak = WeakBaseline::prepare(config)?;
    let reps = (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| run_replication(config, rep, Some(&weak)))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(config, &reps, Some(&weak)))
}

/// Time-uniform coverage of the running intersection and the mean terminal capital.
pub fn run_coverage_experiment(config: &ExperimentConfig) -> Result<CoverageReport> {
    let reps = run_replications(config, false)?;
    Ok(summarize(config, &reps, None))
}

/// One realized path: the strong and weak intervals at `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinglePathTable {
    pub strong: Interval,
    pub weak: Interval,
    pub weak_method: WeakMethod,
    pub stats: GammaStats,
}

pub fn run_single_path(config: &ExperimentConfig, rep: u64) -> Result<SinglePathTable> {
    config.validate()?;
    let weak = WeakBaseline::prepare(config)?;
    let r = run_replication(config, rep, Some(&weak))?;
    Ok(SinglePathTable {
        strong: r.strong,
        weak: r.weak.expect("weak baseline requested"),
        weak_method: config.weak_method(),
        stats: r.stats,
    })
}

pub const TABLE_WEAK_LABEL: &str = "weak (approximate)";
pub const TABLE_STRONG_LABEL: &str = "strong";

/// `interval_type,lower,upper,width` for one path.
pub fn table_csv_single(table: &SinglePathTable) -> String {
    let mut out = String::from("interval_type,lower,upper,width\n");
    for (label, i) in [(TABLE_WEAK_LABEL, table.weak), (TABLE_STRONG_LABEL, table.strong)] {
        let _ = writeln!(
            out,
            "{label},{},{},{}",
            format_f64(i.lower()),
            format_f64(i.upper()),
            format_f64(i.width())
        );
    }
    out
}

/// Single-path columns for replication 0 followed by aggregate columns.
pub fn table_csv_aggregate(table: &SinglePathTable, report: &CoverageReport) -> String {
    let mut out =
        String::from("interval_type,lower,upper,width,mean_width,median_width,coverage,replications\n");
    let opt = |x: Option<f64>| format_f64(x.unwrap_or(f64::NAN));
    let _ = writeln!(
        out,
        "{TABLE_WEAK_LABEL},{},{},{},{},{},{},{}",
        format_f64(table.weak.lower()),
        format_f64(table.weak.upper()),
        format_f64(table.weak.width()),
        opt(report.mean_weak_width),
        opt(report.median_weak_width),
        opt(report.weak_coverage_freq),
        report.replications
    );
    let _ = writeln!(
        out,
        "{TABLE_STRONG_LABEL},{},{},{},{},{},{},{}",
        format_f64(table.strong.lower()),
        format_f64(table.strong.upper()),
        format_f64(table.strong.width()),
        format_f64(report.mean_strong_width),
        format_f64(report.median_strong_width),
        format_f64(report.coverage_freq),
        report.replications
    );
    out
}

/// Terminal capital curve `alpha -> ln S_T^alpha` for replication 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub points: Vec<CurvePoint>,
    pub ls_estimate: f64,
    pub gamma0: f64,
    pub gamma1: f64,
}

pub fn run_figure_curve(config: &ExperimentConfig) -> Result<CurveData> {
    config.validate()?;
    config.alpha_grid.validate()?;
    let path = config.path(0)?;
    let stats = GammaStats::from_values(path.values())?;
    let points = curve_from_stats(&stats, config.params(), &config.alpha_grid.points())?;
    Ok(CurveData {
        points,
        ls_estimate: stats.ls_estimate()?,
        gamma0: stats.gamma0(),
        gamma1: stats.gamma1(),
    })
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (mean(&lx), mean(&ly));
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
