//! Anytime-valid confidence sequences for the coefficient of a scalar AR(1)
//! model `y_t = alpha y_{t-1} + e_t`, `e_t ~ N(0, 1)`.
//!
//! For every candidate `alpha` a Gaussian-mixture likelihood-ratio martingale
//! `S_t^alpha` is tracked through the sufficient statistics
//! `gamma0 = sum y_{t-1}^2` and `gamma1 = sum y_{t-1} y_t`. The set where
//! `S_t^alpha <= 1/delta` is a closed interval around the least-squares
//! estimate, and by Ville's inequality the truth stays inside the running
//! intersection of these intervals for all `t` with probability at least
//! `1 - delta`.
//!
//! ```
//! use arconf_core::{Ar1Config, ConfSeqState, MixtureParams, Path};
//!
//! let path = Path::gaussian(Ar1Config::new(0.8, 0.0, 1000, 7)?)?;
//! let mut state = ConfSeqState::new(path.y0(), MixtureParams::default(), 0.01)?;
//! for &y in path.observations() {
//!     state.advance(y)?;
//! }
//! assert!(!state.rejected());
//! # Ok::<(), arconf_core::Error>(())
//! ```

pub mod ar1;
pub mod baselines;
pub mod confseq;
pub mod error;
pub mod harness;
pub mod martingale;
pub mod normal;
pub mod stats;
pub mod sum;

pub use ar1::{
    degenerate_innovations, simulate_path, Ar1Config, ConstantInnovations, GaussianInnovations,
    InnovationSource, Path, ReplayInnovations,
};
pub use baselines::{
    simulate_unit_root_quantiles, tau_statistic, weak_interval_normal, weak_interval_unit_root,
    UnitRootQuantiles,
};
pub use confseq::{
    intersect, prediction_interval, strong_interval, ConfSeqState, Interval, StreamRow,
    DEFAULT_DELTA,
};
pub use error::{Error, Result};
pub use harness::{
    run_coverage_experiment, run_figure_curve, run_table_experiment, CoverageReport,
    ExperimentConfig,
};
pub use martingale::{log_lr, log_mixture, martingale_curve, AlphaGrid, MixtureParams};
pub use stats::GammaStats;

/// Shortest round-trip decimal, with `inf`, `-inf` and `nan` spelled in lower case.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        x.to_string()
    }
}

/// Inverse of [`format_f64`]; also accepts any spelling `str::parse` does.
pub fn parse_f64(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        other => other.parse().ok(),
    }
}
