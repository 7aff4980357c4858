//! Classical fixed-horizon ("weak") intervals for comparison.
//!
//! The studentised statistic `tau = (gamma1/gamma0 - alpha) sqrt(gamma0)` is
//! asymptotically N(0, 1) off the unit root and converges to
//! `(W(1)^2 - 1) / (2 sqrt(int_0^1 W(s)^2 ds))` at `|alpha| = 1`. Quantiles of
//! the latter are estimated here by simulating discretised Brownian paths.
//! Intervals built from either law are approximate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ar1::{GaussianInnovations, InnovationSource};
use crate::confseq::{check_delta, Interval};
use crate::error::{Error, Result};
use crate::normal;
use crate::stats::GammaStats;

/// `(gamma1/gamma0 - alpha) * sqrt(gamma0)`.
pub fn tau_statistic(stats: &GammaStats, alpha: f64) -> Result<f64> {
    let ls = stats.ls_estimate()?;
    Ok((ls - alpha) * stats.gamma0().sqrt())
}

/// Normal-approximation interval `ls +/- z_{delta/2} / sqrt(gamma0)`.
pub fn weak_interval_normal(stats: &GammaStats, delta: f64) -> Result<Interval> {
    check_delta(delta)?;
    let ls = stats.ls_estimate()?;
    let z = normal::upper_quantile(delta / 2.0)?;
    Interval::centred(ls, z / stats.gamma0().sqrt())
}

/// Simulated lower and upper `delta/2` quantiles of the unit-root limit law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitRootQuantiles {
    pub delta: f64,
    pub grid_n: usize,
    pub reps: usize,
    pub seed: u64,
    pub q_lo: f64,
    pub q_hi: f64,
}

impl UnitRootQuantiles {
    /// Hand-specified quantiles, e.g. from a published table.
    pub fn from_values(delta: f64, q_lo: f64, q_hi: f64) -> Result<Self> {
        check_delta(delta)?;
        if !(q_lo.is_finite() && q_hi.is_finite() && q_lo < q_hi) {
            return Err(Error::InvalidConfig(format!(
                "quantiles need q_lo < q_hi, got {q_lo}, {q_hi}"
            )));
        }
        Ok(Self {
            delta,
            grid_n: 0,
            reps: 0,
            seed: 0,
            q_lo,
            q_hi,
        })
    }
}

/// One draw of the discretised limit statistic.
///
/// `source` supplies standard normal increments; the Brownian path is
/// `W(k/n) = (z_1 + ... + z_k) / sqrt(n)` and the integral is the left
/// Riemann sum `sum_{k<n} W(k/n)^2 / n`, the same ordering as `gamma0`.
pub fn unit_root_statistic<S: InnovationSource>(mut source: S, grid_n: usize) -> Result<f64> {
    if grid_n < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid_n must be at least 2, got {grid_n}"
        )));
    }
    let n = grid_n as f64;
    // Work on the random-walk scale and rescale at the end.
    let mut walk = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for _ in 0..grid_n {
        sum_sq += walk * walk;
        walk += source.draw();
    }
    let integral = sum_sq / (n * n);
    if !integral.is_finite() || integral <= 0.0 {
        return Err(Error::DegenerateStatistic(format!(
            "Brownian integral is {integral}; the increment source produced a flat path"
        )));
    }
    let w1_sq = walk * walk / n;
    Ok(0.5 * (w1_sq - 1.0) / integral.sqrt())
}

fn check_simulation(grid_n: usize, reps: usize) -> Result<()> {
    if grid_n < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid_n must be at least 2, got {grid_n}"
        )));
    }
    if reps < 2 {
        return Err(Error::InvalidConfig(format!(
            "reps must be at least 2, got {reps}"
        )));
    }
    Ok(())
}

/// `reps` independent draws; draw `r` uses substream `r` of `seed`.
pub fn simulate_unit_root_statistics(grid_n: usize, reps: usize, seed: u64) -> Result<Vec<f64>> {
    check_simulation(grid_n, reps)?;
    (0..reps as u64)
        .into_par_iter()
        .map(|r| unit_root_statistic(GaussianInnovations::from_seed_stream(seed, r), grid_n))
        .collect()
}

/// Linear-interpolation sample quantile of sorted data (Hyndman–Fan type 7).
pub fn empirical_quantile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn simulate_unit_root_quantiles(
    delta: f64,
    grid_n: usize,
    reps: usize,
    seed: u64,
) -> Result<UnitRootQuantiles> {
    check_delta(delta)?;
    let mut draws = simulate_unit_root_statistics(grid_n, reps, seed)?;
    draws.sort_by(f64::total_cmp);
    let q_lo = empirical_quantile(&draws, delta / 2.0);
    let q_hi = empirical_quantile(&draws, 1.0 - delta / 2.0);
    if q_lo.is_nan() || q_hi.is_nan() || q_lo >= q_hi {
        return Err(Error::DegenerateStatistic(format!(
            "simulated quantiles collapsed: q_lo={q_lo}, q_hi={q_hi}"
        )));
    }
    Ok(UnitRootQuantiles {
        delta,
        grid_n,
        reps,
        seed,
        q_lo,
        q_hi,
    })
}

/// Interval `{alpha : q_lo <= tau(alpha) <= q_hi}`, asymmetric about the estimate.
pub fn weak_interval_unit_root(stats: &GammaStats, quantiles: &UnitRootQuantiles) -> Result<Interval> {
    let ls = stats.ls_estimate()?;
    let root = stats.gamma0().sqrt();
    Interval::closed(ls - quantiles.q_hi / root, ls - quantiles.q_lo / root)
}
