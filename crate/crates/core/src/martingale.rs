//! Likelihood-ratio and Gaussian-mixture test martingales, in log space.
//!
//! For a hypothesised coefficient `alpha` the simple likelihood-ratio capital
//! against the alternative `alpha_true` after `T` steps is
//!
//! ```text
//! ln S = ((alpha^2 - alpha_true^2) * gamma0 + 2 (alpha_true - alpha) * gamma1) / 2
//! ```
//!
//! Mixing `alpha_true ~ N(alpha, a^2)` removes the alternative:
//!
//! ```text
//! ln S = -ln(a^2 gamma0 + 1) / 2 + a^2 (gamma1 - alpha gamma0)^2 / (2 (a^2 gamma0 + 1))
//! ```
//!
//! Values are kept as logarithms; exponentiate with [`capital`] only at the
//! reporting boundary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ar1::Path;
use crate::error::{Error, Result};
use crate::format_f64;
use crate::stats::GammaStats;

pub const DEFAULT_MIXTURE_SD: f64 = 0.1;

/// Standard deviation `a` of the mixing distribution `N(alpha, a^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    a: f64,
}

impl MixtureParams {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(Self { a })
        } else {
            Err(Error::InvalidConfig(format!(
                "mixture scale a must be positive and finite, got {a}"
            )))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl Default for MixtureParams {
    fn default() -> Self {
        Self {
            a: DEFAULT_MIXTURE_SD,
        }
    }
}

/// `exp(log_s)`, saturating to `+inf` on overflow.
pub fn capital(log_s: f64) -> f64 {
    if log_s >= f64::MAX.ln() {
        f64::INFINITY
    } else {
        log_s.exp()
    }
}

/// Log of the likelihood-ratio martingale testing `alpha` against `alpha_true`.
pub fn log_lr(alpha: f64, alpha_true: f64, stats: &GammaStats) -> Result<f64> {
    if !alpha.is_finite() || !alpha_true.is_finite() {
        return Err(Error::InvalidInput(format!(
            "log_lr needs finite coefficients, got alpha={alpha}, alpha_true={alpha_true}"
        )));
    }
    let (g0, g1) = (stats.gamma0(), stats.gamma1());
    // alpha^2 - alpha_true^2 factored to keep precision when the two are close.
    let diff = alpha_true - alpha;
    Ok((-(diff) * (alpha + alpha_true) * g0 + 2.0 * diff * g1) / 2.0)
}

/// Log of the Gaussian-mixture martingale for the hypothesis `alpha`.
pub fn log_mixture(alpha: f64, params: MixtureParams, stats: &GammaStats) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "log_mixture needs a finite alpha, got {alpha}"
        )));
    }
    let a2 = params.a * params.a;
    let g0 = stats.gamma0();
    let resid = stats.gamma1() - alpha * g0;
    let a2g0 = a2 * g0;
    Ok(-0.5 * a2g0.ln_1p() + a2 * resid * resid / (2.0 * (a2g0 + 1.0)))
}

/// Closed grid `lo, lo + step, ...` up to `hi` (inclusive within rounding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl AlphaGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let grid = Self { lo, hi, step };
        grid.validate()?;
        Ok(grid)
    }

    /// Symmetric grid of half-width `radius` around `centre`.
    pub fn around(centre: f64, radius: f64, step: f64) -> Result<Self> {
        Self::new(centre - radius, centre + radius, step)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.step.is_finite()) {
            return Err(Error::InvalidConfig("grid bounds must be finite".into()));
        }
        if self.step <= 0.0 || self.hi <= self.lo {
            return Err(Error::InvalidConfig(format!(
                "grid needs lo < hi and step > 0, got lo={} hi={} step={}",
                self.lo, self.hi, self.step
            )));
        }
        if self.len() < 2 {
            return Err(Error::InvalidConfig("grid must hold at least two points".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.lo + i as f64 * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub alpha: f64,
    pub log_s: f64,
}

/// `ln S_T^alpha` at the end of `path` for each grid coefficient.
pub fn martingale_curve(
    path: &Path,
    params: MixtureParams,
    alpha_grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    let stats = GammaStats::from_values(path.values())?;
    curve_from_stats(&stats, params, alpha_grid)
}

pub fn curve_from_stats(
    stats: &GammaStats,
    params: MixtureParams,
    alpha_grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidInput("alpha grid is empty".into()));
    }
    alpha_grid
        .iter()
        .map(|&alpha| {
            Ok(CurvePoint {
                alpha,
                log_s: log_mixture(alpha, params, stats)?,
            })
        })
        .collect()
}

/// CSV with header `alpha,log_s`.
pub fn curve_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("alpha,log_s\n");
    for p in points {
        let _ = writeln!(out, "{},{}", format_f64(p.alpha), format_f64(p.log_s));
    }
    out
}
