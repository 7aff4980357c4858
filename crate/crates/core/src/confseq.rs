//! Strong confidence sequences for the AR(1) coefficient.
//!
//! At each step the set `{alpha : S_t^alpha <= 1/delta}` of the mixture
//! martingale is an interval centred on the least-squares estimate. Ville's
//! inequality bounds by `delta` the probability that the true coefficient ever
//! leaves it, so the running intersection of all per-step intervals covers the
//! truth with probability at least `1 - delta`. An empty intersection rejects
//! the model.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format_f64;
use crate::martingale::MixtureParams;
use crate::normal;
use crate::stats::GammaStats;

pub const DEFAULT_DELTA: f64 = 0.01;

/// A closed real interval, possibly unbounded or empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lower: f64,
    upper: f64,
    empty: bool,
}

impl Interval {
    /// `[lower, upper]`; infinite endpoints are allowed.
    pub fn closed(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::InvalidInput(format!(
                "interval needs lower <= upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Self {
            lower,
            upper,
            empty: false,
        })
    }

    pub const fn unbounded() -> Self {
        Self {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            empty: false,
        }
    }

    pub const fn empty() -> Self {
        Self {
            lower: f64::NAN,
            upper: f64::NAN,
            empty: true,
        }
    }

    /// Centre plus or minus a nonnegative half-width.
    pub fn centred(centre: f64, half_width: f64) -> Result<Self> {
        Self::closed(centre - half_width, centre + half_width)
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn is_bounded(&self) -> bool {
        !self.empty && self.lower.is_finite() && self.upper.is_finite()
    }

    /// Lower endpoint; NaN when empty.
    pub fn lower(&self) -> f64 {
        if self.empty {
            f64::NAN
        } else {
            self.lower
        }
    }

    /// Upper endpoint; NaN when empty.
    pub fn upper(&self) -> f64 {
        if self.empty {
            f64::NAN
        } else {
            self.upper
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        (!self.empty).then_some((self.lower, self.upper))
    }

    /// Length; zero when empty, infinite when unbounded.
    pub fn width(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.upper - self.lower
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        !self.empty && self.lower <= x && x <= self.upper
    }

    /// `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((l, u)), Some((ol, ou))) => ol <= l && u <= ou,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        intersect(self, other)
    }
}

/// Set intersection of two intervals.
pub fn intersect(a: &Interval, b: &Interval) -> Interval {
    if a.empty || b.empty {
        return Interval::empty();
    }
    let lower = a.lower.max(b.lower);
    let upper = a.upper.min(b.upper);
    if lower > upper {
        Interval::empty()
    } else {
        Interval {
            lower,
            upper,
            empty: false,
        }
    }
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "delta must lie in (0, 1), got {delta}"
        )))
    }
}

/// Half-width of the strong interval, `None` when `gamma0 == 0`.
pub fn strong_half_width(gamma0: f64, params: MixtureParams, delta: f64) -> Result<Option<f64>> {
    check_delta(delta)?;
    if gamma0 <= 0.0 {
        return Ok(None);
    }
    let a2 = params.a() * params.a();
    let a2g0 = a2 * gamma0;
    let scale = (a2g0 + 1.0) / (a2g0 * gamma0);
    let log_term = a2g0.ln_1p() - 2.0 * delta.ln();
    Ok(Some((scale * log_term).sqrt()))
}

/// The per-step strong interval: unbounded when `gamma0 == 0`, never empty.
pub fn strong_interval(stats: &GammaStats, params: MixtureParams, delta: f64) -> Result<Interval> {
    match strong_half_width(stats.gamma0(), params, delta)? {
        None => Ok(Interval::unbounded()),
        Some(hw) => Interval::centred(stats.ls_estimate()?, hw),
    }
}

/// Running state of one confidence-sequence stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfSeqState {
    stats: GammaStats,
    params: MixtureParams,
    delta: f64,
    current: Interval,
    running: Interval,
    rejected: bool,
}

impl ConfSeqState {
    pub fn new(y0: f64, params: MixtureParams, delta: f64) -> Result<Self> {
        check_delta(delta)?;
        if !y0.is_finite() {
            return Err(Error::InvalidObservation { step: 0, value: y0 });
        }
        Ok(Self {
            stats: GammaStats::new(y0),
            params,
            delta,
            current: Interval::unbounded(),
            running: Interval::unbounded(),
            rejected: false,
        })
    }

    pub fn stats(&self) -> &GammaStats {
        &self.stats
    }

    pub fn params(&self) -> MixtureParams {
        self.params
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn current(&self) -> Interval {
        self.current
    }

    pub fn running(&self) -> Interval {
        self.running
    }

    pub fn rejected(&self) -> bool {
        self.rejected
    }

    /// State after observing `y`.
    pub fn step(&self, y: f64) -> Result<Self> {
        let mut next = *self;
        next.advance(y)?;
        Ok(next)
    }

    /// In-place form of [`step`](Self::step).
    pub fn advance(&mut self, y: f64) -> Result<()> {
        let stats = self.stats.update(y)?;
        let current = strong_interval(&stats, self.params, self.delta)?;
        self.stats = stats;
        self.current = current;
        self.running = intersect(&self.running, &current);
        self.rejected = self.running.is_empty();
        Ok(())
    }

    pub fn report_row(&self) -> StreamRow {
        StreamRow {
            t: self.stats.t(),
            y: self.stats.last_y(),
            gamma0: self.stats.gamma0(),
            gamma1: self.stats.gamma1(),
            center: self.stats.ls_estimate().unwrap_or(f64::NAN),
            current: self.current,
            running: self.running,
            rejected: self.rejected,
        }
    }
}

/// One line of the streaming report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamRow {
    pub t: u64,
    pub y: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    pub center: f64,
    pub current: Interval,
    pub running: Interval,
    pub rejected: bool,
}

impl StreamRow {
    pub const CSV_HEADER: &'static str =
        "t,y,gamma0,gamma1,center,lower,upper,run_lower,run_upper,rejected";

    pub fn to_csv_line(&self) -> String {
        let mut line = String::with_capacity(160);
        let _ = write!(
            line,
            "{},{},{},{},{},{},{},{},{},{}",
            self.t,
            format_f64(self.y),
            format_f64(self.gamma0),
            format_f64(self.gamma1),
            format_f64(self.center),
            format_f64(self.current.lower()),
            format_f64(self.current.upper()),
            format_f64(self.running.lower()),
            format_f64(self.running.upper()),
            self.rejected
        );
        line
    }
}

/// Union over `alpha` in `running` of the per-coefficient prediction
/// intervals `[alpha y_t - z, alpha y_t + z]`, `z` the upper `delta_pred / 2`
/// normal quantile.
///
/// The level `delta_pred` is separate from the confidence-sequence budget; no
/// joint guarantee is claimed.
pub fn prediction_interval(running: &Interval, y_t: f64, delta_pred: f64) -> Result<Interval> {
    check_delta(delta_pred)?;
    if !y_t.is_finite() {
        return Err(Error::InvalidInput(format!("y_t must be finite, got {y_t}")));
    }
    let (lo, hi) = running.bounds().ok_or(Error::RejectedModel)?;
    let z = normal::upper_quantile(delta_pred / 2.0)?;
    if y_t == 0.0 {
        return Interval::closed(-z, z);
    }
    let (a, b) = (lo * y_t, hi * y_t);
    Interval::closed(a.min(b) - z, a.max(b) + z)
}

/// Drive a fresh state through `values = y_0, y_1, ...`, collecting every row.
pub fn analyze_series(values: &[f64], params: MixtureParams, delta: f64) -> Result<Vec<StreamRow>> {
    let (&y0, rest) = values
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty series".into()))?;
    let mut state = ConfSeqState::new(y0, params, delta)?;
    rest.iter()
        .map(|&y| {
            state.advance(y)?;
            Ok(state.report_row())
        })
        .collect()
}
