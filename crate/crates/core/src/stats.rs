//! Online sufficient statistics `gamma0 = sum y_{t-1}^2`, `gamma1 = sum y_{t-1} y_t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Sufficient statistics after `t` observations, accumulated with compensated sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaStats {
    gamma0: NeumaierSum,
    gamma1: NeumaierSum,
    t: u64,
    last_y: f64,
}

impl GammaStats {
    /// Empty statistics anchored at the initial value `y0`.
    pub fn new(y0: f64) -> Self {
        Self {
            gamma0: NeumaierSum::new(),
            gamma1: NeumaierSum::new(),
            t: 0,
            last_y: y0,
        }
    }

    /// Statistics with given totals, for callers that already hold the sums.
    pub fn from_parts(gamma0: f64, gamma1: f64, t: u64, last_y: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "gamma0 must be finite and nonnegative, got {gamma0}"
            )));
        }
        if !gamma1.is_finite() || !last_y.is_finite() {
            return Err(Error::InvalidInput("gamma1 and last_y must be finite".into()));
        }
        if gamma0 == 0.0 && gamma1 != 0.0 {
            return Err(Error::InvalidInput("gamma0 == 0 forces gamma1 == 0".into()));
        }
        Ok(Self {
            gamma0: gamma0.into(),
            gamma1: gamma1.into(),
            t,
            last_y,
        })
    }

    /// Fold a whole sequence `y0, y_1, ..., y_T`.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let (&y0, rest) = values
            .split_first()
            .ok_or_else(|| Error::InvalidInput("empty series".into()))?;
        if !y0.is_finite() {
            return Err(Error::InvalidObservation { step: 0, value: y0 });
        }
        let mut stats = Self::new(y0);
        stats.extend(rest.iter().copied())?;
        Ok(stats)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0.value()
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1.value()
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn last_y(&self) -> f64 {
        self.last_y
    }

    /// Statistics after one more observation.
    pub fn update(&self, y: f64) -> Result<Self> {
        let mut next = *self;
        next.push(y)?;
        Ok(next)
    }

    /// In-place form of [`update`](Self::update).
    pub fn push(&mut self, y: f64) -> Result<()> {
        if !y.is_finite() {
            return Err(Error::InvalidObservation {
                step: self.t + 1,
                value: y,
            });
        }
        self.gamma0.add(self.last_y * self.last_y);
        self.gamma1.add(self.last_y * y);
        self.t += 1;
        self.last_y = y;
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = f64>>(&mut self, ys: I) -> Result<()> {
        for y in ys {
            self.push(y)?;
        }
        Ok(())
    }

    /// Least-squares estimate `gamma1 / gamma0`.
    pub fn ls_estimate(&self) -> Result<f64> {
        let g0 = self.gamma0();
        if g0 > 0.0 {
            Ok(self.gamma1() / g0)
        } else {
            Err(Error::UndefinedEstimate)
        }
    }
}
