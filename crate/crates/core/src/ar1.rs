//! First-order scalar autoregression `y_t = alpha * y_{t-1} + e_t`.
//!
//! Innovations come from an [`InnovationSource`]. The default source,
//! [`GaussianInnovations`], is a ChaCha8 stream driving Marsaglia's polar
//! method, so a `(seed, stream)` pair pins every draw. The polar method calls
//! `ln` and `sqrt`; `sqrt` is correctly rounded everywhere, `ln` comes from the
//! platform libm, so bit-identical replay across platforms assumes a libm with
//! identical `ln` results (true for the usual glibc/musl/macOS targets on
//! x86_64 and aarch64 in practice, but not guaranteed by IEEE 754).

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format_f64;

/// A stream of innovation draws.
pub trait InnovationSource {
    fn draw(&mut self) -> f64;
}

impl<S: InnovationSource + ?Sized> InnovationSource for &mut S {
    fn draw(&mut self) -> f64 {
        (**self).draw()
    }
}

/// i.i.d. N(0, 1) draws via the Marsaglia polar method on a ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct GaussianInnovations {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianInnovations {
    pub fn from_seed(seed: u64) -> Self {
        Self::from_seed_stream(seed, 0)
    }

    /// Independent substream `stream` of the generator keyed by `seed`.
    /// Monte Carlo replication `i` uses stream `i`.
    pub fn from_seed_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }
}

impl InnovationSource for GaussianInnovations {
    fn draw(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.random::<f64>() - 1.0;
            let v = 2.0 * self.rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let m = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * m);
                return u * m;
            }
        }
    }
}

/// Every draw returns the same constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantInnovations(pub f64);

impl InnovationSource for ConstantInnovations {
    fn draw(&mut self) -> f64 {
        self.0
    }
}

pub fn degenerate_innovations(constant: f64) -> ConstantInnovations {
    ConstantInnovations(constant)
}

/// Replays a fixed sequence of draws. Panics when exhausted.
#[derive(Debug, Clone)]
pub struct ReplayInnovations<I> {
    iter: I,
}

impl<I: Iterator<Item = f64>> ReplayInnovations<I> {
    pub fn new<T: IntoIterator<IntoIter = I>>(draws: T) -> Self {
        Self {
            iter: draws.into_iter(),
        }
    }
}

impl<I: Iterator<Item = f64>> InnovationSource for ReplayInnovations<I> {
    fn draw(&mut self) -> f64 {
        self.iter.next().expect("replayed innovation sequence exhausted")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ar1Config {
    pub alpha: f64,
    pub y0: f64,
    /// Number of steps `T`; the path holds `T + 1` values.
    pub horizon: usize,
    pub seed: u64,
}

impl Ar1Config {
    pub fn new(alpha: f64, y0: f64, horizon: usize, seed: u64) -> Result<Self> {
        let config = Self {
            alpha,
            y0,
            horizon,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidConfig("horizon must be at least 1".into()));
        }
        if !self.alpha.is_finite() || !self.y0.is_finite() {
            return Err(Error::InvalidConfig(
                "alpha and y0 must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// A realized trajectory `y_0, ..., y_T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    values: Vec<f64>,
    config: Ar1Config,
}

impl Path {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn config(&self) -> &Ar1Config {
        &self.config
    }

    pub fn y0(&self) -> f64 {
        self.values[0]
    }

    /// `y_1, ..., y_T`.
    pub fn observations(&self) -> &[f64] {
        &self.values[1..]
    }

    pub fn horizon(&self) -> usize {
        self.config.horizon
    }

    /// Simulate with Gaussian innovations seeded from `config.seed`.
    pub fn gaussian(config: Ar1Config) -> Result<Self> {
        simulate_path(config, GaussianInnovations::from_seed(config.seed))
    }

    /// CSV with header `t,y`, shortest round-trip decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 24 + 4);
        out.push_str("t,y\n");
        for (t, y) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{t},{}", format_f64(*y));
        }
        out
    }
}

/// Run the recursion for `config.horizon` steps.
pub fn simulate_path<S: InnovationSource>(config: Ar1Config, mut innovations: S) -> Result<Path> {
    config.validate()?;
    let mut values = Vec::with_capacity(config.horizon + 1);
    let mut y = config.y0;
    values.push(y);
    for _ in 0..config.horizon {
        y = config.alpha * y + innovations.draw();
        values.push(y);
    }
    Ok(Path { values, config })
}
