//! Test-only oracles, independent of the closed forms they check.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `ln S` of the likelihood-ratio martingale, multiplied out step by step
/// from the two conditional Gaussian densities.
pub fn log_lr_by_product(values: &[f64], alpha: f64, alpha_true: f64) -> f64 {
    let log_density = |resid: f64| -0.5 * resid * resid - 0.5 * (2.0 * std::f64::consts::PI).ln();
    values
        .windows(2)
        .map(|w| log_density(w[1] - alpha_true * w[0]) - log_density(w[1] - alpha * w[0]))
        .sum()
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    m: f64,
    fm: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let (left, lm, flm) = simpson(f, a, fa, m, fm);
    let (right, rm, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, fa, m, fm, left, lm, flm, eps, depth - 1)
        + adaptive(f, m, fm, b, fb, right, rm, frm, eps, depth - 1)
}

/// Adaptive Simpson over `[lo, hi]`, pre-split into `panels` pieces.
pub fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize, rel_tol: f64) -> f64 {
    let h = (hi - lo) / panels as f64;
    let coarse: Vec<(f64, f64, f64, f64, f64)> = (0..panels)
        .map(|i| {
            let a = lo + i as f64 * h;
            let b = a + h;
            let (fa, fb) = (f(a), f(b));
            let (s, m, fm) = simpson(&f, a, fa, b, fb);
            let _ = (m, fm);
            (a, fa, b, fb, s)
        })
        .collect();
    let total: f64 = coarse.iter().map(|c| c.4).sum();
    // Fixed per-leaf tolerance; halving it per level drives it below rounding noise.
    let eps = rel_tol * total.abs();
    coarse
        .iter()
        .map(|&(a, fa, b, fb, _)| {
            let (s, m, fm) = simpson(&f, a, fa, b, fb);
            adaptive(&f, a, fa, b, fb, s, m, fm, eps, 24)
        })
        .sum()
}

/// `ln` of the integral of the likelihood-ratio martingale against the
/// `N(alpha, a^2)` density of `alpha_true`, with `x = alpha_true - alpha`
/// integrated over `[-12a, 12a]`.
pub fn log_mixture_by_quadrature(alpha: f64, a: f64, gamma0: f64, gamma1: f64) -> f64 {
    let exponent = |x: f64| {
        let alpha_true = alpha + x;
        let log_lr =
            ((alpha * alpha - alpha_true * alpha_true) * gamma0 + 2.0 * x * gamma1) / 2.0;
        log_lr - x * x / (2.0 * a * a)
    };
    let (lo, hi) = (-12.0 * a, 12.0 * a);
    let scan = 20_000;
    let shift = (0..=scan)
        .map(|i| exponent(lo + (hi - lo) * i as f64 / scan as f64))
        .fold(f64::NEG_INFINITY, f64::max);
    let integral = integrate(|x| (exponent(x) - shift).exp(), lo, hi, 2000, 1e-11);
    shift + integral.ln() - (2.0 * std::f64::consts::PI).sqrt().ln() - a.ln()
}

/// Random sufficient statistics and mixture scale with the mixture peak
/// inside the `+/-12a` integration window.
pub struct MixtureCase {
    pub gamma0: f64,
    pub gamma1: f64,
    pub a: f64,
    pub alpha: f64,
}

pub fn random_mixture_case(rng: &mut ChaCha8Rng) -> MixtureCase {
    let gamma0 = 10f64.powf(rng.random_range(-2.0..5.0));
    let rho: f64 = rng.random_range(-1.5..1.5);
    let a = 10f64.powf(rng.random_range(-1.3..0.3));
    let reach = (6.0 * (1.0 + a * a * gamma0) / (a * gamma0)).min(1.0);
    let alpha = rho + rng.random_range(-1.0..1.0) * reach;
    MixtureCase {
        gamma0,
        gamma1: rho * gamma0,
        a,
        alpha,
    }
}

/// Naive batch sums over a stored path.
pub fn batch_sums(values: &[f64]) -> (f64, f64) {
    values.windows(2).fold((0.0, 0.0), |(g0, g1), w| {
        (g0 + w[0] * w[0], g1 + w[0] * w[1])
    })
}

/// Quantile estimate and its standard error, the density at the quantile
/// taken from a symmetric difference of neighbouring order statistics.
pub fn quantile_with_se(sorted: &[f64], p: f64) -> (f64, f64) {
    use arconf_core::baselines::empirical_quantile;
    let n = sorted.len() as f64;
    let h = (p.min(1.0 - p)) / 2.0;
    let q = empirical_quantile(sorted, p);
    let spread = empirical_quantile(sorted, p + h) - empirical_quantile(sorted, p - h);
    let density = 2.0 * h / spread;
    (q, (p * (1.0 - p) / n).sqrt() / density)
}
