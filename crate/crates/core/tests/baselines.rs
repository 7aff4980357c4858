mod common;

use arconf_core::ar1::{Ar1Config, GaussianInnovations};
use arconf_core::baselines::{
    simulate_unit_root_quantiles, tau_statistic, weak_interval_normal,
};
use arconf_core::confseq::strong_half_width;
use arconf_core::martingale::MixtureParams;
use arconf_core::normal;
use arconf_core::simulate_path;
use arconf_core::stats::GammaStats;

#[test]
fn tau_is_approximately_normal_off_the_unit_root() {
    let reps = 2000;
    let taus: Vec<f64> = (0..reps)
        .map(|r| {
            let config = Ar1Config::new(0.8, 0.0, 10_000, 77).unwrap();
            let path = simulate_path(config, GaussianInnovations::from_seed_stream(77, r)).unwrap();
            tau_statistic(&GammaStats::from_values(path.values()).unwrap(), 0.8).unwrap()
        })
        .collect();
    let n = taus.len() as f64;
    let mean = taus.iter().sum::<f64>() / n;
    let m2 = taus.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
    let m3 = taus.iter().map(|t| (t - mean).powi(3)).sum::<f64>() / n;
    let m4 = taus.iter().map(|t| (t - mean).powi(4)).sum::<f64>() / n;
    let skew = m3 / m2.powf(1.5);
    let kurt = m4 / (m2 * m2);
    // SE(skew) ~ sqrt(6/n) = 0.055, SE(kurt) ~ sqrt(24/n) = 0.11.
    assert!(mean.abs() < 4.0 / n.sqrt(), "mean {mean}");
    assert!((m2 - 1.0).abs() < 0.1, "var {m2}");
    assert!(skew.abs() < 0.25, "skew {skew}");
    assert!((kurt - 3.0).abs() < 0.45, "kurtosis {kurt}");
}

#[test]
fn strong_wider_than_weak_over_sweep() {
    for a in [0.01, 0.1, 1.0, 10.0] {
        for delta in [0.5, 0.1, 0.05, 0.01, 1e-3, 1e-6] {
            let z = normal::upper_quantile(delta / 2.0).unwrap();
            for k in -6..=14 {
                let g0 = 10f64.powf(k as f64 / 2.0);
                let strong = strong_half_width(g0, MixtureParams::new(a).unwrap(), delta)
                    .unwrap()
                    .unwrap();
                let stats = GammaStats::from_parts(g0, 0.3 * g0, 1, 0.0).unwrap();
                let weak = weak_interval_normal(&stats, delta).unwrap();
                assert!(strong > weak.width() / 2.0, "a={a} delta={delta} g0={g0}");
                assert!((weak.width() / 2.0 - z / g0.sqrt()).abs() <= 1e-12 * z / g0.sqrt());
            }
        }
    }
}

#[test]
fn unit_root_quantiles_near_published_dickey_fuller_values() {
    // The no-constant Dickey-Fuller tau has asymptotic 1% / 5% lower critical
    // values of about -2.58 / -1.95; the 2.5% point sits between them.
    let q = simulate_unit_root_quantiles(0.05, 1000, 20_000, 3).unwrap();
    assert!(q.q_lo < -1.95 && q.q_lo > -2.58, "q_lo {}", q.q_lo);
    assert!(q.q_hi > 1.0 && q.q_hi < 2.6, "q_hi {}", q.q_hi);
    assert!(q.q_lo.abs() > q.q_hi.abs());
}

#[test]
fn unit_root_quantiles_reproducible() {
    let a = simulate_unit_root_quantiles(0.01, 1000, 10_000, 42).unwrap();
    let b = simulate_unit_root_quantiles(0.01, 1000, 10_000, 42).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
