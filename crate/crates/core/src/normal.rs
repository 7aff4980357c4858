//! Standard normal quantile function.
//!
//! Wichura's AS 241 (`PPND16`): three rational approximations in the centre,
//! intermediate tail and far tail. Relative accuracy is about 1e-16 over the
//! whole open unit interval.

// Coefficients are quoted exactly as published.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const A: [f64; 8] = [
    3.387_132_872_796_366_608_0,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083_0e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061_0e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561_0e3,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_90,
    5.769_497_221_460_691_405_50,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_70e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_40e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_40,
    6.897_673_349_851_000_045_50e-1,
    1.481_039_764_274_800_745_90e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946_00e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_20,
    5.463_784_911_164_114_369_90,
    1.784_826_539_917_291_335_80,
    2.965_605_718_285_048_912_30e-1,
    2.653_218_952_657_612_309_30e-2,
    1.242_660_947_388_078_438_60e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_90e-1,
    1.369_298_809_227_358_053_10e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591_00e-4,
    1.846_318_317_510_054_681_80e-5,
    1.421_511_758_316_445_888_70e-7,
    2.044_263_103_389_939_785_64e-15,
];

#[inline]
fn ratio(num: &[f64; 8], den: &[f64; 8], r: f64) -> f64 {
    let n = num.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    let d = den.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    n / d
}

/// Inverse of the standard normal CDF, `p` in (0, 1).
pub fn inverse_cdf(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!(
            "normal quantile needs p in (0, 1), got {p}"
        )));
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return Ok(q * ratio(&A, &B, r));
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let r = (-tail.ln()).sqrt();
    let z = if r <= 5.0 {
        ratio(&C, &D, r - 1.6)
    } else {
        ratio(&E, &F, r - 5.0)
    };
    Ok(if q < 0.0 { -z } else { z })
}

/// Upper `tail`-quantile: the `z` with `P(Z > z) = tail`.
pub fn upper_quantile(tail: f64) -> Result<f64> {
    // Evaluate through the lower tail to avoid cancellation in 1 - tail.
    inverse_cdf(tail).map(|z| -z)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 25-digit references from mpmath, sqrt(2) * erfinv(2p - 1), evaluated at
    // the exact binary value of each p.
    const REFERENCE: [(f64, f64); 10] = [
        (0.5, 0.0),
        (0.975, 1.959_963_984_540_054_235_524_594),
        (0.995, 2.575_829_303_548_900_760_978_577),
        (0.9, 1.281_551_565_544_600_466_965_103),
        (0.999, 3.090_232_306_167_813_541_540_4),
        (1e-10, -6.361_340_902_404_056_204_695_376),
        (0.025, -1.959_963_984_540_054_235_524_594),
        (0.0001, -3.719_016_485_455_680_564_393_661),
        (0.3, -0.524_400_512_708_040_784_038_289_3),
        (0.999_999_999, 5.997_807_019_601_637_426_423_078),
    ];

    #[test]
    fn matches_high_precision_references() {
        for (p, z) in REFERENCE {
            let got = inverse_cdf(p).unwrap();
            assert!((got - z).abs() < 1e-9, "p={p}: {got} vs {z}");
        }
    }

    #[test]
    fn upper_quantile_is_mirror() {
        let z = upper_quantile(0.005).unwrap();
        assert!((z - 2.575_829_303_548_900_8).abs() < 1e-12);
    }

    #[test]
    fn rejects_closed_endpoints() {
        assert!(inverse_cdf(0.0).is_err());
        assert!(inverse_cdf(1.0).is_err());
        assert!(inverse_cdf(f64::NAN).is_err());
    }

    #[test]
    fn antisymmetric() {
        for p in [0.01, 0.2, 0.4, 0.49] {
            let lo = inverse_cdf(p).unwrap();
            let hi = inverse_cdf(1.0 - p).unwrap();
            assert!((lo + hi).abs() < 1e-12);
        }
    }
}
