//! Hardy's Z-function, the Riemann–Siegel phase and the ladder weight ω.

mod euler_maclaurin;
pub mod gamma;
mod riemann_siegel;
#[rustfmt::skip]
mod rs_coeffs;
mod theta;

pub use euler_maclaurin::{zeta_critical_line, MAX_TAIL_TERMS};
pub use riemann_siegel::{MAX_CORRECTION_ORDER, MAX_TERMS};
pub use theta::{theta, theta_rate, zero_spacing, ThetaVariant, THETA_MIN_HEIGHT};

pub(crate) use theta::theta_main;

use crate::error::{Error, Result};

/// Euler's constant. Every (1 − c) factor in the crate reads this value.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Highest height accepted by the Euler–Maclaurin oracle path.
pub const EULER_MACLAURIN_MAX_HEIGHT: f64 = 1e5;

/// Below this height the Riemann–Siegel remainder must carry at least C0.
pub const UNCORRECTED_MIN_HEIGHT: f64 = 1e4;

/// Relative bound on the imaginary residue discarded by the oracle path.
pub const RESIDUE_TOLERANCE: f64 = 1e-8;

/// Evaluation route for Z(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZMethod {
    RiemannSiegel,
    EulerMaclaurin,
}

/// Knobs of the Z evaluators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ZEvalConfig {
    /// Number of Riemann–Siegel remainder terms (C0, C1, ...), 0..=5.
    pub correction_order: usize,
    /// Smallest height at which the Riemann–Siegel path is used.
    pub min_height: f64,
    /// Number of Bernoulli terms in the Euler–Maclaurin tail.
    pub oracle_terms: usize,
}

impl Default for ZEvalConfig {
    fn default() -> Self {
        Self {
            correction_order: 4,
            min_height: 50.0,
            oracle_terms: 10,
        }
    }
}

impl ZEvalConfig {
    pub fn with_correction_order(mut self, order: usize) -> Self {
        self.correction_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.correction_order > MAX_CORRECTION_ORDER {
            return Err(Error::Invalid(format!(
                "correction_order {} exceeds {MAX_CORRECTION_ORDER}",
                self.correction_order
            )));
        }
        if self.oracle_terms > MAX_TAIL_TERMS {
            return Err(Error::Invalid(format!(
                "oracle_terms {} exceeds {MAX_TAIL_TERMS}",
                self.oracle_terms
            )));
        }
        if !(self.min_height >= THETA_MIN_HEIGHT) {
            return Err(Error::Invalid(format!("min_height {} below 10", self.min_height)));
        }
        Ok(())
    }

    /// Checks that the Riemann–Siegel path is admissible at `t`.
    pub fn check_riemann_siegel(&self, t: f64) -> Result<()> {
        if !(t >= self.min_height) {
            return Err(Error::Accuracy(format!(
                "Riemann–Siegel path requested at t = {t} below min_height {}",
                self.min_height
            )));
        }
        if self.correction_order == 0 && t < UNCORRECTED_MIN_HEIGHT {
            return Err(Error::Accuracy(format!(
                "correction_order 0 is too coarse at t = {t} (< {UNCORRECTED_MIN_HEIGHT})"
            )));
        }
        let n = (t / (2.0 * std::f64::consts::PI)).sqrt().floor() as usize;
        if n > MAX_TERMS {
            return Err(Error::Domain {
                what: "Riemann–Siegel main sum",
                bound: "t <= 1e9",
                value: t,
            });
        }
        Ok(())
    }
}

/// Z(t) by the requested method.
///
/// The Euler–Maclaurin route computes ζ(1/2 + it) directly and rotates it by
/// e^{iθ(t)}; a discarded imaginary part above `1e-8 (1 + |Z|)` is reported
/// as an accuracy error.
pub fn hardy_z(t: f64, method: ZMethod, cfg: &ZEvalConfig) -> Result<f64> {
    cfg.validate()?;
    match method {
        ZMethod::RiemannSiegel => {
            cfg.check_riemann_siegel(t)?;
            Ok(riemann_siegel::z_riemann_siegel(t, cfg.correction_order))
        }
        ZMethod::EulerMaclaurin => {
            if !(THETA_MIN_HEIGHT..=EULER_MACLAURIN_MAX_HEIGHT).contains(&t) {
                return Err(Error::Accuracy(format!(
                    "Euler–Maclaurin path requested at t = {t} outside [10, 1e5]"
                )));
            }
            let (z, residue) = euler_maclaurin::z_euler_maclaurin(t, cfg.oracle_terms);
            if residue.abs() > RESIDUE_TOLERANCE * (1.0 + z.abs()) {
                return Err(Error::Accuracy(format!("imaginary residue {residue:e} at t = {t}")));
            }
            Ok(z)
        }
    }
}

/// Riemann–Siegel Z without validation, for hot loops whose heights were
/// checked once up front.
#[inline]
pub fn z_fast(t: f64, correction_order: usize) -> f64 {
    riemann_siegel::z_riemann_siegel(t, correction_order)
}

/// Smallest height accepted by [`omega`].
pub const OMEGA_MIN_HEIGHT: f64 = 100.0;

/// Version tag of the ω realization, recorded in ladder caches.
pub const OMEGA_VERSION: &str = "omega-v1";

/// ω(t) = (1 − (1−c)/ln t) / (ln(t/2π) + 2c).
///
/// The local mean of ω Z² is then 1 − (1−c)/ln t.
pub fn omega(t: f64) -> Result<f64> {
    if !(t >= OMEGA_MIN_HEIGHT) {
        return Err(Error::Domain {
            what: "omega",
            bound: "t >= 100",
            value: t,
        });
    }
    Ok(omega_unchecked(t))
}

#[inline]
pub(crate) fn omega_unchecked(t: f64) -> f64 {
    let c = EULER_GAMMA;
    (1.0 - (1.0 - c) / t.ln()) / ((t / (2.0 * std::f64::consts::PI)).ln() + 2.0 * c)
}

/// Ordinates of the first 50 nontrivial zeros (published tables).
pub const FIRST_ZEROS: [f64; 50] = [
    14.134_725_141_734_69,
    21.022_039_638_771_55,
    25.010_857_580_145_69,
    30.424_876_125_859_51,
    32.935_061_587_739_19,
    37.586_178_158_825_67,
    40.918_719_012_147_5,
    43.327_073_280_915,
    48.005_150_881_167_16,
    49.773_832_477_672_3,
    52.970_321_477_714_46,
    56.446_247_697_063_39,
    59.347_044_002_602_35,
    60.831_778_524_609_81,
    65.112_544_048_081_61,
    67.079_810_529_494_17,
    69.546_401_711_173_98,
    72.067_157_674_481_91,
    75.704_690_699_083_93,
    77.144_840_068_874_81,
    79.337_375_020_249_37,
    82.910_380_854_086_03,
    84.735_492_980_517_05,
    87.425_274_613_125_23,
    88.809_111_207_634_47,
    92.491_899_270_558_48,
    94.651_344_040_519_89,
    95.870_634_228_245_31,
    98.831_194_218_193_69,
    101.317_851_005_731_4,
    103.725_538_040_478_3,
    105.446_623_052_326_1,
    107.168_611_184_276_4,
    111.029_535_543_169_7,
    111.874_659_176_992_6,
    114.320_220_915_452_7,
    116.226_680_320_857_6,
    118.790_782_865_976_2,
    121.370_125_002_420_6,
    122.946_829_293_552_6,
    124.256_818_554_345_8,
    127.516_683_879_596_5,
    129.578_704_199_956_1,
    131.087_688_530_932_7,
    133.497_737_202_997_6,
    134.756_509_753_373_9,
    138.116_042_054_533_4,
    139.736_208_952_121_4,
    141.123_707_404_021_1,
    143.111_845_807_620_6,
];
