//! The Riemann–Siegel phase θ(t) and its main term θ₁(t).

use std::f64::consts::PI;

use crate::dd::{DoubleDouble, TWO_PI};
use crate::error::{Error, Result};

/// Which phase function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// θ(t) through its Stirling expansion.
    ExactAsymptotic,
    /// θ₁(t) = (t/2) ln(t/2π) − t/2 − π/8.
    MainTerm,
}

/// Smallest height accepted by [`theta`].
pub const THETA_MIN_HEIGHT: f64 = 10.0;

// Odd-power Stirling corrections of θ − θ₁: c_k / t^(2k-1).
const STIRLING: [f64; 5] = [1.0 / 48.0, 7.0 / 5760.0, 31.0 / 80640.0, 127.0 / 430080.0, 511.0 / 1216512.0];

#[inline]
pub(crate) fn theta_main(t: f64) -> f64 {
    0.5 * t * ((t / (2.0 * PI)).ln() - 1.0) - PI / 8.0
}

#[inline]
pub(crate) fn theta_correction(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

#[inline]
fn theta_correction_derivative(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for (k, c) in STIRLING.iter().enumerate().rev() {
        acc = acc * inv2 - c * (2 * k + 1) as f64;
    }
    acc * inv2
}

/// θ'₁(t) = ½ ln(t/2π), the local phase rate.
#[inline]
pub fn theta_rate(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln()
}

/// Average distance between consecutive zeros near height `t`: π / θ'₁(t).
#[inline]
pub fn zero_spacing(t: f64) -> f64 {
    PI / theta_rate(t)
}

/// Evaluates the phase (`derivative_order = 0`) or its rate (`1`).
pub fn theta(t: f64, variant: ThetaVariant, derivative_order: u8) -> Result<f64> {
    if !(t >= THETA_MIN_HEIGHT) {
        return Err(Error::Domain {
            what: "theta",
            bound: "t >= 10",
            value: t,
        });
    }
    match (variant, derivative_order) {
        (ThetaVariant::MainTerm, 0) => Ok(theta_main(t)),
        (ThetaVariant::ExactAsymptotic, 0) => Ok(theta_main(t) + theta_correction(t)),
        (ThetaVariant::MainTerm, 1) => Ok(theta_rate(t)),
        (ThetaVariant::ExactAsymptotic, 1) => Ok(theta_rate(t) + theta_correction_derivative(t)),
        (_, d) => Err(Error::Invalid(format!("derivative order {d} (expected 0 or 1)"))),
    }
}

/// θ(t) in double-double precision, for phase reduction of the main sum.
pub(crate) fn theta_dd(t: f64) -> DoubleDouble {
    let x = DoubleDouble::from_f64(t) / TWO_PI;
    let log = x.ln();
    let main = (log - DoubleDouble::from_f64(1.0)).mul_f64(0.5 * t);
    main - crate::dd::PI.mul_f64(0.125) + DoubleDouble::from_f64(theta_correction(t))
}
