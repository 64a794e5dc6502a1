//! Euler–Maclaurin evaluation of ζ(1/2 + it), the independent oracle path.

use num_complex::Complex64;

use super::gamma::theta_from_log_gamma;
use crate::sum::CompensatedSum;

// B_{2k} / (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 14_101_100_039_391_805_440_000.0,
    -236_364_091.0 / 1_693_824_136_731_743_669_452_800_000.0,
];

/// Largest number of Bernoulli correction terms supported.
pub const MAX_TAIL_TERMS: usize = BERNOULLI_OVER_FACTORIAL.len();

/// ζ(1/2 + it) with a direct sum of length `N ≈ t + 20` and `tail_terms`
/// Bernoulli corrections.
pub fn zeta_critical_line(t: f64, tail_terms: usize) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let n_cut = (t.abs().ceil() as usize) + 20;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for n in 1..n_cut {
        let nf = n as f64;
        let (sin, cos) = (t * nf.ln()).sin_cos();
        let m = 1.0 / nf.sqrt();
        re.add(m * cos);
        im.add(-m * sin);
    }
    let nf = n_cut as f64;
    let n_pow_s = (-s * nf.ln()).exp(); // N^{-s}
    let mut tail = n_pow_s * nf / (s - 1.0) + 0.5 * n_pow_s;
    // s (s+1) ... (s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut power = n_pow_s / nf;
    let inv_n2 = 1.0 / (nf * nf);
    for (k, b) in BERNOULLI_OVER_FACTORIAL.iter().take(tail_terms).enumerate() {
        tail += rising * power * *b;
        let kk = k as f64;
        rising *= (s + (2.0 * kk + 1.0)) * (s + (2.0 * kk + 2.0));
        power *= inv_n2;
    }
    Complex64::new(re.value(), im.value()) + tail
}

/// Z(t) = Re e^{iθ(t)} ζ(1/2 + it) together with the discarded imaginary part.
pub fn z_euler_maclaurin(t: f64, tail_terms: usize) -> (f64, f64) {
    let theta = theta_from_log_gamma(t);
    let rotated = Complex64::from_polar(1.0, theta) * zeta_critical_line(t, tail_terms);
    (rotated.re, rotated.im)
}
