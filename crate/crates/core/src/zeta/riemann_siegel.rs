//! Riemann–Siegel evaluation of Z(t).
//!
//! Main sum 2 Σ_{n ≤ N} n^{-1/2} cos(θ(t) − t ln n), N = ⌊√(t/2π)⌋, with each
//! phase formed and reduced mod 2π in double-double so the absolute phase
//! error stays below 1e-6 up to t = 1e9. The remainder uses the Taylor
//! tables of C0..C4 in z = 2p − 1.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::rs_coeffs::{C0, C1, C2, C3, C4};
use super::theta::theta_dd;
use crate::dd::{reduce_two_pi, split, two_prod_split, two_sum, DoubleDouble};

/// Largest main-sum length kept in the static table (covers t ≤ 1e9).
pub const MAX_TERMS: usize = 12_700;

/// Highest supported number of remainder terms (C0..C4).
pub const MAX_CORRECTION_ORDER: usize = 5;

#[derive(Clone, Copy)]
struct Term {
    ln_hi: f64,
    ln_split: (f64, f64),
    ln_lo: f64,
    rsqrt: f64,
}

fn terms() -> &'static [Term] {
    static TABLE: OnceLock<Vec<Term>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=MAX_TERMS)
            .map(|n| {
                if n == 0 {
                    return Term {
                        ln_hi: 0.0,
                        ln_split: (0.0, 0.0),
                        ln_lo: 0.0,
                        rsqrt: 0.0,
                    };
                }
                let l = DoubleDouble::from_f64(n as f64).ln();
                Term {
                    ln_hi: l.hi,
                    ln_split: split(l.hi),
                    ln_lo: l.lo,
                    rsqrt: 1.0 / (n as f64).sqrt(),
                }
            })
            .collect()
    })
}

/// cos(r) for |r| ≤ π (plus rounding slack) via cos r = 1 − 2 sin²(r/2).
#[inline(always)]
pub(crate) fn cos_reduced(r: f64) -> f64 {
    // Taylor coefficients of sin up to x^21; truncation < 2e-18 on |x| ≤ π/2.
    const S: [f64; 11] = [
        1.0,
        -1.0 / 6.0,
        1.0 / 120.0,
        -1.0 / 5040.0,
        1.0 / 362_880.0,
        -1.0 / 39_916_800.0,
        1.0 / 6_227_020_800.0,
        -1.0 / 1_307_674_368_000.0,
        1.0 / 355_687_428_096_000.0,
        -1.0 / 121_645_100_408_832_000.0,
        1.0 / 51_090_942_171_709_440_000.0,
    ];
    let x = 0.5 * r;
    let x2 = x * x;
    let mut p = S[10];
    for k in (0..10).rev() {
        p = p * x2 + S[k];
    }
    let s = p * x;
    1.0 - 2.0 * s * s
}

#[inline]
fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Main sum 2 Σ n^{-1/2} cos(θ − t ln n) for `n = 1..=n_max`.
pub(crate) fn main_sum(t: f64, n_max: usize) -> f64 {
    let table = terms();
    assert!(n_max <= MAX_TERMS, "t = {t} beyond the Riemann–Siegel table");
    let th = theta_dd(t);
    let ts = split(t);
    let mut acc = 0.0;
    for term in &table[1..=n_max] {
        let (p, pe) = two_prod_split(t, ts, term.ln_hi, term.ln_split);
        let pl = pe + t * term.ln_lo;
        let (d, de) = two_sum(th.hi, -p);
        let r = reduce_two_pi(d, (de + th.lo) - pl);
        acc += term.rsqrt * cos_reduced(r);
    }
    2.0 * acc
}

/// Remainder (−1)^{N−1} a^{−1/2} Σ_{k < order} C_k(p) a^{−k}, a = √(t/2π).
pub(crate) fn remainder(a: f64, n: usize, order: usize) -> f64 {
    if order == 0 {
        return 0.0;
    }
    let p = a - n as f64;
    let z = 2.0 * p - 1.0;
    let tables: [&[f64]; MAX_CORRECTION_ORDER] = [&C0, &C1, &C2, &C3, &C4];
    let inv = 1.0 / a;
    let mut series = 0.0;
    let mut scale = 1.0;
    for table in tables.iter().take(order.min(MAX_CORRECTION_ORDER)) {
        series += horner(table, z) * scale;
        scale *= inv;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    sign * series / a.sqrt()
}

/// Z(t) by the Riemann–Siegel formula with `order` remainder terms.
pub fn z_riemann_siegel(t: f64, order: usize) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as usize;
    main_sum(t, n) + remainder(a, n, order)
}
