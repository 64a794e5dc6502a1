//! Minimal double-double arithmetic for phase reduction.
//!
//! Only what the Riemann–Siegel kernel needs: error-free sums and products
//! (Dekker splitting, no FMA requirement), a logarithm, and reduction of a
//! large phase modulo 2π.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

pub const TWO_PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::TAU,
    lo: 2.449_293_598_294_706_4e-16,
};

pub const PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

const LN_2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline(always)]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline(always)]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline(always)]
pub fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

/// Exact product `a * b = p + e` given pre-split factors.
#[inline(always)]
pub fn two_prod_split(a: f64, (ah, al): (f64, f64), b: f64, (bh, bl): (f64, f64)) -> (f64, f64) {
    let p = a * b;
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

#[inline(always)]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    two_prod_split(a, split(a), b, split(b))
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    /// Natural logarithm, accurate to roughly 1e-30 relative.
    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        // scale into [0.75, 1.5) by an exact power of two
        let mut k = self.hi.log2().round() as i32;
        let mut scale = 2f64.powi(-k);
        if self.hi * scale >= 1.5 {
            k += 1;
            scale *= 0.5;
        } else if self.hi * scale < 0.75 {
            k -= 1;
            scale *= 2.0;
        }
        let m = Self::new(self.hi * scale, self.lo * scale);
        let one = Self::from_f64(1.0);
        let s = (m - one) / (m + one);
        if s.hi == 0.0 {
            return LN_2.mul_f64(k as f64);
        }
        let s2 = s * s;
        // atanh series: ln m = 2 (s + s^3/3 + s^5/5 + ...)
        let mut power = s;
        let mut acc = s;
        let mut j = 1.0;
        loop {
            power = power * s2;
            j += 2.0;
            let term = power / Self::from_f64(j);
            acc = acc + term;
            if term.hi.abs() < 1e-34 * acc.hi.abs().max(1e-300) {
                break;
            }
        }
        LN_2.mul_f64(k as f64) + acc.mul_f64(2.0)
    }

    /// Representative of `self mod 2π` in `[-π, π]` as a plain `f64`.
    #[inline(always)]
    pub fn rem_two_pi(self) -> f64 {
        reduce_two_pi(self.hi, self.lo)
    }
}

// Dekker split of TWO_PI.hi.
const TWO_PI_HI_SPLIT: (f64, f64) = (6.283_185_362_815_857, -5.563_627_070_159_782e-8);

/// Reduces `hi + lo` modulo 2π to `[-π, π]`.
///
/// Exact multiple removal via an error-free product with the high word of 2π;
/// valid while `|hi| < 2^51`.
#[inline(always)]
pub fn reduce_two_pi(hi: f64, lo: f64) -> f64 {
    const MAGIC: f64 = 6_755_399_441_055_744.0; // 1.5 * 2^52
    let k = ((hi * (1.0 / TWO_PI.hi)) + MAGIC) - MAGIC;
    let (p, e) = two_prod_split(k, split(k), TWO_PI.hi, TWO_PI_HI_SPLIT);
    ((hi - p) - e) + (lo - k * TWO_PI.lo)
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}
