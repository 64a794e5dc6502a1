//! Scalar abstraction shared by the type-agnostic parts of the crate
//! (interval unions, Gauss–Legendre rules, compensated sums, root finding).
//!
//! The zeta kernels themselves are `f64`-only: their phase reduction relies
//! on double-double arithmetic built from `f64` error-free transforms.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal fits every Real")
    }

    /// Conversion from a count.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}
