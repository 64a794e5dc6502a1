//! Interval unions and the disconnected sets built from Gram windows.

mod family;
mod union;

pub use family::{build_set, density, long_span, short_span, Family, SetFamily, DEFAULT_EPSILON, MIN_BASE, MIN_PARAMETER};
pub use union::{set_distance, IntervalUnion};
