//! The disconnected sets G₁(x), G₂(y), G₃(x), G₄(y).

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::IntervalUnion;
use crate::error::{Error, Result};
use crate::gram::{node_height, GramKind, Parity};

/// Default ε in the spans T^{1/6+2ε} and T^{5/12+2ε}.
pub const DEFAULT_EPSILON: f64 = 0.05;

/// Smallest window parameter accepted by [`build_set`].
pub const MIN_PARAMETER: f64 = 1e-6;

/// Lowest base height for the set constructions.
pub const MIN_BASE: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::G1, Family::G2, Family::G3, Family::G4];

    pub fn kind(self) -> GramKind {
        match self {
            Family::G1 | Family::G2 => GramKind::Theta,
            Family::G3 | Family::G4 => GramKind::Theta1,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Family::G1 | Family::G3 => Parity::Even,
            Family::G2 | Family::G4 => Parity::Odd,
        }
    }

    /// Exponent `a` of the default span T^{a + 2ε}.
    fn span_exponent(self) -> f64 {
        match self {
            Family::G1 | Family::G2 => 1.0 / 6.0,
            Family::G3 | Family::G4 => 5.0 / 12.0,
        }
    }

    pub fn default_span(self, base: f64, epsilon: f64) -> f64 {
        base.powf(self.span_exponent() + 2.0 * epsilon)
    }
}

/// H = T^{1/6 + 2ε}.
pub fn short_span(base: f64, epsilon: f64) -> f64 {
    Family::G1.default_span(base, epsilon)
}

/// U₂ = T^{5/12 + 2ε}.
pub fn long_span(base: f64, epsilon: f64) -> f64 {
    Family::G3.default_span(base, epsilon)
}

/// Everything needed to build one set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetFamily {
    pub family: Family,
    pub parameter: f64,
    pub base: f64,
    pub span: f64,
    pub epsilon: f64,
}

impl SetFamily {
    /// Uses the family's default span at the given ε.
    pub fn new(family: Family, parameter: f64, base: f64, epsilon: f64) -> Self {
        Self {
            family,
            parameter,
            base,
            span: family.default_span(base, epsilon),
            epsilon,
        }
    }

    pub fn with_span(mut self, span: f64) -> Self {
        self.span = span;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.parameter > 0.0 && self.parameter <= FRAC_PI_2) {
            return Err(Error::OutOfRange {
                value: self.parameter,
                lo: 0.0,
                hi: FRAC_PI_2,
            });
        }
        if self.parameter < MIN_PARAMETER {
            return Err(Error::Degenerate(self.parameter));
        }
        if !(self.base >= MIN_BASE && self.base.is_finite()) {
            return Err(Error::Domain {
                what: "set base height",
                bound: "T >= 1e4",
                value: self.base,
            });
        }
        if !(self.span > 0.0 && self.span.is_finite()) {
            return Err(Error::Invalid(format!("span {} must be positive", self.span)));
        }
        Ok(())
    }
}

/// Union of the windows (node(−x), node(+x)) over admitted indices, clipped
/// to [T, T + span].
pub fn build_set(spec: &SetFamily) -> Result<IntervalUnion<f64>> {
    spec.validate()?;
    let kind = spec.family.kind();
    let parity = spec.family.parity();
    let (a, b) = (spec.base, spec.base + spec.span);
    let first = (kind.fractional_index(a, 0.0).floor() as u64).saturating_sub(1).max(1);
    let last = kind.fractional_index(b, 0.0).ceil() as u64 + 1;
    let x = spec.parameter;
    let windows: Result<Vec<(f64, f64)>> = (first..=last)
        .into_par_iter()
        .filter(|&nu| parity.admits(nu))
        .map(|nu| Ok((node_height(kind, nu, -x)?, node_height(kind, nu, x)?)))
        .collect();
    let windows = windows?;
    // node(+x) at ν lies below node(−x) at ν + 2 whenever x < π
    if let Some(k) = windows.windows(2).position(|w| !(w[0].1 < w[1].0)) {
        return Err(Error::InvalidUnion(format!(
            "{:?} windows {k} and {} overlap at x = {x}",
            spec.family,
            k + 1
        )));
    }
    Ok(IntervalUnion::new(windows)?.clip(a, b))
}

/// Fraction of [T, T + span] covered by a set with parameter x.
pub fn density(x: f64) -> f64 {
    x / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::set_distance;

    const T: f64 = 1e6;
    // windows of companion sets share endpoints at x = y = π/2; the two
    // Newton solves of a shared target phase agree to a few ulps of T
    const NODE_RESOLUTION: f64 = 1e-8;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn g1_measure_follows_x_over_pi() {
        let h = short_span(T, DEFAULT_EPSILON);
        assert!((h - 39.81).abs() < 0.01);
        for x in [0.5, 1.0, FRAC_PI_2] {
            for fam in [Family::G1, Family::G2] {
                let m = build_set(&SetFamily::new(fam, x, T, DEFAULT_EPSILON)).unwrap().measure();
                assert!(rel(m, density(x) * h) < 3.0 / T.ln(), "{fam:?} x={x}: {m}");
            }
        }
    }

    #[test]
    fn g3_g4_fill_the_long_window_at_right_angle() {
        let u2 = long_span(T, DEFAULT_EPSILON);
        let g3 = build_set(&SetFamily::new(Family::G3, FRAC_PI_2, T, DEFAULT_EPSILON)).unwrap();
        let g4 = build_set(&SetFamily::new(Family::G4, FRAC_PI_2, T, DEFAULT_EPSILON)).unwrap();
        assert!(rel(g3.measure() + g4.measure(), u2) < 0.02);
        assert!(g3.overlap(&g4) <= NODE_RESOLUTION * g3.len() as f64);
        // windows touch at x = π/2, so the complement is a null set
        assert!((g3.measure() + g4.measure() - u2).abs() < 1e-6 * u2);
    }

    #[test]
    fn companion_sets_are_disjoint() {
        for (x, y) in [(0.3, 1.2), (FRAC_PI_2, FRAC_PI_2), (1.0, 0.1)] {
            let g1 = build_set(&SetFamily::new(Family::G1, x, T, DEFAULT_EPSILON)).unwrap();
            let g2 = build_set(&SetFamily::new(Family::G2, y, T, DEFAULT_EPSILON)).unwrap();
            assert!(g1.overlap(&g2) <= NODE_RESOLUTION * g1.len() as f64);
            let g3 = build_set(&SetFamily::new(Family::G3, x, T, DEFAULT_EPSILON)).unwrap();
            let g4 = build_set(&SetFamily::new(Family::G4, y, T, DEFAULT_EPSILON)).unwrap();
            assert!(g3.overlap(&g4) <= NODE_RESOLUTION * g3.len() as f64);
            if x + y < 3.0 {
                assert!(g1.is_disjoint_from(&g2) && g3.is_disjoint_from(&g4));
            }
        }
    }

    #[test]
    fn measure_is_linear_in_x() {
        for fam in Family::ALL {
            let per_x: Vec<f64> = (1..=5)
                .map(|k| {
                    let x = (0.3 * k as f64).min(FRAC_PI_2);
                    build_set(&SetFamily::new(fam, x, T, DEFAULT_EPSILON)).unwrap().measure() / x
                })
                .chain(std::iter::once(
                    build_set(&SetFamily::new(fam, FRAC_PI_2, T, DEFAULT_EPSILON))
                        .unwrap()
                        .measure()
                        / FRAC_PI_2,
                ))
                .collect();
            let mean = per_x.iter().sum::<f64>() / per_x.len() as f64;
            assert!(per_x.iter().all(|v| rel(*v, mean) < 0.05), "{fam:?}: {per_x:?}");
        }
    }

    #[test]
    fn tiny_parameter_is_small_or_degenerate() {
        let h = short_span(T, DEFAULT_EPSILON);
        let m = build_set(&SetFamily::new(Family::G1, 0.001, T, DEFAULT_EPSILON))
            .unwrap()
            .measure();
        assert!(m < 0.001 * h);
        assert!(matches!(
            build_set(&SetFamily::new(Family::G1, 1e-7, T, DEFAULT_EPSILON)),
            Err(Error::Degenerate(_))
        ));
        assert!(build_set(&SetFamily::new(Family::G1, 1.6, T, DEFAULT_EPSILON)).is_err());
        assert!(build_set(&SetFamily::new(Family::G1, 1.0, 5e3, DEFAULT_EPSILON)).is_err());
    }

    #[test]
    fn sets_stay_inside_their_window() {
        for fam in Family::ALL {
            let s = SetFamily::new(fam, 1.0, T, DEFAULT_EPSILON);
            let u = build_set(&s).unwrap();
            let (lo, hi) = u.hull().unwrap();
            assert!(lo >= T && hi <= T + s.span);
            let whole = IntervalUnion::single(T, T + s.span).unwrap();
            assert_eq!(set_distance(&u, &whole).unwrap(), 0.0);
        }
    }

    #[test]
    fn windows_surround_their_centres() {
        let u = build_set(&SetFamily::new(Family::G1, 0.4, T, DEFAULT_EPSILON)).unwrap();
        let nodes = crate::gram::nodes_in_range(GramKind::Theta, T + 1.0, T + 30.0, Parity::Even, 0.0).unwrap();
        for n in nodes {
            assert!(u.contains(n.height));
        }
        let odd = crate::gram::nodes_in_range(GramKind::Theta, T + 1.0, T + 30.0, Parity::Odd, 0.0).unwrap();
        assert!(odd.iter().all(|n| !u.contains(n.height)));
    }
}
