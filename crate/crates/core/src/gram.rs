//! Generalized Gram sequences.
//!
//! `t_ν(τ)` solves θ(t) = πν + τ and `g_ν(τ)` solves θ₁(g) = (π/2)ν + τ/2,
//! with τ ∈ [−π, π]. Index ν = n, τ = 0 of the first kind is the classical
//! Gram point g_n.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::{theta_main, theta_rate, ThetaVariant};

/// Which phase equation a node solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GramKind {
    /// θ(t_ν(τ)) = πν + τ.
    Theta,
    /// θ₁(g_ν(τ)) = (π/2)ν + τ/2.
    Theta1,
}

impl GramKind {
    pub fn name(self) -> &'static str {
        match self {
            GramKind::Theta => "theta_seq",
            GramKind::Theta1 => "theta1_seq",
        }
    }

    fn phase(self, t: f64) -> f64 {
        match self {
            GramKind::Theta => crate::zeta::theta(t, ThetaVariant::ExactAsymptotic, 0).expect("heights are kept above 10"),
            GramKind::Theta1 => theta_main(t),
        }
    }

    fn phase_rate(self, t: f64) -> f64 {
        match self {
            GramKind::Theta => crate::zeta::theta(t, ThetaVariant::ExactAsymptotic, 1).expect("heights are kept above 10"),
            GramKind::Theta1 => theta_rate(t),
        }
    }

    /// Target phase of node (ν, τ).
    pub fn target(self, index: u64, offset: f64) -> f64 {
        match self {
            GramKind::Theta => PI * index as f64 + offset,
            GramKind::Theta1 => 0.5 * PI * index as f64 + 0.5 * offset,
        }
    }

    /// Real-valued index whose target phase equals the phase at `t`.
    pub(crate) fn fractional_index(self, t: f64, offset: f64) -> f64 {
        match self {
            GramKind::Theta => (self.phase(t) - offset) / PI,
            GramKind::Theta1 => (2.0 * self.phase(t) - offset) / PI,
        }
    }

    /// Distance between consecutive nodes near `t`.
    pub fn spacing(self, t: f64) -> f64 {
        match self {
            GramKind::Theta => PI / theta_rate(t),
            GramKind::Theta1 => 0.5 * PI / theta_rate(t),
        }
    }
}

/// A solved phase-equation root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramNode {
    pub kind: GramKind,
    pub index: u64,
    pub offset: f64,
    pub height: f64,
}

impl GramNode {
    /// |phase(height) − target|.
    pub fn residual(&self) -> f64 {
        (self.kind.phase(self.height) - self.kind.target(self.index, self.offset)).abs()
    }
}

/// Index parity filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, index: u64) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => index.is_multiple_of(2),
            Parity::Odd => index % 2 == 1,
        }
    }
}

const MAX_NEWTON: usize = 50;

/// Residual tolerance for a node with the given target phase.
pub fn residual_tolerance(target: f64) -> f64 {
    1e-9 * target.abs().max(1.0)
}

/// Solves the phase equation for node (ν, τ).
pub fn node_height(kind: GramKind, index: u64, offset: f64) -> Result<f64> {
    if index < 1 {
        return Err(Error::Invalid("Gram index must be at least 1".into()));
    }
    if !(-PI..=PI).contains(&offset) {
        return Err(Error::OutOfRange {
            value: offset,
            lo: -PI,
            hi: PI,
        });
    }
    let target = kind.target(index, offset);

    // θ₁ ≈ (t/2)(ln(t/2π) − 1) − π/8: two fixed-point steps on its inverse
    let mut t = (2.0 * (target + PI / 8.0)).max(40.0);
    for _ in 0..2 {
        let denom = (t / (2.0 * PI)).ln() - 1.0;
        if denom > 0.5 {
            t = (2.0 * (target + PI / 8.0) / denom).max(20.0);
        }
    }
    // Newton on a convex increasing phase converges monotonically from the right
    while kind.phase(t) < target {
        t *= 1.5;
    }
    for _ in 0..MAX_NEWTON {
        let f = kind.phase(t) - target;
        let step = f / kind.phase_rate(t);
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t {
            let residual = (kind.phase(t) - target).abs();
            if residual < residual_tolerance(target) {
                return Ok(t);
            }
        }
    }
    Err(Error::NonConvergence {
        method: "Gram node Newton",
        iterations: MAX_NEWTON,
        last: t,
    })
}

/// Every node of `kind` with height in `[lo, hi]`, ordered by height.
pub fn nodes_in_range(kind: GramKind, lo: f64, hi: f64, parity: Parity, offset: f64) -> Result<Vec<GramNode>> {
    if !(lo >= 100.0 && lo < hi) {
        return Err(Error::Invalid(format!("node range [{lo}, {hi}] must satisfy 100 <= lo < hi")));
    }
    if !(-PI..=PI).contains(&offset) {
        return Err(Error::OutOfRange {
            value: offset,
            lo: -PI,
            hi: PI,
        });
    }
    let first = (kind.fractional_index(lo, offset).floor() as i64 - 1).max(1) as u64;
    let last = kind.fractional_index(hi, offset).ceil() as u64 + 1;
    let solved: Result<Vec<GramNode>> = (first..=last)
        .into_par_iter()
        .filter(|&index| parity.admits(index))
        .map(|index| {
            node_height(kind, index, offset).map(|height| GramNode {
                kind,
                index,
                offset,
                height,
            })
        })
        .collect();
    Ok(solved?.into_iter().filter(|n| n.height >= lo && n.height <= hi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::gamma::theta_from_log_gamma;

    #[test]
    fn first_gram_point() {
        // bisection on θ(t) − π with the log-gamma θ
        let oracle = crate::roots::bisect(|t| theta_from_log_gamma(t) - PI, 18.0, 30.0, 1e-13, 200).unwrap();
        let t = node_height(GramKind::Theta, 1, 0.0).unwrap();
        assert!((t - oracle).abs() < 1e-9, "{t} vs {oracle}");
        assert!((t - 23.1703).abs() < 1e-4);
    }

    #[test]
    fn kinds_agree_on_shared_targets() {
        for nu in [990u64, 1000, 1010] {
            let a = node_height(GramKind::Theta, nu, 0.0).unwrap();
            let b = node_height(GramKind::Theta1, 2 * nu, 0.0).unwrap();
            assert!((a - b).abs() < 1e-4, "ν={nu}: {a} vs {b}");
        }
    }

    #[test]
    fn offset_pi_meets_index_two_up_minus_pi() {
        for nu in [1u64, 7, 5000] {
            let a = node_height(GramKind::Theta, nu, PI).unwrap();
            let b = node_height(GramKind::Theta, nu + 2, -PI).unwrap();
            assert!((a - b).abs() <= 1e-10 * a, "{a} vs {b}");
        }
    }

    #[test]
    fn index_zero_and_bad_offset_rejected() {
        assert!(node_height(GramKind::Theta, 0, 0.0).is_err());
        assert!(node_height(GramKind::Theta, 3, 3.5).is_err());
    }

    #[test]
    fn count_over_u1_window_at_one_million() {
        let t = 1e6;
        let p0 = (t / (2.0 * PI)).sqrt();
        let u1 = t.sqrt() * p0.ln();
        let nodes = nodes_in_range(GramKind::Theta, t, t + u1, Parity::All, 0.0).unwrap();
        let main = u1 * p0.ln() / PI;
        let rel = (nodes.len() as f64 - main).abs() / main;
        assert!(rel < 0.02, "{} vs {main}", nodes.len());
        assert!((main - 11_400.0).abs() < 50.0);
        assert!(nodes
            .iter()
            .all(|n| n.residual() < residual_tolerance(n.kind.target(n.index, 0.0))));
        assert!(nodes.windows(2).all(|w| w[0].height < w[1].height));
    }

    #[test]
    fn short_range_holds_at_most_one_node() {
        let a = 2e5;
        for kind in [GramKind::Theta, GramKind::Theta1] {
            let s = kind.spacing(a);
            for k in 0..20 {
                let lo = a + k as f64 * 0.37 * s;
                let n = nodes_in_range(kind, lo, lo + 0.1 * s, Parity::All, 0.0).unwrap();
                assert!(n.len() <= 1);
            }
        }
    }

    #[test]
    fn local_spacing_matches_phase_rate() {
        let t = 1e6;
        for kind in [GramKind::Theta, GramKind::Theta1] {
            let nodes = nodes_in_range(kind, t, t + 30.0, Parity::All, 0.0).unwrap();
            for w in nodes.windows(2) {
                let d = w[1].height - w[0].height;
                let expect = match kind {
                    GramKind::Theta => PI / theta_rate(w[0].height),
                    GramKind::Theta1 => 0.5 * PI / theta_rate(w[0].height),
                };
                assert!((d / expect - 1.0).abs() < 0.05);
            }
        }
    }

    #[test]
    fn range_is_complete_and_parity_filtered() {
        let (lo, hi) = (5e4, 5e4 + 40.0);
        for kind in [GramKind::Theta, GramKind::Theta1] {
            for offset in [-1.0, 0.0, 2.5] {
                let all = nodes_in_range(kind, lo, hi, Parity::All, offset).unwrap();
                let first = all.first().unwrap().index;
                let last = all.last().unwrap().index;
                assert!(node_height(kind, first - 1, offset).unwrap() < lo);
                assert!(node_height(kind, last + 1, offset).unwrap() > hi);
                assert_eq!(last - first + 1, all.len() as u64);
                let even = nodes_in_range(kind, lo, hi, Parity::Even, offset).unwrap();
                let odd = nodes_in_range(kind, lo, hi, Parity::Odd, offset).unwrap();
                assert_eq!(even.len() + odd.len(), all.len());
                assert!(even.iter().all(|n| n.index % 2 == 0));
                assert!(odd.iter().all(|n| n.index % 2 == 1));
            }
        }
    }

    #[test]
    fn empty_range_is_valid() {
        let a = 3e5;
        let s = GramKind::Theta.spacing(a);
        let n0 = nodes_in_range(GramKind::Theta, a, a + 3.0 * s, Parity::All, 0.0).unwrap();
        let gap_lo = n0[0].height + 1e-6;
        let gap_hi = n0[1].height - 1e-6;
        assert!(nodes_in_range(GramKind::Theta, gap_lo, gap_hi, Parity::All, 0.0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn heights_increase_with_offset() {
        let mut prev = 0.0;
        for k in -4..=4 {
            let h = node_height(GramKind::Theta1, 777, k as f64 * PI / 4.0).unwrap();
            assert!(h > prev);
            prev = h;
        }
    }
}
