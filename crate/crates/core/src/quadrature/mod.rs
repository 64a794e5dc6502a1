//! Composite Gauss–Legendre quadrature of Z-built integrands over unions.
//!
//! Panels are sized from the local zero spacing π/θ₁'(t). For integrands
//! that evaluate Z at φ₁(t) the phase advances φ₁'(t) times faster, so each
//! table panel is subdivided by 1 + k·max φ₁' (k the power of Z∘φ₁ in the
//! integrand). Each component is accepted when halving every panel moves its
//! integral by less than `refine_tol` times max(|I|, ∫|f|); otherwise the
//! panel density doubles, at most `max_escalations` times.

pub mod rule;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::LadderTable;
use crate::sets::IntervalUnion;
use crate::sum::CompensatedSum;
use crate::zeta::{omega_unchecked, z_fast, zero_spacing, ZEvalConfig, OMEGA_MIN_HEIGHT};
use rule::GaussLegendre;

/// Quadrature policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    /// Panels per mean zero spacing, at least 2.
    pub panels_per_oscillation: f64,
    /// Gauss–Legendre nodes per panel, at least 4.
    pub nodes_per_panel: usize,
    /// Relative change allowed under one panel halving.
    pub refine_tol: f64,
    /// Density doublings tried before giving up.
    pub max_escalations: usize,
    pub z: ZEvalConfig,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            panels_per_oscillation: 4.0,
            nodes_per_panel: 8,
            refine_tol: 1e-6,
            max_escalations: 3,
            z: ZEvalConfig::default(),
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.panels_per_oscillation >= 2.0 && self.panels_per_oscillation.is_finite()) {
            return Err(Error::Invalid(format!(
                "panels_per_oscillation {} must be at least 2",
                self.panels_per_oscillation
            )));
        }
        if !(4..=rule::MAX_NODES).contains(&self.nodes_per_panel) {
            return Err(Error::Invalid(format!(
                "nodes_per_panel {} outside 4..={}",
                self.nodes_per_panel,
                rule::MAX_NODES
            )));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::Invalid(format!("refine_tol {} must be positive", self.refine_tol)));
        }
        self.z.validate()
    }

    /// The same policy at `factor` times the panel density.
    pub fn denser(mut self, factor: f64) -> Self {
        self.panels_per_oscillation *= factor;
        self
    }
}

/// Integrands built from Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrandId {
    Z,
    Z2,
    Z4,
    OmegaZ2,
    /// ω(t) Z[φ₁(t)] Z²(t).
    OmegaZphiZ2,
    /// ω(t) Z²[φ₁(t)] Z²(t).
    OmegaZ2phiZ2,
    /// |ζ(1/2 + it)|² = Z²(t).
    ZetaSq,
}

impl IntegrandId {
    pub fn name(self) -> &'static str {
        match self {
            IntegrandId::Z => "Z",
            IntegrandId::Z2 => "Z2",
            IntegrandId::Z4 => "Z4",
            IntegrandId::OmegaZ2 => "omegaZ2",
            IntegrandId::OmegaZphiZ2 => "omega_Zphi_Z2",
            IntegrandId::OmegaZ2phiZ2 => "omega_Z2phi_Z2",
            IntegrandId::ZetaSq => "zeta_sq",
        }
    }

    /// Power of Z∘φ₁ in the integrand.
    pub fn ladder_power(self) -> u32 {
        match self {
            IntegrandId::OmegaZphiZ2 => 1,
            IntegrandId::OmegaZ2phiZ2 => 2,
            _ => 0,
        }
    }

    pub fn needs_ladder(self) -> bool {
        self.ladder_power() > 0
    }

    /// Powers of Z at t, used to scale the panel density.
    fn z_power(self) -> u32 {
        match self {
            IntegrandId::Z => 1,
            IntegrandId::Z4 => 4,
            _ => 2,
        }
    }
}

/// Outcome of one union integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadOutcome {
    pub value: f64,
    /// ∫|f| at the accepted density.
    pub magnitude: f64,
    /// Largest |I_2n − I_n| over components at acceptance.
    pub refinement_delta: f64,
    /// Largest number of escalations any component needed.
    pub escalations: usize,
    pub panels: usize,
}

struct Integrand<'a> {
    eval: Box<dyn Fn(f64) -> f64 + Sync + 'a>,
    // local subdivision factor of a base panel starting at t
    rate: Box<dyn Fn(f64) -> f64 + Sync + 'a>,
    table: Option<&'a LadderTable>,
}

fn z_integrand<'a>(id: IntegrandId, spec: &QuadSpec, table: Option<&'a LadderTable>) -> Result<Integrand<'a>> {
    let order = spec.z.correction_order;
    let eval: Box<dyn Fn(f64) -> f64 + Sync + 'a> = match id {
        IntegrandId::Z => Box::new(move |t| z_fast(t, order)),
        IntegrandId::Z2 | IntegrandId::ZetaSq => Box::new(move |t| z_fast(t, order).powi(2)),
        IntegrandId::Z4 => Box::new(move |t| z_fast(t, order).powi(4)),
        IntegrandId::OmegaZ2 => Box::new(move |t| omega_unchecked(t) * z_fast(t, order).powi(2)),
        IntegrandId::OmegaZphiZ2 | IntegrandId::OmegaZ2phiZ2 => {
            let tab = table.ok_or(Error::MissingLadder(id.name()))?;
            let k = id.ladder_power() as i32;
            Box::new(move |t| {
                let phi = tab.forward(t).expect("component checked against the table domain");
                omega_unchecked(t) * z_fast(t, order).powi(2) * z_fast(phi, order).powi(k)
            })
        }
    };
    // the integrand's own oscillation relative to Z
    let own = (id.z_power() as f64 / 2.0).max(1.0);
    let k = id.ladder_power() as f64;
    let rate: Box<dyn Fn(f64) -> f64 + Sync + 'a> = match table.filter(|_| id.needs_ladder()) {
        Some(tab) => Box::new(move |t| own + k * tab.peak_density(t).unwrap_or(0.0)),
        None => Box::new(move |_| own),
    };
    Ok(Integrand {
        eval,
        rate,
        table: table.filter(|_| id.needs_ladder()),
    })
}

/// Splits [a, b] into base panels; ladder integrands are split at table
/// checkpoints first so each piece sees one panel's peak density.
fn base_panels(a: f64, b: f64, spec: &QuadSpec, f: &Integrand) -> Vec<(f64, f64)> {
    let mut pieces = Vec::new();
    match f.table {
        Some(tab) => {
            let (t0, h) = (tab.anchor_hat(), tab.step());
            let mut lo = a;
            while lo < b {
                let k = ((lo - t0) / h).floor();
                let mut hi = (t0 + (k + 1.0) * h).min(b);
                if hi <= lo {
                    hi = (t0 + (k + 2.0) * h).min(b);
                }
                pieces.push((lo, hi));
                lo = hi;
            }
        }
        None => pieces.push((a, b)),
    }
    let mut panels = Vec::new();
    for (lo, hi) in pieces {
        let width = zero_spacing(hi) / (spec.panels_per_oscillation * (f.rate)(0.5 * (lo + hi)));
        let n = ((hi - lo) / width).ceil().max(1.0) as usize;
        let w = (hi - lo) / n as f64;
        panels.extend((0..n).map(|i| {
            let p = lo + i as f64 * w;
            (p, if i + 1 == n { hi } else { lo + (i + 1) as f64 * w })
        }));
    }
    panels
}

/// (∫f, ∫|f|) over the panels, each split into `split` equal parts.
fn panel_sum(panels: &[(f64, f64)], split: usize, rule: &GaussLegendre<f64>, f: &Integrand) -> (f64, f64) {
    let parts: Vec<(f64, f64)> = panels
        .par_iter()
        .map(|&(a, b)| {
            let h = (b - a) / split as f64;
            let (mut s, mut m) = (0.0, 0.0);
            for j in 0..split {
                let lo = a + j as f64 * h;
                let hi = if j + 1 == split { b } else { a + (j + 1) as f64 * h };
                let (mut ps, mut pm) = (0.0, 0.0);
                for (x, w) in rule.nodes_on(lo, hi).zip(rule.weights()) {
                    let v = (f.eval)(x);
                    ps += w * v;
                    pm += w * v.abs();
                }
                s += 0.5 * (hi - lo) * ps;
                m += 0.5 * (hi - lo) * pm;
            }
            (s, m)
        })
        .collect();
    let (mut s, mut m) = (CompensatedSum::new(), CompensatedSum::new());
    for (a, b) in parts {
        s.add(a);
        m.add(b);
    }
    (s.value(), m.value())
}

fn integrate_with(f: &Integrand, u: &IntervalUnion<f64>, spec: &QuadSpec) -> Result<QuadOutcome> {
    spec.validate()?;
    let rule = GaussLegendre::<f64>::new(spec.nodes_per_panel)?;
    if let Some((lo, hi)) = u.hull() {
        spec.z.check_riemann_siegel(lo)?;
        spec.z.check_riemann_siegel(hi)?;
        if lo < OMEGA_MIN_HEIGHT {
            return Err(Error::Domain {
                what: "integrate_union",
                bound: "t >= 100",
                value: lo,
            });
        }
        if let Some(tab) = f.table {
            let (a, b) = tab.domain();
            if lo < a || hi > b {
                return Err(Error::OutOfRange {
                    value: if lo < a { lo } else { hi },
                    lo: a,
                    hi: b,
                });
            }
        }
    }
    let mut total = CompensatedSum::new();
    let mut magnitude = CompensatedSum::new();
    let mut outcome = QuadOutcome {
        value: 0.0,
        magnitude: 0.0,
        refinement_delta: 0.0,
        escalations: 0,
        panels: 0,
    };
    for &(a, b) in u.intervals() {
        let panels = base_panels(a, b, spec, f);
        let mut split = 1;
        let mut coarse = panel_sum(&panels, split, &rule, f).0;
        let mut level = 0;
        loop {
            let (fine, mag) = panel_sum(&panels, 2 * split, &rule, f);
            let delta = (fine - coarse).abs();
            if delta <= spec.refine_tol * fine.abs().max(mag) {
                total.add(fine);
                magnitude.add(mag);
                outcome.refinement_delta = outcome.refinement_delta.max(delta);
                outcome.escalations = outcome.escalations.max(level);
                outcome.panels += panels.len() * 2 * split;
                break;
            }
            if level == spec.max_escalations {
                return Err(Error::Quadrature {
                    escalations: level,
                    lo: a,
                    hi: b,
                });
            }
            level += 1;
            split *= 2;
            coarse = fine;
        }
    }
    outcome.value = total.value();
    outcome.magnitude = magnitude.value();
    Ok(outcome)
}

/// ∫ over `u` of the named integrand, with refinement diagnostics.
pub fn integrate_union_detailed(
    id: IntegrandId,
    u: &IntervalUnion<f64>,
    spec: &QuadSpec,
    table: Option<&LadderTable>,
) -> Result<QuadOutcome> {
    let f = z_integrand(id, spec, table)?;
    integrate_with(&f, u, spec)
}

/// ∫ over `u` of the named integrand.
pub fn integrate_union(id: IntegrandId, u: &IntervalUnion<f64>, spec: &QuadSpec, table: Option<&LadderTable>) -> Result<f64> {
    integrate_union_detailed(id, u, spec, table).map(|o| o.value)
}

/// ∫ over `u` of an arbitrary integrand whose oscillation is `rate` times
/// that of Z (use 1 for smooth or Z-like functions).
pub fn integrate_closure<F>(f: F, rate: f64, u: &IntervalUnion<f64>, spec: &QuadSpec) -> Result<QuadOutcome>
where
    F: Fn(f64) -> f64 + Sync,
{
    let f = Integrand {
        eval: Box::new(f),
        rate: Box::new(move |_| rate.max(1.0)),
        table: None,
    };
    integrate_with(&f, u, spec)
}

/// ∫ over `u` of ω(t) g(φ₁(t)) Z²(t) for an arbitrary g, where g oscillates
/// at most `rate` times as fast as Z.
pub fn integrate_lifted<G>(g: G, rate: f64, u: &IntervalUnion<f64>, spec: &QuadSpec, table: &LadderTable) -> Result<QuadOutcome>
where
    G: Fn(f64) -> f64 + Sync,
{
    let order = spec.z.correction_order;
    let f = Integrand {
        eval: Box::new(move |t| {
            let phi = table.forward(t).expect("component checked against the table domain");
            omega_unchecked(t) * z_fast(t, order).powi(2) * g(phi)
        }),
        rate: Box::new(move |t| 1.0 + rate * table.peak_density(t).unwrap_or(0.0)),
        table: Some(table),
    };
    integrate_with(&f, u, spec)
}
