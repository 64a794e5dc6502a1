//! The Jacob's ladder φ₁ on a working window.
//!
//! φ₁ is realized as φ₁(t) = T + ∫_{T̊}^{t} ω(u) Z²(u) du, anchored at the
//! root T̊ of u − (1−c) u / ln u = T. The table keeps one panel per
//! checkpoint step; each panel stores the Legendre coefficients of ω Z²
//! sampled at 16 Gauss–Legendre nodes, so forward evaluation integrates the
//! stored series exactly and needs no further Z evaluations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::rule::{antiderivative_coefficients, legendre_series, GaussLegendre};
use crate::roots::safeguarded_newton;
use crate::sets::IntervalUnion;
use crate::sum::CompensatedSum;
use crate::zeta::{omega_unchecked, z_fast, zero_spacing, ZEvalConfig, EULER_GAMMA};

/// Samples per checkpoint panel.
pub const PANEL_NODES: usize = 16;

/// Default checkpoint step as a fraction of the mean zero spacing.
pub const DEFAULT_STEP_FRACTION: f64 = 0.25;

/// Lowest image height accepted by the ladder constructions.
pub const MIN_HEIGHT: f64 = 1e4;

mod cache;

pub use cache::CACHE_VERSION;

const CHUNK: usize = 1024;

/// Root of u − (1−c) u / ln u = T, with T̊ > T.
pub fn solve_anchor(t: f64) -> Result<f64> {
    if !(t >= MIN_HEIGHT && t.is_finite()) {
        return Err(Error::Domain {
            what: "solve_anchor",
            bound: "T >= 1e4",
            value: t,
        });
    }
    let k = 1.0 - EULER_GAMMA;
    let f = |u: f64| u - k * u / u.ln() - t;
    let df = |u: f64| {
        let l = u.ln();
        1.0 - k / l + k / (l * l)
    };
    let mut u = t + k * t / t.ln();
    for _ in 0..50 {
        let step = f(u) / df(u);
        u -= step;
        if step.abs() <= 4.0 * f64::EPSILON * u {
            break;
        }
    }
    let residual = f(u).abs();
    if residual >= 1e-6 || !(u > t) {
        return Err(Error::NonConvergence {
            method: "anchor Newton",
            iterations: 50,
            last: u,
        });
    }
    Ok(u)
}

/// t / ln t, the prime-count surrogate entering the gap law.
pub fn prime_count_approx(t: f64) -> Result<f64> {
    if !(t >= 100.0) {
        return Err(Error::Domain {
            what: "prime_count_approx",
            bound: "t >= 100",
            value: t,
        });
    }
    Ok(t / t.ln())
}

/// (1 − c) t / ln t.
pub fn gap_law(t: f64) -> f64 {
    (1.0 - EULER_GAMMA) * t / t.ln()
}

/// Largest admissible image extent, T / ln T.
pub fn max_extent(t: f64) -> f64 {
    t / t.ln()
}

/// Direction of [`LadderTable::eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, PartialEq)]
struct Panel {
    density: [f64; PANEL_NODES],
    antiderivative: [f64; PANEL_NODES + 1],
    peak: f64,
}

/// Checkpoint table of φ₁ over [T̊, T̊ + K h].
#[derive(Debug, Clone, PartialEq)]
pub struct LadderTable {
    anchor_hat: f64,
    anchor_image: f64,
    extent: f64,
    step: f64,
    z: ZEvalConfig,
    phi: Vec<f64>,
    panels: Vec<Panel>,
}

/// Options for [`build_table`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub step_fraction: f64,
    pub z: ZEvalConfig,
}

impl Default for LadderSpec {
    fn default() -> Self {
        Self {
            step_fraction: DEFAULT_STEP_FRACTION,
            z: ZEvalConfig::default(),
        }
    }
}

fn panel_on(rule: &GaussLegendre<f64>, a: f64, b: f64, order: usize) -> Panel {
    let mut samples = [0.0; PANEL_NODES];
    for (s, t) in samples.iter_mut().zip(rule.nodes_on(a, b)) {
        let z = z_fast(t, order);
        *s = omega_unchecked(t) * z * z;
    }
    let c = rule.legendre_coefficients(&samples);
    let a = antiderivative_coefficients(&c);
    Panel {
        density: c.try_into().expect("16 coefficients"),
        antiderivative: a.try_into().expect("17 coefficients"),
        peak: samples.iter().copied().fold(0.0, f64::max),
    }
}

/// Builds φ₁ from T̊ forward until its image covers [T, T + extent].
pub fn build_table(t: f64, extent: f64, spec: &LadderSpec) -> Result<LadderTable> {
    let anchor_hat = solve_anchor(t)?;
    let limit = max_extent(t);
    if !(extent > 0.0 && extent <= limit) {
        return Err(Error::Admissibility { extent, limit });
    }
    if !(spec.step_fraction > 0.0 && spec.step_fraction <= 1.0) {
        return Err(Error::Invalid(format!("step_fraction {} outside (0, 1]", spec.step_fraction)));
    }
    spec.z.validate()?;
    spec.z.check_riemann_siegel(anchor_hat)?;
    let step = spec.step_fraction * zero_spacing(anchor_hat);
    let rule = GaussLegendre::<f64>::new(PANEL_NODES)?;
    let target = t + extent;
    let order = spec.z.correction_order;

    let mut phi = vec![t];
    let mut panels: Vec<Panel> = Vec::new();
    let mut acc = CompensatedSum::new();
    acc.add(t);
    while *phi.last().expect("nonempty") < target {
        let base = panels.len();
        // heights are far below the table limit, checked once per chunk
        spec.z.check_riemann_siegel(anchor_hat + (base + CHUNK) as f64 * step)?;
        let chunk: Vec<Panel> = (base..base + CHUNK)
            .into_par_iter()
            .map(|k| {
                let a = anchor_hat + k as f64 * step;
                panel_on(&rule, a, anchor_hat + (k + 1) as f64 * step, order)
            })
            .collect();
        for p in chunk {
            acc.add(step * p.density[0]);
            phi.push(acc.value());
            panels.push(p);
            if *phi.last().expect("nonempty") >= target {
                break;
            }
        }
        if panels.len() > 50_000_000 {
            return Err(Error::NonConvergence {
                method: "ladder build",
                iterations: panels.len(),
                last: *phi.last().expect("nonempty"),
            });
        }
    }
    Ok(LadderTable {
        anchor_hat,
        anchor_image: t,
        extent,
        step,
        z: spec.z,
        phi,
        panels,
    })
}

impl LadderTable {
    /// T̊.
    pub fn anchor_hat(&self) -> f64 {
        self.anchor_hat
    }

    /// T, with φ₁(T̊) = T.
    pub fn anchor_image(&self) -> f64 {
        self.anchor_image
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Checkpoint spacing.
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn z_config(&self) -> &ZEvalConfig {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.panels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.panels.is_empty()
    }

    /// [T̊, last checkpoint].
    pub fn domain(&self) -> (f64, f64) {
        (self.anchor_hat, self.edge(self.panels.len()))
    }

    /// [T, φ₁(last checkpoint)].
    pub fn image(&self) -> (f64, f64) {
        (self.anchor_image, *self.phi.last().expect("nonempty"))
    }

    fn edge(&self, k: usize) -> f64 {
        self.anchor_hat + k as f64 * self.step
    }

    /// Checkpoints (t_k, φ₁(t_k)).
    pub fn checkpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.phi.iter().enumerate().map(|(k, &p)| (self.edge(k), p))
    }

    /// Stored density coefficients of the panel starting at checkpoint k.
    pub fn panel_coefficients(&self, k: usize) -> Option<&[f64; PANEL_NODES]> {
        self.panels.get(k).map(|p| &p.density)
    }

    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfRange { value: t, lo, hi });
        }
        let k = (((t - self.anchor_hat) / self.step).floor() as usize).min(self.panels.len() - 1);
        let u = (2.0 * (t - self.edge(k)) / self.step - 1.0).clamp(-1.0, 1.0);
        Ok((k, u))
    }

    /// φ₁(t).
    pub fn forward(&self, t: f64) -> Result<f64> {
        let (k, u) = self.locate(t)?;
        Ok(self.forward_in(k, u))
    }

    fn forward_in(&self, k: usize, u: f64) -> f64 {
        let d = 0.5 * self.step * legendre_series(&self.panels[k].antiderivative, u);
        (self.phi[k] + d.max(0.0)).min(self.phi[k + 1])
    }

    /// φ₁'(t) = ω(t) Z²(t) from the stored series.
    pub fn density(&self, t: f64) -> Result<f64> {
        let (k, u) = self.locate(t)?;
        Ok(legendre_series(&self.panels[k].density, u))
    }

    /// Largest sampled φ₁' on the panel holding t.
    pub fn peak_density(&self, t: f64) -> Result<f64> {
        let (k, _) = self.locate(t)?;
        Ok(self.panels[k].peak)
    }

    /// Smallest t with φ₁(t) = x.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.image();
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfRange { value: x, lo, hi });
        }
        let k = self.phi[1..].partition_point(|&p| p < x);
        let target = x - self.phi[k];
        if target <= 0.0 {
            return Ok(self.edge(k));
        }
        let half = 0.5 * self.step;
        let panel = &self.panels[k];
        let u = safeguarded_newton(
            |u: f64| {
                (
                    half * legendre_series(&panel.antiderivative, u) - target,
                    half * legendre_series(&panel.density, u),
                )
            },
            -1.0,
            1.0,
            1e-15,
            200,
        )?;
        Ok(self.edge(k) + half * (u + 1.0))
    }

    pub fn eval(&self, v: f64, direction: Direction) -> Result<f64> {
        match direction {
            Direction::Forward => self.forward(v),
            Direction::Inverse => self.inverse(v),
        }
    }

    /// Preimage of a union under φ₁.
    pub fn lift_set(&self, g: &IntervalUnion<f64>) -> Result<IntervalUnion<f64>> {
        g.map_endpoints(|x| self.inverse(x))
    }

    /// Mean slope of φ₁ over the whole table.
    pub fn mean_slope(&self) -> f64 {
        let (a, b) = self.domain();
        let (p, q) = self.image();
        (q - p) / (b - a)
    }
}
