//! Sums of Z over classical Gram points: the second-order autocorrelative
//! sum and the homogeneous power sums.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::{nodes_in_range, GramKind, GramNode, Parity};
use crate::sum::CompensatedSum;
use crate::zeta::{z_fast, ZEvalConfig};

/// P₀ = √(T/2π).
pub fn p0(t: f64) -> f64 {
    (t / (2.0 * PI)).sqrt()
}

/// U₁ = √T ln P₀.
pub fn u1(t: f64) -> f64 {
    t.sqrt() * p0(t).ln()
}

/// sin x / x with the removable singularity filled.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Parameters of the autocorrelative sum over [T, T + U₁].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutocorrParams {
    pub t: f64,
    pub beta: f64,
    pub normalized: bool,
}

impl AutocorrParams {
    pub fn new(t: f64, beta: f64, normalized: bool) -> Self {
        Self { t, beta, normalized }
    }

    /// Shift expressed as x = β ln P₀.
    pub fn with_x(t: f64, x: f64, normalized: bool) -> Self {
        Self::new(t, x / p0(t).ln(), normalized)
    }

    pub fn p0(&self) -> f64 {
        p0(self.t)
    }

    pub fn u1(&self) -> f64 {
        u1(self.t)
    }

    /// β ln P₀.
    pub fn x(&self) -> f64 {
        self.beta * self.p0().ln()
    }

    fn validate(&self) -> Result<()> {
        if !(self.t >= 1e4 && self.t.is_finite()) {
            return Err(Error::Domain {
                what: "autocorr_sum",
                bound: "T >= 1e4",
                value: self.t,
            });
        }
        if !(self.beta >= 0.0) {
            return Err(Error::Invalid(format!("shift {} must be nonnegative", self.beta)));
        }
        if self.x() > PI {
            return Err(Error::ShiftRange(self.x()));
        }
        Ok(())
    }
}

/// Result of one autocorrelative sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutocorrValue {
    /// Σ Z(t_ν) Z(t_ν + β).
    pub sum: f64,
    /// Q₁, the number of Gram points in [T, T + U₁].
    pub count: usize,
    /// sum / (Q₁ ln P₀), or `sum` itself when not normalized.
    pub value: f64,
}

/// Gram points t_ν with T ≤ t_ν ≤ T + U₁.
pub fn window_nodes(t: f64) -> Result<Vec<GramNode>> {
    nodes_in_range(GramKind::Theta, t, t + u1(t), Parity::All, 0.0)
}

fn shifted_products(nodes: &[GramNode], beta: f64, order: usize) -> f64 {
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|n| z_fast(n.height, order) * z_fast(n.height + beta, order))
        .collect();
    let mut acc = CompensatedSum::new();
    acc.extend(terms);
    acc.value()
}

/// Σ Z(t_ν) Z(t_ν + β) over the U₁ window above T.
pub fn autocorr_sum(p: &AutocorrParams, z: &ZEvalConfig) -> Result<AutocorrValue> {
    p.validate()?;
    z.validate()?;
    z.check_riemann_siegel(p.t)?;
    let nodes = window_nodes(p.t)?;
    autocorr_over(&nodes, p, z)
}

/// [`autocorr_sum`] on precomputed window nodes.
pub fn autocorr_over(nodes: &[GramNode], p: &AutocorrParams, z: &ZEvalConfig) -> Result<AutocorrValue> {
    p.validate()?;
    let sum = shifted_products(nodes, p.beta, z.correction_order);
    let count = nodes.len();
    let value = if p.normalized {
        if count == 0 {
            return Err(Error::EmptySet);
        }
        sum / (count as f64 * p.p0().ln())
    } else {
        sum
    };
    Ok(AutocorrValue { sum, count, value })
}

/// Main term (2/π) sinc(x) U₁ ln²P₀ of the un-normalized sum.
pub fn autocorr_main_term(t: f64, x: f64) -> f64 {
    2.0 / PI * sinc(x) * u1(t) * p0(t).ln().powi(2)
}

/// The same main term with a single power of ln P₀.
pub fn autocorr_main_term_single_log(t: f64, x: f64) -> f64 {
    2.0 / PI * sinc(x) * u1(t) * p0(t).ln()
}

/// Number of shifts in [`shape_grid`].
pub const SHAPE_POINTS: usize = 7;

/// Shifts x_k = kπ/14, k = 1..=7, spanning (0, π/2].
pub fn shape_grid() -> [f64; SHAPE_POINTS] {
    std::array::from_fn(|k| (k + 1) as f64 * PI / 14.0)
}

/// Normalized autocorrelative sums over a grid of shifts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSummary {
    pub t: f64,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Root mean square of value / (2 sinc x) − 1 over the grid.
    pub rel_rms: f64,
}

/// Compares the normalized sum with 2 sinc x at every shift of `grid`.
pub fn autocorr_shape(nodes: &[GramNode], t: f64, grid: &[f64], z: &ZEvalConfig) -> Result<ShapeSummary> {
    if grid.is_empty() {
        return Err(Error::Invalid("shape grid is empty".into()));
    }
    let values = grid
        .iter()
        .map(|&x| autocorr_over(nodes, &AutocorrParams::with_x(t, x, true), z).map(|v| v.value))
        .collect::<Result<Vec<f64>>>()?;
    let mut acc = CompensatedSum::new();
    for (&x, &v) in grid.iter().zip(&values) {
        let r = v / (2.0 * sinc(x)) - 1.0;
        acc.add(r * r);
    }
    Ok(ShapeSummary {
        t,
        xs: grid.to_vec(),
        rel_rms: (acc.value() / grid.len() as f64).sqrt(),
        values,
    })
}

/// Σ Z^e(t_ν) over Gram points in [T, T + span], e ∈ {2, 4}.
pub fn power_sum(t: f64, span: f64, exponent: u32, z: &ZEvalConfig) -> Result<f64> {
    if exponent != 2 && exponent != 4 {
        return Err(Error::Invalid(format!("power_sum exponent {exponent} must be 2 or 4")));
    }
    if !(span >= 0.0) {
        return Err(Error::Invalid(format!("span {span} must be nonnegative")));
    }
    if span == 0.0 {
        return Ok(0.0);
    }
    z.validate()?;
    z.check_riemann_siegel(t)?;
    let nodes = nodes_in_range(GramKind::Theta, t, t + span, Parity::All, 0.0)?;
    let order = z.correction_order;
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|n| z_fast(n.height, order).powi(exponent as i32))
        .collect();
    let mut acc = CompensatedSum::new();
    acc.extend(terms);
    Ok(acc.value())
}
