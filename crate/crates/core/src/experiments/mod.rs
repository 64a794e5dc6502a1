//! Experiment drivers: both sides of each correlation identity, computed
//! independently and collected into comparison rows.

mod baselines;
mod selfcheck;
mod theorems;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::correlation::{u1, window_nodes};
use crate::error::{Error, Result};
use crate::gram::GramNode;
use crate::ladder::{build_table, LadderSpec, LadderTable};
use crate::quadrature::QuadSpec;
use crate::sets::{build_set, long_span, short_span, Family, IntervalUnion, SetFamily, DEFAULT_EPSILON};

pub use baselines::run_baselines;
pub use selfcheck::{oracle_agreement, run_selfcheck, substitution_suite, zero_heights, OracleSummary};
pub use theorems::{analytic_reduction_residual, run_theorem1, run_theorem2, run_theorem3};

/// How a row enters the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    /// Must pass.
    Hard,
    /// Pre-registered tolerance band; reported, not fatal.
    Band,
    /// Asymptotic direction only.
    Trend,
    /// Substitution identity, a test of the machinery; must pass.
    Identity,
    /// Annotation without a pass criterion.
    Info,
}

impl Gate {
    pub fn name(self) -> &'static str {
        match self {
            Gate::Hard => "hard",
            Gate::Band => "band",
            Gate::Trend => "trend",
            Gate::Identity => "identity",
            Gate::Info => "info",
        }
    }

    /// Whether a failure of this gate fails the run.
    pub fn is_fatal(self) -> bool {
        matches!(self, Gate::Hard | Gate::Identity)
    }
}

/// One comparison of independently computed sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Magnitude of the error term the comparison is judged against.
    pub error_scale: f64,
    /// lhs / rhs when rhs ≠ 0.
    pub ratio: Option<f64>,
    pub abs_diff: f64,
    pub gate: Gate,
    pub pass: bool,
    pub note: String,
}

impl ComparisonRow {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, error_scale: f64, gate: Gate) -> Self {
        let ratio = (rhs != 0.0).then(|| lhs / rhs);
        Self {
            label: label.into(),
            lhs,
            rhs,
            error_scale,
            ratio,
            abs_diff: (lhs - rhs).abs(),
            gate,
            pass: true,
            note: String::new(),
        }
    }

    pub fn passing(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// |lhs − rhs| / error_scale.
    pub fn scaled_diff(&self) -> f64 {
        self.abs_diff / self.error_scale
    }

    pub fn ratio_in(&self, band: (f64, f64)) -> bool {
        self.ratio.is_some_and(|r| r >= band.0 && r <= band.1)
    }
}

/// Inputs echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub t: f64,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub epsilon: f64,
    pub quad_hash: String,
    pub ladder_hash: String,
}

/// Rows of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment_id: String,
    pub params: ReportParams,
    pub rows: Vec<ComparisonRow>,
    pub runtime: f64,
}

impl Report {
    pub fn row(&self, label: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Rows whose failure fails the run.
    pub fn fatal_failures(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| r.gate.is_fatal() && !r.pass)
    }

    pub fn hard_pass(&self) -> bool {
        self.fatal_failures().next().is_none()
    }
}

/// Named tolerance bands; every entry can be overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bands(BTreeMap<String, (f64, f64)>);

const DEFAULT_BANDS: &[(&str, f64, f64)] = &[
    ("thm1_ratio", 0.6, 1.4),
    ("thm1_scaled_diff", 0.0, 2.0),
    ("thm2_ratio", 0.6, 1.4),
    ("thm3_scaled_residual", 0.0, 3.0),
    ("identity_rel", 0.0, 1e-4),
    ("measure_rel_ln", 0.0, 3.0),
    ("anchor_ratio", 0.95, 1.05),
    ("distance_ratio", 0.85, 1.15),
    ("g1_mean_ratio", 0.5, 1.5),
    ("g3_mean_ratio", 0.85, 1.15),
    ("sinc_mean_ratio", 0.6, 1.4),
    ("power2_ratio", 0.8, 1.2),
    ("power4_ratio", 0.7, 1.3),
    ("autocorr_rms", 0.0, 0.25),
    ("oracle_max_diff", 0.0, 1e-4),
    ("zero_height_diff", 0.0, 1e-5),
];

impl Default for Bands {
    fn default() -> Self {
        Self(DEFAULT_BANDS.iter().map(|&(k, lo, hi)| (k.to_string(), (lo, hi))).collect())
    }
}

impl Bands {
    pub fn get(&self, key: &str) -> (f64, f64) {
        *self.0.get(key).unwrap_or_else(|| panic!("unknown band {key}"))
    }

    /// Replaces a known band.
    pub fn set(&mut self, key: &str, band: (f64, f64)) -> Result<()> {
        if !(band.0 <= band.1) {
            return Err(Error::Invalid(format!("band {key}={}:{} is empty", band.0, band.1)));
        }
        match self.0.get_mut(key) {
            Some(slot) => {
                *slot = band;
                Ok(())
            }
            None => Err(Error::Invalid(format!("unknown band {key}"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (f64, f64))> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn contains(&self, key: &str, v: f64) -> bool {
        let (lo, hi) = self.get(key);
        v >= lo && v <= hi
    }
}

/// Shared knobs of every experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub epsilon: f64,
    pub quad: QuadSpec,
    pub ladder: LadderSpec,
    pub bands: Bands,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            quad: QuadSpec::default(),
            ladder: LadderSpec::default(),
            bands: Bands::default(),
        }
    }
}

impl ExperimentConfig {
    /// Sets the Riemann–Siegel order everywhere Z is evaluated.
    pub fn with_correction_order(mut self, order: usize) -> Self {
        self.quad.z.correction_order = order;
        self.ladder.z.correction_order = order;
        self
    }
}

/// Short SHA-256 of a value's debug rendering.
pub fn spec_hash<T: Debug>(value: &T) -> String {
    let digest = Sha256::digest(format!("{value:?}").as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Per-height state shared by the experiments: the ladder table over the
/// longest window and the Gram points of the U₁ window. Both are built on
/// first use.
pub struct Context {
    t: f64,
    cfg: ExperimentConfig,
    table: OnceLock<Result<LadderTable>>,
    window: OnceLock<Result<Vec<GramNode>>>,
}

/// Margin added to the ladder extent so every clipped set lies strictly
/// inside the image.
const EXTENT_MARGIN: f64 = 1.0;

impl Context {
    pub fn new(t: f64, cfg: ExperimentConfig) -> Result<Self> {
        if !(1e4..=1e9).contains(&t) {
            return Err(Error::OutOfRange {
                value: t,
                lo: 1e4,
                hi: 1e9,
            });
        }
        if !(cfg.epsilon > 0.0 && cfg.epsilon < 0.25) {
            return Err(Error::Invalid(format!("epsilon {} outside (0, 0.25)", cfg.epsilon)));
        }
        cfg.quad.validate()?;
        Ok(Self {
            t,
            cfg,
            table: OnceLock::new(),
            window: OnceLock::new(),
        })
    }

    /// A context holding an already built table.
    pub fn with_table(t: f64, cfg: ExperimentConfig, table: LadderTable) -> Result<Self> {
        let ctx = Self::new(t, cfg)?;
        ctx.preload_table(table)?;
        Ok(ctx)
    }

    /// Installs a cached table; ignored once a table is built.
    pub fn preload_table(&self, table: LadderTable) -> Result<()> {
        if table.anchor_image() != self.t || table.extent() < self.table_extent() || *table.z_config() != self.cfg.ladder.z {
            return Err(Error::Invalid("ladder table does not match the context".into()));
        }
        let _ = self.table.set(Ok(table));
        Ok(())
    }

    /// Installs cached window nodes; ignored once the window is built.
    pub fn preload_window(&self, nodes: Vec<GramNode>) {
        let _ = self.window.set(Ok(nodes));
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    /// H = T^{1/6+2ε}.
    pub fn h(&self) -> f64 {
        short_span(self.t, self.cfg.epsilon)
    }

    /// U₂ = T^{5/12+2ε}.
    pub fn u2(&self) -> f64 {
        long_span(self.t, self.cfg.epsilon)
    }

    pub fn u1(&self) -> f64 {
        u1(self.t)
    }

    pub fn table_extent(&self) -> f64 {
        self.h().max(self.u2()) + EXTENT_MARGIN
    }

    pub fn table(&self) -> Result<&LadderTable> {
        self.table
            .get_or_init(|| build_table(self.t, self.table_extent(), &self.cfg.ladder))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Gram points in [T, T + U₁].
    pub fn window(&self) -> Result<&[GramNode]> {
        self.window
            .get_or_init(|| window_nodes(self.t))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn set(&self, family: Family, parameter: f64) -> Result<IntervalUnion<f64>> {
        build_set(&SetFamily::new(family, parameter, self.t, self.cfg.epsilon))
    }

    pub fn lifted(&self, family: Family, parameter: f64) -> Result<(IntervalUnion<f64>, IntervalUnion<f64>)> {
        let base = self.set(family, parameter)?;
        let lifted = self.table()?.lift_set(&base)?;
        Ok((base, lifted))
    }

    pub(crate) fn params(&self, x: Option<f64>, y: Option<f64>) -> ReportParams {
        ReportParams {
            t: self.t,
            x,
            y,
            epsilon: self.cfg.epsilon,
            quad_hash: spec_hash(&self.cfg.quad),
            ladder_hash: spec_hash(&self.cfg.ladder),
        }
    }

    pub(crate) fn report(&self, id: &str, params: ReportParams, rows: Vec<ComparisonRow>, start: Instant) -> Report {
        Report {
            experiment_id: id.to_string(),
            params,
            rows,
            runtime: start.elapsed().as_secs_f64(),
        }
    }
}

pub(crate) fn check_parameter(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::Invalid(format!("{name} = {v} outside (0, pi/2]")));
    }
    Ok(())
}

/// |a − b| / |b|.
pub(crate) fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands_override_known_keys_only() {
        let mut b = Bands::default();
        b.set("thm1_ratio", (0.5, 1.5)).unwrap();
        assert_eq!(b.get("thm1_ratio"), (0.5, 1.5));
        assert!(b.set("nope", (0.0, 1.0)).is_err());
        assert!(b.set("thm1_ratio", (2.0, 1.0)).is_err());
    }

    #[test]
    fn rows_carry_ratio_and_difference() {
        let r = ComparisonRow::new("a", 3.0, 2.0, 0.5, Gate::Band);
        assert_eq!(r.ratio, Some(1.5));
        assert_eq!(r.abs_diff, 1.0);
        assert_eq!(r.scaled_diff(), 2.0);
        assert!(ComparisonRow::new("b", 1.0, 0.0, 1.0, Gate::Info).ratio.is_none());
    }

    #[test]
    fn hashes_are_stable_and_distinguish_specs() {
        let a = spec_hash(&QuadSpec::default());
        assert_eq!(a, spec_hash(&QuadSpec::default()));
        assert_eq!(a.len(), 16);
        assert_ne!(a, spec_hash(&QuadSpec::default().denser(2.0)));
    }

    #[test]
    fn context_rejects_bad_heights() {
        assert!(Context::new(5e3, ExperimentConfig::default()).is_err());
        assert!(Context::new(2e9, ExperimentConfig::default()).is_err());
    }
}
