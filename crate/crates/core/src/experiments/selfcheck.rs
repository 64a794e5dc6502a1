//! Dual-path zeta oracle and the ladder substitution suite.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{rel, ComparisonRow, Context, Gate, Report};
use crate::error::Result;
use crate::quadrature::{integrate_closure, integrate_lifted};
use crate::roots::bisect;
use crate::sets::IntervalUnion;
use crate::zeta::{hardy_z, ZEvalConfig, ZMethod, FIRST_ZEROS, MAX_CORRECTION_ORDER};

/// Worst disagreement between the two Z paths on a random sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub max_diff: f64,
    pub worst_t: f64,
}

/// max |Z_RS − Z_EM| over `samples` uniform heights in [lo, hi].
pub fn oracle_agreement(samples: usize, seed: u64, lo: f64, hi: f64, cfg: &ZEvalConfig) -> Result<OracleSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<f64> = (0..samples).map(|_| rng.gen_range(lo..hi)).collect();
    let diffs: Result<Vec<(f64, f64)>> = ts
        .par_iter()
        .map(|&t| {
            let a = hardy_z(t, ZMethod::RiemannSiegel, cfg)?;
            let b = hardy_z(t, ZMethod::EulerMaclaurin, cfg)?;
            Ok(((a - b).abs(), t))
        })
        .collect();
    let (max_diff, worst_t) = diffs?
        .into_iter()
        .fold((0.0, f64::NAN), |acc, d| if d.0 > acc.0 { d } else { acc });
    Ok(OracleSummary {
        samples,
        max_diff,
        worst_t,
    })
}

/// The first `count` zero ordinates located by sign changes of Z on a
/// 0.05 grid from t = 10, refined by bisection.
pub fn zero_heights(count: usize, method: ZMethod) -> Result<Vec<f64>> {
    let cfg = ZEvalConfig {
        correction_order: MAX_CORRECTION_ORDER,
        min_height: 10.0,
        ..ZEvalConfig::default()
    };
    let z = |t: f64| hardy_z(t, method, &cfg);
    let step = 0.05;
    let mut zeros = Vec::with_capacity(count);
    let mut a = 10.0;
    let mut za = z(a)?;
    while zeros.len() < count {
        let b = a + step;
        let zb = z(b)?;
        if za.signum() != zb.signum() {
            zeros.push(bisect(|t| z(t).unwrap_or(f64::NAN), a, b, 1e-12, 200)?);
        }
        a = b;
        za = zb;
    }
    Ok(zeros)
}

/// For f ∈ {1, x, sin x}: ∫ over the lifted interval of ω f(φ₁) Z² against
/// ∫ f over the interval, on `intervals` random subintervals of [T, T + H].
/// Returns one row per f holding its worst interval.
pub fn substitution_suite(ctx: &Context, intervals: usize, seed: u64) -> Result<Vec<ComparisonRow>> {
    let tab = ctx.table()?;
    let quad = ctx.config().quad;
    let (t, h) = (ctx.t(), ctx.h());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cuts: Vec<(f64, f64)> = (0..intervals)
        .map(|_| {
            let a = rng.gen_range(t..t + h - 0.5);
            let b = rng.gen_range(a + 0.1..(a + 10.0).min(t + h));
            (a, b)
        })
        .collect();
    type Case = (&'static str, fn(f64) -> f64);
    let functions: [Case; 3] = [("one", |_| 1.0), ("x", |x| x), ("sin", f64::sin)];
    let band = ctx.config().bands.get("identity_rel");
    let mut rows = Vec::new();
    for (name, f) in functions {
        let mut worst: Option<(f64, f64, f64)> = None;
        for &(a, b) in &cuts {
            let base = IntervalUnion::single(a, b)?;
            let direct = integrate_closure(f, 1.0, &base, &quad)?.value;
            let lifted = integrate_lifted(f, 1.0, &tab.lift_set(&base)?, &quad, tab)?.value;
            let r = rel(lifted, direct);
            if worst.is_none_or(|w| r > w.2) {
                worst = Some((lifted, direct, r));
            }
        }
        let (lifted, direct, r) = worst.expect("at least one interval");
        let row = ComparisonRow::new(
            format!("selfcheck_substitution_{name}"),
            lifted,
            direct,
            direct.abs() * band.1,
            Gate::Identity,
        )
        .note(format!("worst of {intervals} subintervals"));
        rows.push(row.passing(r >= band.0 && r <= band.1));
    }
    Ok(rows)
}

/// Oracle agreement, zero heights and the substitution suite.
pub fn run_selfcheck(ctx: &Context) -> Result<Report> {
    let start = Instant::now();
    let bands = &ctx.config().bands;
    let mut rows = Vec::new();

    let cfg = ZEvalConfig {
        correction_order: ctx.config().quad.z.correction_order.max(1),
        ..ZEvalConfig::default()
    };
    let oracle = oracle_agreement(500, 2024, 100.0, 1e4, &cfg)?;
    let row = ComparisonRow::new(
        "selfcheck_oracle_max_diff",
        oracle.max_diff,
        0.0,
        bands.get("oracle_max_diff").1,
        Gate::Hard,
    )
    .note(format!(
        "{} heights in [100, 1e4], worst at t = {}",
        oracle.samples, oracle.worst_t
    ));
    let pass = bands.contains("oracle_max_diff", oracle.max_diff);
    rows.push(row.passing(pass));

    for (label, method) in [
        ("selfcheck_zeros_euler_maclaurin", ZMethod::EulerMaclaurin),
        ("selfcheck_zeros_riemann_siegel", ZMethod::RiemannSiegel),
    ] {
        let zeros = zero_heights(FIRST_ZEROS.len(), method)?;
        let (k, diff) = zeros
            .iter()
            .zip(FIRST_ZEROS.iter())
            .map(|(a, b)| (a - b).abs())
            .enumerate()
            .fold((0, 0.0), |acc, (k, d)| if d > acc.1 { (k, d) } else { acc });
        let row = ComparisonRow::new(label, zeros[k], FIRST_ZEROS[k], bands.get("zero_height_diff").1, Gate::Hard)
            .note(format!("worst of the first {} zeros", FIRST_ZEROS.len()));
        let pass = bands.contains("zero_height_diff", diff);
        rows.push(row.passing(pass));
    }

    rows.extend(substitution_suite(ctx, 20, 7)?);
    Ok(ctx.report("selfcheck", ctx.params(None, None), rows, start))
}
