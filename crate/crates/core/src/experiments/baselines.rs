//! Mean-value formulae, homogeneous sums and ladder geometry.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use super::{check_parameter, rel, ComparisonRow, Context, Gate, Report};
use crate::correlation::{autocorr_shape, power_sum, shape_grid};
use crate::error::{Error, Result};
use crate::ladder::{gap_law, prime_count_approx};
use crate::quadrature::{integrate_union, IntegrandId};
use crate::sets::{density, set_distance, Family, IntervalUnion};
use crate::zeta::EULER_GAMMA;

/// Sub-span standing in for [T, 2T] in the fourth-power comparison.
pub const QUARTIC_SURROGATE_SPAN: f64 = 1e4;

fn tag(x: f64) -> String {
    format!("{x:.4}")
}

/// Rows (a)–(g) plus the measure and anchor checks, for every x in `grid`
/// (G₂ and G₄ use y = x).
pub fn run_baselines(ctx: &Context, grid: &[f64]) -> Result<Report> {
    let start = Instant::now();
    if grid.is_empty() {
        return Err(Error::Invalid("baseline grid is empty".into()));
    }
    for &x in grid {
        check_parameter("x", x)?;
    }
    let cfg = ctx.config();
    let bands = &cfg.bands;
    let quad = &cfg.quad;
    let t = ctx.t();
    let (h, u2) = (ctx.h(), ctx.u2());
    let c = EULER_GAMMA;
    let mut rows = Vec::new();

    // (a) homogeneous sums against integrals
    let span2 = t.sqrt() * t.ln();
    let sum2 = 2.0 * PI / t.ln() * power_sum(t, span2, 2, &quad.z)?;
    let int2 = integrate_union(IntegrandId::Z2, &IntervalUnion::single(t, t + span2)?, quad, None)?;
    let row = ComparisonRow::new("base_power2", sum2, int2, int2 / t.ln(), Gate::Band).note("U = sqrt(T) ln T");
    let pass = row.ratio_in(bands.get("power2_ratio"));
    rows.push(row.passing(pass));
    let span4 = QUARTIC_SURROGATE_SPAN.min(t);
    let sum4 = 2.0 * PI / t.ln() * power_sum(t, span4, 4, &quad.z)?;
    let int4 = integrate_union(IntegrandId::Z4, &IntervalUnion::single(t, t + span4)?, quad, None)?;
    let row = ComparisonRow::new("base_power4_surrogate", sum4, int4, int4 / t.ln(), Gate::Band)
        .note(format!("surrogate: sub-span {span4} in place of [T, 2T]"));
    let pass = row.ratio_in(bands.get("power4_ratio"));
    rows.push(row.passing(pass));

    for &x in grid {
        let sx = tag(x);
        let g1 = ctx.set(Family::G1, x)?;
        let g2 = ctx.set(Family::G2, x)?;
        let g3 = ctx.set(Family::G3, x)?;
        let g4 = ctx.set(Family::G4, x)?;

        // measures
        for (fam, g, span) in [
            (Family::G1, &g1, h),
            (Family::G2, &g2, h),
            (Family::G3, &g3, u2),
            (Family::G4, &g4, u2),
        ] {
            let expect = density(x) * span;
            let row = ComparisonRow::new(
                format!("base_measure_{fam:?}_{sx}"),
                g.measure(),
                expect,
                expect / t.ln(),
                Gate::Hard,
            );
            let pass = rel(g.measure(), expect) <= bands.get("measure_rel_ln").1 / t.ln();
            rows.push(row.passing(pass));
        }

        // (b) first moments on G₁, G₂ and (c) their normalized forms
        let z1 = integrate_union(IntegrandId::Z, &g1, quad, None)?;
        let z2 = integrate_union(IntegrandId::Z, &g2, quad, None)?;
        let scale = x * t.powf(1.0 / 6.0 + cfg.epsilon);
        for (label, lhs, rhs) in [
            (format!("base_g1_mean_{sx}"), z1, 2.0 / PI * h * x.sin()),
            (format!("base_g2_mean_{sx}"), z2, -2.0 / PI * h * x.sin()),
        ] {
            let row = ComparisonRow::new(label, lhs, rhs, scale, Gate::Trend).note("error term comparable to the main term");
            let pass = row.ratio_in(bands.get("g1_mean_ratio"));
            rows.push(row.passing(pass));
        }
        let s = crate::correlation::sinc(x);
        for (label, lhs, rhs) in [
            (format!("base_g1_normalized_{sx}"), z1 / g1.measure(), 2.0 * s),
            (format!("base_g2_normalized_{sx}"), z2 / g2.measure(), -2.0 * s),
        ] {
            let row = ComparisonRow::new(label, lhs, rhs, t.powf(-cfg.epsilon), Gate::Trend);
            let pass = row.ratio_in(bands.get("sinc_mean_ratio"));
            rows.push(row.passing(pass));
        }

        // (d) second moments on G₃, G₄
        let ln = (t / (2.0 * PI)).ln();
        let q3 = integrate_union(IntegrandId::Z2, &g3, quad, None)?;
        let q4 = integrate_union(IntegrandId::Z2, &g4, quad, None)?;
        let scale = t.powf(5.0 / 12.0) * t.ln().powi(2);
        for (label, lhs, rhs) in [
            (
                format!("base_g3_mean_{sx}"),
                q3,
                x / PI * u2 * ln + 2.0 / PI * (c * x + x.sin()) * u2,
            ),
            (
                format!("base_g4_mean_{sx}"),
                q4,
                x / PI * u2 * ln + 2.0 / PI * (c * x - x.sin()) * u2,
            ),
        ] {
            let row = ComparisonRow::new(label, lhs, rhs, scale, Gate::Band);
            let pass = row.ratio_in(bands.get("g3_mean_ratio"));
            rows.push(row.passing(pass));
        }

        // (e) normalized lifted difference
        let tab = ctx.table()?;
        let l3 = integrate_union(IntegrandId::OmegaZ2phiZ2, &tab.lift_set(&g3)?, quad, Some(tab))?;
        let l4 = integrate_union(IntegrandId::OmegaZ2phiZ2, &tab.lift_set(&g4)?, quad, Some(tab))?;
        let row = ComparisonRow::new(
            format!("base_g34_normalized_difference_{sx}"),
            l3 / g3.measure() - l4 / g4.measure(),
            4.0 * s,
            1.0,
            Gate::Trend,
        );
        let pass = row.ratio_in(bands.get("sinc_mean_ratio"));
        rows.push(row.passing(pass));
    }

    // normalized autocorrelative sums against 2 sinc x
    let shape = autocorr_shape(ctx.window()?, t, &shape_grid(), &quad.z)?;
    let row = ComparisonRow::new(
        "base_autocorr_shape_rms",
        shape.rel_rms,
        0.0,
        bands.get("autocorr_rms").1,
        Gate::Trend,
    )
    .note("relative RMS against 2 sinc x on x = k pi/14, k = 1..7");
    let pass = bands.contains("autocorr_rms", shape.rel_rms);
    rows.push(row.passing(pass));

    // (f), (g) ladder geometry
    let tab = ctx.table()?;
    let anchor = ComparisonRow::new("base_anchor_gap", tab.anchor_hat() - t, gap_law(t), gap_law(t), Gate::Hard)
        .note("T_hat - T against (1-c) T / ln T");
    let pass = anchor.ratio_in(bands.get("anchor_ratio"));
    rows.push(anchor.passing(pass));

    let g1_right = ctx.set(Family::G1, FRAC_PI_2)?;
    let lifted_right = tab.lift_set(&g1_right)?;
    let limit = t.powf(1.0 / 3.0 + cfg.epsilon);
    let m = lifted_right.measure();
    rows.push(
        ComparisonRow::new("base_lifted_measure", m, limit, limit, Gate::Hard)
            .passing(m < limit)
            .note("m(lifted G1(pi/2)) below T^(1/3+eps)"),
    );
    let x_far = grid.iter().copied().fold(f64::MIN, f64::max);
    let lifted = tab.lift_set(&ctx.set(Family::G1, x_far)?)?;
    let window = IntervalUnion::single(t, t + ctx.u1())?;
    let dist = set_distance(&lifted, &window)?;
    let law = (1.0 - c) * prime_count_approx(t)?;
    let row = ComparisonRow::new("base_lifted_distance", dist, law, law, Gate::Hard)
        .note(format!("distance of lifted G1({}) from [T, T+U1]", tag(x_far)));
    let pass = row.ratio_in(bands.get("distance_ratio"));
    rows.push(row.passing(pass));

    Ok(ctx.report("baselines", ctx.params(Some(x_far), None), rows, start))
}
