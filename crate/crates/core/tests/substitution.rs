//! Change of variables through the ladder, end to end.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use zeta_ladder::ladder::{build_table, LadderSpec, LadderTable};
use zeta_ladder::quadrature::{integrate_lifted, integrate_union, IntegrandId, QuadSpec};
use zeta_ladder::sets::{build_set, short_span, Family, IntervalUnion, SetFamily, DEFAULT_EPSILON};

const T: f64 = 1e6;

fn table() -> &'static LadderTable {
    static TABLE: OnceLock<LadderTable> = OnceLock::new();
    TABLE.get_or_init(|| build_table(T, short_span(T, DEFAULT_EPSILON) + 1.0, &LadderSpec::default()).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn lifted_polynomials_and_sine_integrate_exactly() {
    let tab = table();
    let spec = QuadSpec::default();
    type Case = (&'static str, fn(f64) -> f64, fn(f64, f64) -> f64);
    let cases: [Case; 3] = [
        ("one", |_| 1.0, |a, b| b - a),
        ("shifted x", |x| x - T, |a, b| 0.5 * ((b - T).powi(2) - (a - T).powi(2))),
        ("sin", |x| (x - T).sin(), |a, b| (a - T).cos() - (b - T).cos()),
    ];
    for (name, g, exact) in cases {
        for (a, b) in [(T + 0.5, T + 3.0), (T + 7.25, T + 19.0)] {
            let pre = tab.lift_set(&IntervalUnion::single(a, b).unwrap()).unwrap();
            let v = integrate_lifted(g, 1.0, &pre, &spec, tab).unwrap().value;
            assert!(rel(v, exact(a, b)) < 1e-5, "{name} on [{a}, {b}]: {v} vs {}", exact(a, b));
        }
    }
}

#[test]
fn heterogeneous_pairs_agree_on_lifted_sets() {
    let tab = table();
    let spec = QuadSpec::default();
    for fam in [Family::G1, Family::G2] {
        let g = build_set(&SetFamily::new(fam, FRAC_PI_2, T, DEFAULT_EPSILON)).unwrap();
        let lifted = tab.lift_set(&g).unwrap();
        assert_eq!(lifted.len(), g.len());
        for (lhs_id, rhs_id) in [
            (IntegrandId::OmegaZphiZ2, IntegrandId::Z),
            (IntegrandId::OmegaZ2phiZ2, IntegrandId::Z2),
        ] {
            let lhs = integrate_union(lhs_id, &lifted, &spec, Some(tab)).unwrap();
            let rhs = integrate_union(rhs_id, &g, &spec, None).unwrap();
            assert!(rel(lhs, rhs) < 1e-4, "{fam:?} {lhs_id:?}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn lifted_window_sits_a_gap_law_above() {
    let tab = table();
    let g = build_set(&SetFamily::new(Family::G1, 1.0, T, DEFAULT_EPSILON)).unwrap();
    let lifted = tab.lift_set(&g).unwrap();
    let (lo, _) = lifted.hull().unwrap();
    let d = lo - T;
    let law = zeta_ladder::ladder::gap_law(T);
    assert!((d / law - 1.0).abs() < 0.1, "{d} vs {law}");
}
