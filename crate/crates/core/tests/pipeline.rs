//! End-to-end use of the public API: setup → solution → observables,
//! limits, oracle and file output.

use dirac_step::oracle::{integrate_scattering, DEFAULT_TOLERANCE};
use dirac_step::*;
use proptest::prelude::*;

fn solve(m: f64, v0: f64, e: f64, conv: Convention) -> ScatteringSolution {
    let setup = PhysicalSetup::new(m, v0, e).unwrap();
    match_solution(&kinematics(&setup).unwrap(), conv).unwrap()
}

#[test]
fn klein_zone_golden_values() {
    let sol = solve(1.0, 4.0, 2.0, Convention::MainEq6);
    let obs = coefficients(&sol);
    assert!((obs.reflection - 0.25).abs() < 1e-15);
    assert!((obs.transmission - 0.75).abs() < 1e-15);
    let f = force_report(&sol);
    assert!((f.external_mean + 4.0).abs() < 1e-14);
    assert!(sol.continuity_residual() < 1e-15);
}

#[test]
fn conventions_agree_where_they_should() {
    let main = coefficients(&solve(1.0, 4.0, 2.0, Convention::MainEq6));
    let a3 = coefficients(&solve(1.0, 4.0, 2.0, Convention::LowerFormA3));
    assert!((main.reflection - a3.reflection).abs() < 1e-14);
    let trad = coefficients(&solve(1.0, 4.0, 2.0, Convention::TraditionalB2));
    assert!(trad.reflection > 1.0 && trad.transmission < 0.0);
    assert!((trad.reflection + trad.transmission - 1.0).abs() < 1e-12);
}

#[test]
fn limit_matches_scan_far_into_the_klein_zone() {
    let limit = impenetrable_limit(2.0, 1.0, Convention::MainEq6).unwrap();
    let rows = convergence_scan(2.0, 1.0, Convention::MainEq6, &[-1e-10, 1e-14]).unwrap();
    assert_eq!(rows[0].regime, Regime::Evanescent);
    assert_eq!(rows[1].regime, Regime::KleinZone);
    for row in &rows {
        assert!((row.force - limit.external_force()).abs() < 1e-5, "{row:?}");
    }
    let b = classify_boundary(&limit, 1e-12).unwrap();
    assert_eq!(b.classification, BoundaryClass::DirichletUpper);
    assert!(b.impenetrable);
}

#[test]
fn oracle_tracks_closed_form_for_a_narrow_step() {
    let setup = PhysicalSetup::new(1.0, 4.0, 2.0).unwrap();
    let res = integrate_scattering(
        &setup,
        &SmoothStep::new(4.0, 1e-3).unwrap(),
        Convention::MainEq6,
        None,
        DEFAULT_TOLERANCE,
    )
    .unwrap();
    assert!((res.reflection - 0.25).abs() < 1e-5);
    assert!(res.current_drift < 1e-9);
}

#[test]
fn sample_write_read_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wave.csv");
    let sol = solve(1.0, 1.5, 2.0, Convention::MainEq6);
    let gs = sample(&sol, -4.0, 4.0, 81).unwrap();
    write_csv(&gs, &path).unwrap();
    let back = read_csv(&path).unwrap();
    assert_eq!(back, gs);
    assert_eq!(back.metadata.regime, "evanescent");
    let origin = back.origin_rows();
    assert_eq!(origin.len(), 2);
    let (l, r) = (back.values[origin[0]], back.values[origin[1]]);
    assert!((l.upper - r.upper).norm() < 1e-14 && (l.lower - r.lower).norm() < 1e-14);
}

#[test]
fn errors_are_typed() {
    assert!(matches!(
        PhysicalSetup::new(1.0, 4.0, 0.5).and_then(|s| kinematics(&s)),
        Err(Error::NoIncidentWave { .. })
    ));
    let edge = PhysicalSetup::new(1.0, 3.0, 2.0).unwrap();
    assert!(kinematics(&edge).is_err());
    let evan = PhysicalSetup::new(1.0, 2.0, 2.0).unwrap();
    assert!(match_solution(&kinematics(&evan).unwrap(), Convention::TraditionalB2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn probability_is_conserved(m in 0.01f64..10.0, e_over_m in 1.001f64..50.0, frac in 0.01f64..3.0) {
        let e = e_over_m * m;
        for v0 in [frac * (e - m), e - m + frac / 3.0 * 2.0 * m * 0.99, (e + m) * (1.0 + frac)] {
            let setup = PhysicalSetup::new(m, v0, e).unwrap();
            let Ok(kin) = kinematics(&setup) else { continue };
            let obs = coefficients(&match_solution(&kin, Convention::MainEq6).unwrap());
            prop_assert!((obs.reflection + obs.transmission - 1.0).abs() < 1e-10);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&obs.reflection));
        }
    }
}
