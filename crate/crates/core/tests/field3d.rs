mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use bubbleflow::evolver::{initial_profile, run_until, InitialDataSpec, SolverConfig};
use bubbleflow::field3d::*;
use bubbleflow::radial::*;

#[test]
fn velocity_is_divergence_free() {
    assert_eq!(velocity_divergence(), 0.0);
    // u is linear, so centred differences are exact up to rounding.
    let h = 0.125;
    for &(x, y, z) in &[(0.1, 0.2, 0.3), (-0.5, 0.25, 0.75), (0.0, 0.0, 0.0)] {
        let d = |i: usize| {
            let mut p = [x, y, z];
            let mut m = [x, y, z];
            p[i] += h;
            m[i] -= h;
            (velocity(p[0], p[1], p[2])[i] - velocity(m[0], m[1], m[2])[i]) / (2.0 * h)
        };
        assert_eq!(d(0) + d(1) + d(2), 0.0);
    }
}

#[test]
fn director_is_unit_and_axisymmetric() {
    let g = Arc::new(build_grid(300, 2.0).unwrap());
    let p = AngleProfile::from_fn(g, 0.0, |r| 5.0 * (PI * r).sin()).unwrap();
    for k in 0..50 {
        let th = 0.3 * k as f64;
        let r = k as f64 / 49.0;
        let d = director(&p, r * th.cos(), r * th.sin());
        let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        if r > 0.0 {
            let phi = p.value_at(r);
            assert!((d[2] - phi.cos()).abs() < 1e-12);
        }
    }
    assert_eq!(director(&p, 0.0, 0.0), [0.0, 0.0, 1.0]);
    let q = p.shifted_by_pi().unwrap();
    assert_eq!(director(&q, 0.0, 0.0), [0.0, 0.0, -1.0]);
}

#[test]
fn pressure_matches_closed_form_for_linear_profile() {
    // φ = 2r: Q(r) = −∫₀^r (c + 2s)·2 ds − r²/2 = −2cr − 2.5r².
    let g = Arc::new(build_grid(200, 2.0).unwrap());
    let p = AngleProfile::from_fn(g.clone(), 0.0, |r| 2.0 * r).unwrap();
    for c in [0.0, 0.7] {
        let phi_t = vec![c; g.len()];
        let q = PressureProfile::new(&p, &phi_t).unwrap();
        assert_eq!(q.at(0.0, 0.0), 0.0);
        for &r in &[0.1, 0.5, 1.0] {
            let want = -2.0 * c * r - 2.5 * r * r;
            assert!((q.radial(r) - want).abs() < 1e-3 * (1.0 + want.abs()), "{c} {r}");
            assert!((q.at(r, 0.5) - (want - 0.5)).abs() < 1e-3 * (1.0 + want.abs()));
        }
    }
    assert!(pressure(&p, None, 0.1, 0.1).is_err());
}

#[test]
fn vtk_series_round_trip() {
    let g = Arc::new(build_grid(200, 2.0).unwrap());
    let p0 = initial_profile(&InitialDataSpec::new(1.9 * PI, 0.5 * PI).unwrap(), g).unwrap();
    let traj = run_until(&p0, 0.03, &SolverConfig::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let sampling = Sampling { nr: 9, ntheta: 8, nz: 5 };
    let series = export_trajectory(&traj, &sampling, dir.path()).unwrap();
    assert_eq!(series.snapshots.len(), traj.len());
    let mut first_u: Option<Vec<[f64; 3]>> = None;
    for e in &series.snapshots {
        let vtk = common::parse_vtk(&std::fs::read_to_string(dir.path().join(&e.file)).unwrap());
        assert_eq!(vtk.dims, [9, 8, 5]);
        assert_eq!(vtk.points.len(), sampling.points());
        for d in vtk.vector("d") {
            assert!((d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - 1.0).abs() < 1e-12);
        }
        for (x, u) in vtk.points.iter().zip(vtk.vector("u")) {
            assert_eq!(*u, [x[0], x[1], -2.0 * x[2]]);
        }
        for (x, p) in vtk.points.iter().zip(vtk.scalar("P")) {
            if x[0] == 0.0 && x[1] == 0.0 && x[2] == 0.0 {
                assert_eq!(*p, 0.0);
            }
        }
        match &first_u {
            None => first_u = Some(vtk.vector("u").to_vec()),
            Some(u) => assert_eq!(u.as_slice(), vtk.vector("u")),
        }
    }
    let json: FieldSeries =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("series.json")).unwrap()).unwrap();
    assert_eq!(json, series);
    assert!(export_vtk(traj.snapshots(), &Sampling { nr: 1, ntheta: 8, nz: 5 }, dir.path()).is_err());
}
