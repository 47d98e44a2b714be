mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use bubbleflow::radial::*;
use proptest::prelude::*;

#[test]
fn graded_nodes_and_weights() {
    let g = build_grid(100, 2.0).unwrap();
    assert_eq!(g.len(), 101);
    for i in 0..=100 {
        assert!((g.r(i) - (i as f64 / 100.0).powi(2)).abs() < 1e-15);
    }
    // Trapezoid weights integrate r·1 and r·r exactly up to the rule's error.
    let ones = vec![1.0; g.len()];
    assert!((weighted_integral(&g, &ones).unwrap() - 0.5).abs() < 1e-12);
    let lin: Vec<f64> = g.nodes().to_vec();
    assert!((weighted_integral(&g, &lin).unwrap() - 1.0 / 3.0).abs() < 1e-3);
    assert!(g.weights().iter().all(|&w| w >= 0.0));
}

#[test]
fn grid_rejects_bad_parameters() {
    assert!(build_grid(8, 2.0).is_err());
    assert!(build_grid(100, 0.5).is_err());
    assert!(build_grid(100, f64::NAN).is_err());
}

#[test]
fn node_lookup() {
    let g = build_grid(50, 2.0).unwrap();
    assert_eq!(g.node_index(g.r(7)), Some(7));
    assert_eq!(g.node_index(0.5 * (g.r(7) + g.r(8))), None);
    assert_eq!(g.nearest_node(g.r(7) * 1.001), 7);
    assert_eq!(g.first_node_at_or_above(g.r(7) * 1.001), 8);
    let vals: Vec<f64> = g.nodes().iter().map(|r| 3.0 * r + 1.0).collect();
    assert!((g.interpolate(&vals, 0.37) - 2.11).abs() < 1e-12);
}

#[test]
fn profile_validation() {
    let g = Arc::new(build_grid(32, 2.0).unwrap());
    let mut v = vec![0.0; g.len()];
    v[0] = 1.0;
    assert!(AngleProfile::new(g.clone(), v.clone(), 0.0).is_err());
    v[0] = 0.0;
    v[5] = f64::NAN;
    assert!(AngleProfile::new(g.clone(), v, 0.0).is_err());
    assert!(AngleProfile::new(g.clone(), vec![0.0; 3], 0.0).is_err());
    let p = AngleProfile::constant(g, PI, 0.25).unwrap();
    assert_eq!(p.chi(), PI);
    assert_eq!(p.time(), 0.25);
}

#[test]
fn half_angle_radius_tracks_bubble_scale() {
    let g = Arc::new(build_grid(2000, 2.0).unwrap());
    for lambda in [0.3, 0.05, 0.002] {
        let p = AngleProfile::from_fn(g.clone(), 0.0, |r| 2.0 * (r / lambda).atan()).unwrap();
        let rh = p.half_angle_radius().unwrap();
        // φ = π/2 exactly at r = λ; linear interpolation costs O(h²).
        assert!((rh - lambda).abs() < 1e-3 * lambda.max(0.01), "{lambda}: {rh}");
    }
}

#[test]
fn operator_vanishes_on_equilibria() {
    for q in [1.0, 2.0] {
        let g = Arc::new(build_grid(200, q).unwrap());
        for c in [0.0, PI] {
            let p = AngleProfile::constant(g.clone(), c, 0.0).unwrap();
            assert!(radial_operator(&p).iter().all(|&x| x == 0.0));
        }
    }
}

#[test]
fn operator_matches_closed_form_on_bubble_with_drift() {
    // 𝓛[2 arctan(r/λ)] = −r φ_r = −2λr/(λ² + r²) since the tension vanishes.
    let lambda = 0.2;
    let mut errs = vec![];
    for n in [250, 500, 1000] {
        let g = Arc::new(build_grid(n, 2.0).unwrap());
        let p = AngleProfile::from_fn(g.clone(), 0.0, |r| 2.0 * (r / lambda).atan()).unwrap();
        let l = radial_operator(&p);
        let e = (1..n)
            .map(|i| {
                let r = g.r(i);
                (l[i] + 2.0 * lambda * r / (lambda * lambda + r * r)).abs()
            })
            .fold(0.0, f64::max);
        errs.push(e);
    }
    assert!(errs[0] / errs[1] > 3.0 && errs[1] / errs[2] > 3.0, "{errs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operator_is_invariant_under_pi_shift(seed in any::<u64>(), n in 20usize..300) {
        let g = Arc::new(build_grid(n, 2.0).unwrap());
        let p = AngleProfile::new(g.clone(), common::dyadic_profile_values(n, seed), 0.0).unwrap();
        let q = p.shifted_by_pi().unwrap();
        prop_assert_eq!(q.chi(), PI);
        prop_assert_eq!(radial_operator(&p), radial_operator(&q));
    }

    #[test]
    fn interpolation_reproduces_nodes(i in 0usize..=64) {
        let g = build_grid(64, 2.0).unwrap();
        let vals: Vec<f64> = g.nodes().iter().map(|r| r.sin()).collect();
        prop_assert_eq!(g.interpolate(&vals, g.r(i)), vals[i]);
    }
}
