mod common;

use std::f64::consts::PI;

use bubbleflow::barriers::*;
use bubbleflow::cli::ScenarioConfig;

const PATHS: [(f64, f64, f64); 10] = [
    (1.0, 0.5, 0.01),
    (2.0, 0.3, 0.05),
    (0.5, 0.7, 1e-5),
    (3.0, 0.1, 0.2),
    (20.0, 0.9, 0.3),
    (2.088567194508976, 0.6, 0.11),
    (0.8, 0.4, 0.02),
    (5.0, 0.5, 0.5),
    (1.2, 0.2, 1e-4),
    (10.0, 0.8, 0.9),
];

#[test]
fn vanishing_time_matches_numeric_integration() {
    for (delta, eps, l0) in PATHS {
        let path = LambdaPath::shrinking(delta, eps, l0).unwrap();
        let exact = first_vanishing_time(&path).unwrap();
        let numeric = common::vanishing_time_numeric(delta, eps, l0);
        assert!((exact - numeric).abs() < 1e-6, "{delta} {eps} {l0}: {exact} vs {numeric}");
    }
}

#[test]
fn lambda_values_match_numeric_integration() {
    for (delta, eps, l0) in PATHS {
        let path = LambdaPath::shrinking(delta, eps, l0).unwrap();
        let t = 0.5 * path.vanishing_time();
        let numeric = common::lambda_numeric(delta, eps, l0, -1.0, t);
        assert!((lambda_value(&path, t).unwrap() - numeric).abs() < 1e-8);
        // The ODE right-hand side is consistent with the closed form.
        let h = 1e-6 * t;
        let fd = (path.value(t + h).unwrap() - path.value(t - h).unwrap()) / (2.0 * h);
        assert!((fd - path.derivative(t).unwrap()).abs() < 1e-6 * (1.0 + fd.abs()));
    }
}

#[test]
fn growing_path_closed_form() {
    for (delta, eps, _) in PATHS {
        let path = LambdaPath::growing(delta, eps).unwrap();
        assert_eq!(path.value(0.0).unwrap(), 0.0);
        for t in [0.01_f64, 0.3, 1.0, 4.0] {
            let want = (0.5 * delta * (1.0 - eps) * (1.0 - (-2.0 * t).exp())).powf(1.0 / (1.0 - eps));
            let got = lambda_value(&path, t).unwrap();
            assert!((got - want).abs() <= 1e-10 * want.max(1.0), "{got} vs {want}");
        }
        assert!(first_vanishing_time(&path).is_err());
    }
}

#[test]
fn shrinking_path_limits() {
    assert!(LambdaPath::shrinking(1.0, 0.5, 1.0).is_err());
    assert!(LambdaPath::shrinking(1.0, 1.0, 0.01).is_err());
    let p = LambdaPath::shrinking(1.0, 0.5, 0.01).unwrap();
    let tv = p.vanishing_time();
    assert!(p.value(tv).unwrap() < 1e-12);
    assert!(matches!(p.value(1.01 * tv), Err(bubbleflow::Error::PathVanished { .. })));
}

#[test]
fn max_s_function_against_search() {
    for eps in [0.05, 0.2, 0.4, 0.6, 0.9, 1.0] {
        let (_, golden) = common::golden_max(|s| s.powf(2.0 - eps) / (1.0 + s * s), 1e-3, 1e3);
        let brute = common::max_s_brute(eps);
        let m = max_s_function(eps).unwrap();
        assert!((m - golden).abs() < 1e-10, "{eps}: {m} vs {golden}");
        assert!(m >= brute && m - brute < 1e-6);
    }
}

#[test]
fn delta_bound_is_tight() {
    for (mu, eps) in [(10.0, 0.4), (2.0, 0.5), (30.0, 0.9)] {
        let d = delta_bound(mu, eps).unwrap();
        let rhs = mu * eps / (mu * mu + 1.0);
        let (_, worst) = common::golden_max(|s| d * s.powf(2.0 - eps) / (1.0 + s * s), 1e-3, 1e3);
        assert!((worst - rhs).abs() < 1e-12 * rhs.max(1.0));
    }
    assert!(theta_cos_bound(1.0, 0.4).unwrap() < 0.0);
    assert!(theta_cos_bound(10.0, 0.4).unwrap() > 0.0);
}

#[test]
fn closed_form_residuals_match_finite_differences() {
    let specs = [
        BarrierSpec::subsolution(2.088567194508976, 0.6, 0.11, 1.1).unwrap(),
        BarrierSpec::supersolution(0.0326, 0.4, 10.0).unwrap(),
        BarrierSpec::phi_bar(0.05).unwrap(),
        BarrierSpec::quadratic_cap(0.1, 1.05).unwrap(),
        BarrierSpec::psi_star(0.3).unwrap(),
        BarrierSpec::cone(0.1).unwrap(),
    ];
    for spec in specs {
        for &r in &[0.05, 0.2, 0.5, 0.9] {
            for &t in &[0.0, 0.3, 1.0] {
                if t > spec.time_horizon() {
                    continue;
                }
                let exact = spec.residual(r, t).unwrap();
                let fd = common::residual_fd(|rr, tt| spec.value(rr, tt).unwrap(), r, t);
                assert!(
                    (exact - fd).abs() < 1e-4 * (1.0 + exact.abs()),
                    "{}: r={r} t={t}: {exact} vs {fd}",
                    spec.name()
                );
            }
        }
    }
}

#[test]
fn shifted_bubble_is_an_exact_solution() {
    let spec = BarrierSpec::phi_bar(0.05).unwrap();
    for k in 1..100 {
        let r = k as f64 / 100.0;
        for t in [0.0, 0.5, 2.0] {
            let j = spec.jet(r, t).unwrap();
            let from_jet = common::residual_from_jet(r, j.value, j.dr, j.drr, j.dt);
            assert!(from_jet.abs() < 1e-10 && spec.residual(r, t).unwrap().abs() < 1e-10);
        }
    }
    assert_eq!(spec.value(0.0, 0.3).unwrap(), PI);
}

#[test]
fn shipped_fixtures_certify() {
    let cfg = ScenarioConfig::default();
    let sub = cfg.subsolution().unwrap();
    let scan = scan_residual(&sub.spec().unwrap(), Target::Subsolution, &sub.sample_density).unwrap();
    assert!(scan.margin >= -SIGN_TOL && is_certified(&scan, Target::Subsolution, SIGN_TOL));
    assert!((scan.margin - sub.margin).abs() < 1e-12);
    let sup = cfg.supersolution().unwrap();
    let scan = scan_residual(&sup.spec().unwrap(), Target::Supersolution, &sup.sample_density).unwrap();
    assert!(scan.margin <= SIGN_TOL);
    assert!(sup.delta <= delta_bound(sup.mu, sup.eps).unwrap());
}

#[test]
fn search_finds_a_certified_supersolution() {
    let sbox = SearchBox {
        target: Target::Supersolution,
        mu: ParamRange::new(0.5, 10.0, 4),
        eps: ParamRange::new(0.2, 0.6, 3),
        delta: DeltaRule::FractionOfBound(0.5),
        lambda0: ParamRange::fixed(0.0),
    };
    let density = SampleDensity { nr: 60, nt: 60, ..SampleDensity::default() };
    let c = certify_parameters(&sbox, &density).unwrap();
    assert!(theta_cos_bound(c.mu, c.eps).unwrap() >= 0.0);
    assert!(c.margin <= SIGN_TOL);
}

#[test]
fn search_reports_failure_with_margin() {
    let sbox = SearchBox {
        target: Target::Supersolution,
        mu: ParamRange::fixed(1.0),
        eps: ParamRange::fixed(0.4),
        delta: DeltaRule::FractionOfBound(0.5),
        lambda0: ParamRange::fixed(0.0),
    };
    let density = SampleDensity { nr: 40, nt: 40, ..SampleDensity::default() };
    match certify_parameters(&sbox, &density) {
        Err(bubbleflow::Error::CertificationFailed { best_margin, .. }) => assert!(best_margin > 0.0),
        other => panic!("expected a failure, got {other:?}"),
    }
}
