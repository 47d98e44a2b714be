use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use bubbleflow::branching::*;
use bubbleflow::diagnostics::{cap_energy, energy};
use bubbleflow::evolver::{initial_profile, Event, InitialDataSpec, SolverConfig};
use bubbleflow::radial::*;

fn family() -> &'static FamilyRun {
    static RUN: OnceLock<FamilyRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let g = Arc::new(build_grid(400, 2.0).unwrap());
        let p0 = initial_profile(&InitialDataSpec::new(1.9 * PI, 0.5 * PI).unwrap(), g).unwrap();
        orchestrate(&p0, &SolverConfig::default(), &FamilyPlan::default()).unwrap()
    })
}

#[test]
fn reinsertion_cap_identity() {
    let g = Arc::new(build_grid(1000, 2.0).unwrap());
    // A profile with axis π that stays in (0, π) near r_n.
    let base = AngleProfile::from_fn(g.clone(), 0.3, |r| PI - 2.0 * r).unwrap();
    for target in [0.01, 0.03, 0.1, 0.25] {
        let r_n = g.r(g.nearest_node(target));
        let spliced = bubble_reinsertion(&base, r_n).unwrap();
        assert_eq!(spliced.chi(), 0.0);
        assert_eq!(spliced.time(), 0.3);
        let k = g.node_index(r_n).unwrap();
        assert_eq!(&spliced.values()[k..], &base.values()[k..]);
        let e = energy(&spliced, 0.0, r_n).unwrap();
        assert!((e - cap_energy(base.values()[k])).abs() < 1e-4, "{r_n}: {e}");
    }
    assert!(bubble_reinsertion(&base, 0.0123456).is_err());
    let at_pi = AngleProfile::constant(g.clone(), PI, 0.0).unwrap();
    assert!(matches!(
        bubble_reinsertion(&at_pi, g.r(100)),
        Err(bubbleflow::Error::DegenerateReinsertion(_))
    ));
}

#[test]
fn default_bubble_radius_is_a_node() {
    for n in [100, 500, 2000] {
        let g = build_grid(n, 2.0).unwrap();
        let r = default_r_n(&g);
        assert!(g.node_index(r).is_some() && r > 10.0 * g.axis_spacing() && r <= 0.25);
    }
}

#[test]
fn plan_validation() {
    let ok = FamilyPlan::default();
    ok.validate().unwrap();
    for bad in [
        FamilyPlan { tau_offsets: vec![0.5, 0.0], ..ok.clone() },
        FamilyPlan { tau_offsets: vec![-0.1], ..ok.clone() },
        FamilyPlan { r_n: Some(0.3), ..ok.clone() },
        FamilyPlan { post_horizon: 1.0, ..ok.clone() },
    ] {
        assert!(matches!(bad.validate(), Err(bubbleflow::Error::Config(_))));
    }
}

#[test]
fn base_branch_events_and_t2() {
    let run = family();
    let events = run.base.trajectory.events();
    assert_eq!(events.len(), 2);
    assert!(matches!(events[0], Event::Blowup { .. }));
    assert!(matches!(events[1], Event::BoundaryJump { chi_old, chi_new, .. } if chi_old == 0.0 && chi_new == PI));
    assert!(run.t2.t2 > run.t1);
    // After t₂ every snapshot lies under the cone π − εr.
    for p in run.base.trajectory.snapshots().iter().filter(|p| p.time() >= run.t2.t2 && p.chi() == PI) {
        assert!(cone_excess(p, run.t2.slope) <= 0.0);
    }
    assert!(run.drop.measured > 3.5, "{:?}", run.drop);
}

#[test]
fn family_branches_jump_by_four() {
    let run = family();
    assert_eq!(run.family.len(), 2);
    for b in &run.family {
        let tau = b.tau.unwrap();
        assert!(tau >= run.t2.t2);
        let kinds: Vec<_> = b.trajectory.events().iter().map(|e| e.kind()).collect();
        assert_eq!(kinds, ["blowup", "boundary_jump", "reinsertion", "boundary_jump"]);
        let jump = b.jump.unwrap();
        assert!(jump.holds(0.5), "{jump:?}");
        let cap = b.cap.unwrap();
        assert!((cap.quadrature - cap.identity).abs() < 1e-2);
    }
}

#[test]
fn branches_share_prefixes_and_separate() {
    let run = family();
    let base = run.base.trajectory.snapshots();
    for b in &run.family {
        let tau = b.tau.unwrap();
        let mine = b.trajectory.snapshots();
        let k = base.partition_point(|p| p.time() <= tau);
        assert_eq!(&mine[..k], &base[..k]);
        assert_eq!(mine[k].time(), tau);
        assert_eq!(mine[k].chi(), 0.0);
    }
    let ids: Vec<_> = run.branches().map(|b| b.id).collect();
    assert_eq!(ids, [0, 1, 2]);
    for a in run.branches() {
        for b in run.branches() {
            let d = branch_distance(a, b, run.final_time).unwrap();
            if a.id == b.id {
                assert_eq!(d.sup, 0.0);
            } else {
                assert!(d.sup > 0.5, "{} vs {}: {d:?}", a.id, b.id);
                assert!(d.l2 > 0.0);
            }
        }
    }
    // The jump time itself is ambiguous between limits.
    let b1 = run.branch(1).unwrap();
    assert!(branch_distance(&run.base, b1, b1.tau.unwrap()).is_err());
}

#[test]
fn family_outputs_on_disk() {
    let run = family();
    let dir = tempfile::tempdir().unwrap();
    let manifests = write_family(run, &SolverConfig::default(), dir.path()).unwrap();
    assert_eq!(manifests.len(), 3);
    for m in &manifests {
        let sub = dir.path().join(format!("branch_{}", m.branch_id));
        for f in ["manifest.json", "events.csv", "energy.csv", "branch.json", "snapshot_00000.csv"] {
            assert!(sub.join(f).exists(), "{f}");
        }
    }
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some("branch_id,tau,r_n,jump,sup_to_0,sup_to_1,sup_to_2"));
    assert_eq!(lines.count(), 3);
    let energy = std::fs::read_to_string(dir.path().join("branch_1/energy.csv")).unwrap();
    assert_eq!(energy.lines().next(), Some("t,E_total,E_inner,r_half,chi,dissipation_cum"));
}
