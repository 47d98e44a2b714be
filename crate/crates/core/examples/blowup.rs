//! Runs the default data through the first blowup and reports the energy
//! lost there.
//!
//!     cargo run --release --example blowup -- 1000

use std::f64::consts::PI;
use std::sync::Arc;

use bubbleflow::branching::{run_base, FamilyPlan};
use bubbleflow::diagnostics::{energy_drop, EnergyTrace};
use bubbleflow::evolver::{initial_profile, InitialDataSpec, SolverConfig};
use bubbleflow::radial::build_grid;

fn main() -> bubbleflow::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let grid = Arc::new(build_grid(n, 2.0)?);
    let p0 = initial_profile(&InitialDataSpec::new(1.9 * PI, 0.5 * PI)?, grid)?;
    let plan = FamilyPlan::default();

    let (traj, t1, dt) = run_base(&p0, &SolverConfig::default(), &plan)?;
    let trace = EnergyTrace::from_trajectory(&traj, plan.probe_radius)?;
    let drop = energy_drop(&trace, t1)?;
    println!("blowup at t1 = {t1:.6} (step {dt:.1e}), {} snapshots", traj.snapshots().len());
    println!(
        "E before {:.5}, after {:.5}, drop {:.5}; probe {:?} -> {:.5}",
        drop.before, drop.after, drop.measured, drop.probe, drop.extrapolated
    );
    for s in trace.samples().iter().step_by(20) {
        println!("t {:.4}  E {:.5}  axis {}", s.t, s.total, s.chi);
    }
    Ok(())
}
