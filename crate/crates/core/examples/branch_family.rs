//! Builds the base branch and the reinserted family, prints the jumps and
//! pairwise distances, and optionally writes everything to a directory.
//!
//!     cargo run --release --example branch_family -- 500 out/family

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use bubbleflow::branching::{branch_distance, orchestrate, write_family, FamilyPlan};
use bubbleflow::evolver::{initial_profile, InitialDataSpec, SolverConfig};
use bubbleflow::radial::build_grid;

fn main() -> bubbleflow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let out = args.next();

    let grid = Arc::new(build_grid(n, 2.0)?);
    let p0 = initial_profile(&InitialDataSpec::new(1.9 * PI, 0.5 * PI)?, grid)?;
    let solver = SolverConfig::default();
    let run = orchestrate(&p0, &solver, &FamilyPlan::default())?;

    println!("t1 = {:.5}, drop = {:.4}, t2 = {:.3}", run.t1, run.drop.measured, run.t2.t2);
    for b in run.branches() {
        let jump = b.jump.map(|j| format!("{:.5}", j.jump)).unwrap_or_else(|| "-".into());
        print!("branch {} tau {:?} r_n {:?} jump {jump}; sup distance at t = {:.2}:", b.id, b.tau, b.r_n, run.final_time);
        for o in run.branches() {
            print!(" {:.3}", branch_distance(b, o, run.final_time)?.sup);
        }
        println!();
    }
    if let Some(dir) = out {
        write_family(&run, &solver, Path::new(&dir))?;
        println!("wrote {dir}");
    }
    Ok(())
}
