//! Writes VTK files of the 3D velocity, director and pressure for every
//! snapshot of a short run.
//!
//!     cargo run --release --example export_fields -- out/fields

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use bubbleflow::evolver::{initial_profile, run_until, InitialDataSpec, SolverConfig};
use bubbleflow::field3d::{export_trajectory, Sampling};
use bubbleflow::radial::build_grid;

fn main() -> bubbleflow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/fields".into()));
    let grid = Arc::new(build_grid(400, 2.0)?);
    let p0 = initial_profile(&InitialDataSpec::new(1.5 * PI, 0.5 * PI)?, grid)?;
    let traj = run_until(&p0, 0.05, &SolverConfig::default())?;
    let series = export_trajectory(&traj, &Sampling::default(), &dir)?;
    println!("{} VTK files in {}", series.snapshots.len(), dir.display());
    Ok(())
}
