use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::branching::{branch_distance, BranchDistance, FamilyRun};
use crate::diagnostics::JumpEstimate;
use crate::error::Result;
use crate::evolver::{ensure_dir, write_file, write_trajectory, SolverConfig, SCHEMA_VERSION};

#[derive(Debug, Clone, Serialize)]
pub struct FinalDistance {
    pub branch_id: usize,
    #[serde(flatten)]
    pub distance: BranchDistance,
}

/// Contents of `branch.json`.
#[derive(Debug, Clone, Serialize)]
pub struct BranchManifest {
    pub schema_version: u32,
    pub branch_id: usize,
    pub tau: Option<f64>,
    pub r_n: Option<f64>,
    pub t1: f64,
    pub t2: f64,
    pub jump_estimate: Option<JumpEstimate>,
    pub final_time: f64,
    pub final_distances: Vec<FinalDistance>,
}

/// Writes `branch_<id>/` (trajectory files, `energy.csv`, `branch.json`)
/// for every branch, plus `summary.csv` with one row per branch.
pub fn write_family(run: &FamilyRun, solver: &SolverConfig, dir: &Path) -> Result<Vec<BranchManifest>> {
    ensure_dir(dir)?;
    let mut manifests = Vec::new();
    for b in run.branches() {
        let mut final_distances = Vec::new();
        for other in run.branches() {
            final_distances.push(FinalDistance {
                branch_id: other.id,
                distance: branch_distance(b, other, run.final_time)?,
            });
        }
        let m = BranchManifest {
            schema_version: SCHEMA_VERSION,
            branch_id: b.id,
            tau: b.tau,
            r_n: b.r_n,
            t1: run.t1,
            t2: run.t2.t2,
            jump_estimate: b.jump,
            final_time: run.final_time,
            final_distances,
        };
        let sub = dir.join(format!("branch_{}", b.id));
        write_trajectory(&b.trajectory, solver, &sub)?;
        write_file(&sub.join("energy.csv"), &b.energy.to_csv())?;
        write_file(&sub.join("branch.json"), &(serde_json::to_string_pretty(&m)? + "\n"))?;
        manifests.push(m);
    }
    let mut s = String::from("branch_id,tau,r_n,jump");
    for m in &manifests {
        let _ = write!(s, ",sup_to_{}", m.branch_id);
    }
    s.push('\n');
    for m in &manifests {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let _ = write!(
            s,
            "{},{},{},{}",
            m.branch_id,
            opt(m.tau),
            opt(m.r_n),
            opt(m.jump_estimate.map(|j| j.jump))
        );
        for d in &m.final_distances {
            let _ = write!(s, ",{}", d.distance.sup);
        }
        s.push('\n');
    }
    write_file(&dir.join("summary.csv"), &s)?;
    Ok(manifests)
}
