//! CSV and JSON output of trajectories.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolver::{Event, SolverConfig, Trajectory};
use crate::radial::{build_grid, AngleProfile};

/// Bumped whenever a column or manifest key changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
struct SnapshotEntry {
    index: usize,
    t: f64,
    chi: f64,
    file: String,
}

#[derive(Debug, Serialize)]
struct GridInfo {
    intervals: usize,
    grading: f64,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    grid: GridInfo,
    solver: &'a SolverConfig,
    snapshots: Vec<SnapshotEntry>,
    events: &'a [Event],
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// `kind,t,chi_old,chi_new,r_n`; unused cells stay empty.
pub fn events_csv(events: &[Event]) -> String {
    let mut s = String::from("kind,t,chi_old,chi_new,r_n\n");
    for e in events {
        let _ = match *e {
            Event::Blowup { t, .. } => writeln!(s, "blowup,{t},,,"),
            Event::BoundaryJump { t, chi_old, chi_new } => {
                writeln!(s, "boundary_jump,{t},{chi_old},{chi_new},")
            }
            Event::Reinsertion { t, r_n } => writeln!(s, "reinsertion,{t},,,{r_n}"),
        };
    }
    s
}

/// `r,phi` for one snapshot.
pub fn snapshot_csv(profile: &crate::radial::AngleProfile) -> String {
    let mut s = String::from("r,phi\n");
    for (r, v) in profile.grid().nodes().iter().zip(profile.values()) {
        let _ = writeln!(s, "{r},{v}");
    }
    s
}

/// Writes `snapshot_NNNNN.csv` files, `events.csv` and `manifest.json` into
/// `dir`.
pub fn write_trajectory(traj: &Trajectory, config: &SolverConfig, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    let first = traj
        .snapshots()
        .first()
        .ok_or_else(|| Error::InvalidTrace("nothing to write".into()))?;
    let mut entries = Vec::with_capacity(traj.len());
    for (index, p) in traj.snapshots().iter().enumerate() {
        let file = format!("snapshot_{index:05}.csv");
        write_file(&dir.join(&file), &snapshot_csv(p))?;
        entries.push(SnapshotEntry {
            index,
            t: p.time(),
            chi: p.chi(),
            file,
        });
    }
    write_file(&dir.join("events.csv"), &events_csv(traj.events()))?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        grid: GridInfo {
            intervals: first.grid().intervals(),
            grading: first.grid().grading(),
        },
        solver: config,
        snapshots: entries,
        events: traj.events(),
    };
    write_file(
        &dir.join("manifest.json"),
        &(serde_json::to_string_pretty(&manifest)? + "\n"),
    )
}

fn read_manifest(dir: &Path) -> Result<(PathBuf, serde_json::Value)> {
    let manifest_path = dir.join("manifest.json");
    let text = fs::read_to_string(&manifest_path)
        .map_err(|_| Error::MissingArtifact(manifest_path.clone()))?;
    Ok((manifest_path, serde_json::from_str(&text)?))
}

/// Reads back the snapshot series written by [`write_trajectory`]:
/// `(t, r, phi)` per snapshot.
pub fn read_snapshots(dir: &Path) -> Result<Vec<(f64, Vec<f64>, Vec<f64>)>> {
    let (manifest_path, manifest) = read_manifest(dir)?;
    let entries = manifest["snapshots"]
        .as_array()
        .ok_or_else(|| Error::InvalidTrace(format!("{} has no snapshot list", manifest_path.display())))?;
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let t = e["t"].as_f64().unwrap_or(f64::NAN);
        let file = dir.join(e["file"].as_str().unwrap_or_default());
        let body = fs::read_to_string(&file).map_err(|_| Error::MissingArtifact(file.clone()))?;
        let (mut rs, mut vs) = (Vec::new(), Vec::new());
        for line in body.lines().skip(1) {
            let mut it = line.split(',');
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::InvalidTrace(format!("bad row '{line}' in {}", file.display())))
            };
            rs.push(parse(it.next())?);
            vs.push(parse(it.next())?);
        }
        out.push((t, rs, vs));
    }
    Ok(out)
}

/// Rebuilds the profiles written by [`write_trajectory`] on the grid named
/// in the manifest. The stored radii must be the grid nodes.
pub fn read_profiles(dir: &Path) -> Result<Vec<AngleProfile>> {
    let (manifest_path, manifest) = read_manifest(dir)?;
    let bad = || Error::InvalidTrace(format!("{} has no usable grid entry", manifest_path.display()));
    let intervals = manifest["grid"]["intervals"].as_u64().ok_or_else(bad)? as usize;
    let grading = manifest["grid"]["grading"].as_f64().ok_or_else(bad)?;
    let grid = Arc::new(build_grid(intervals, grading)?);
    read_snapshots(dir)?
        .into_iter()
        .map(|(t, r, phi)| {
            if r.len() != grid.len() || r.iter().zip(grid.nodes()).any(|(a, b)| (a - b).abs() > 1e-12) {
                return Err(Error::InvalidTrace(format!(
                    "snapshot at t = {t} in {} is not on the manifest grid",
                    dir.display()
                )));
            }
            AngleProfile::new(grid.clone(), phi, t)
        })
        .collect()
}
