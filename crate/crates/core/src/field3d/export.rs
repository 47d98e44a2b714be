use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolver::{ensure_dir, write_file, SCHEMA_VERSION};
use crate::field3d::{director, time_derivative, velocity, PressureProfile};
use crate::radial::AngleProfile;

/// Structured sampling of the cylinder: `nr` radii in `[0, 1]`, `ntheta`
/// angles in `[0, 2π)`, `nz` heights in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sampling {
    pub nr: usize,
    pub ntheta: usize,
    pub nz: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { nr: 21, ntheta: 24, nz: 11 }
    }
}

impl Sampling {
    pub fn validate(&self) -> Result<()> {
        if self.nr < 2 || self.ntheta < 2 || self.nz < 2 {
            return Err(Error::Config(format!(
                "sampling counts must be >= 2 each, got {} x {} x {}",
                self.nr, self.ntheta, self.nz
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> usize {
        self.nr * self.ntheta * self.nz
    }

    /// Point coordinates in VTK order (radius fastest, then angle, then
    /// height).
    pub fn coordinates(&self) -> Vec<[f64; 3]> {
        let mut out = Vec::with_capacity(self.points());
        for k in 0..self.nz {
            let z = k as f64 / (self.nz - 1) as f64;
            for j in 0..self.ntheta {
                let th = 2.0 * PI * j as f64 / self.ntheta as f64;
                let (s, c) = th.sin_cos();
                for i in 0..self.nr {
                    let r = i as f64 / (self.nr - 1) as f64;
                    out.push([r * c, r * s, z]);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub index: usize,
    pub t: f64,
    pub file: String,
}

/// Contents of `series.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSeries {
    pub schema_version: u32,
    pub sampling: Sampling,
    pub snapshots: Vec<SeriesEntry>,
}

fn vtk_text(profile: &AngleProfile, pressure: &PressureProfile, sampling: &Sampling) -> String {
    let pts = sampling.coordinates();
    let mut s = String::new();
    let _ = writeln!(s, "# vtk DataFile Version 3.0");
    let _ = writeln!(s, "director field t={}", profile.time());
    let _ = writeln!(s, "ASCII\nDATASET STRUCTURED_GRID");
    let _ = writeln!(s, "DIMENSIONS {} {} {}", sampling.nr, sampling.ntheta, sampling.nz);
    let _ = writeln!(s, "POINTS {} double", pts.len());
    for p in &pts {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    let _ = writeln!(s, "POINT_DATA {}", pts.len());
    let _ = writeln!(s, "VECTORS u double");
    for p in &pts {
        let u = velocity(p[0], p[1], p[2]);
        let _ = writeln!(s, "{} {} {}", u[0], u[1], u[2]);
    }
    let _ = writeln!(s, "VECTORS d double");
    for p in &pts {
        let d = director(profile, p[0], p[1]);
        let _ = writeln!(s, "{} {} {}", d[0], d[1], d[2]);
    }
    let _ = writeln!(s, "SCALARS P double 1\nLOOKUP_TABLE default");
    for p in &pts {
        let _ = writeln!(s, "{}", pressure.at(p[0].hypot(p[1]), p[2]));
    }
    s
}

/// Writes `fields_NNNNN.vtk` per snapshot and `series.json` into `dir`.
/// `φ_t` for the pressure comes from [`time_derivative`] on consecutive
/// snapshots.
pub fn export_vtk(snapshots: &[AngleProfile], sampling: &Sampling, dir: &Path) -> Result<FieldSeries> {
    sampling.validate()?;
    ensure_dir(dir)?;
    let mut entries = Vec::with_capacity(snapshots.len());
    for (index, p) in snapshots.iter().enumerate() {
        let prev = index.checked_sub(1).map(|k| &snapshots[k]);
        let phi_t = time_derivative(prev, p);
        let pressure = PressureProfile::new(p, &phi_t)?;
        let file = format!("fields_{index:05}.vtk");
        write_file(&dir.join(&file), &vtk_text(p, &pressure, sampling))?;
        entries.push(SeriesEntry { index, t: p.time(), file });
    }
    let series = FieldSeries {
        schema_version: SCHEMA_VERSION,
        sampling: *sampling,
        snapshots: entries,
    };
    write_file(&dir.join("series.json"), &(serde_json::to_string_pretty(&series)? + "\n"))?;
    Ok(series)
}

/// [`export_vtk`] over every snapshot of a trajectory.
pub fn export_trajectory(traj: &crate::evolver::Trajectory, sampling: &Sampling, dir: &Path) -> Result<FieldSeries> {
    export_vtk(traj.snapshots(), sampling, dir)
}
