use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barriers::{Certificate, Target};
use crate::branching::FamilyPlan;
use crate::error::{Error, Result};
use crate::evolver::{initial_profile, InitialDataSpec, SolverConfig};
use crate::field3d::Sampling;
use crate::radial::{AngleProfile, RadialGrid};

const SHIPPED_SUBSOLUTION: &str = include_str!("../../fixtures/subsolution.json");
const SHIPPED_SUPERSOLUTION: &str = include_str!("../../fixtures/supersolution.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    #[serde(rename = "N")]
    pub intervals: usize,
    #[serde(rename = "q")]
    pub grading: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { intervals: 2000, grading: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InitialSection {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for InitialSection {
    fn default() -> Self {
        Self { alpha: 1.9 * PI, beta: 0.5 * PI }
    }
}

/// Certificate files; unset entries use the fixtures built into the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BarrierSection {
    pub subsolution: Option<PathBuf>,
    pub supersolution: Option<PathBuf>,
    /// Scale of the shifted bubble `π + 2 arctan(r/(σ eᵗ))`.
    pub phi_bar_sigma: f64,
}

impl Default for BarrierSection {
    fn default() -> Self {
        Self {
            subsolution: None,
            supersolution: None,
            phi_bar_sigma: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

/// Everything a subcommand needs. The file format is TOML written with
/// dotted keys, one setting per line:
///
/// ```toml
/// grid.N = 1000
/// initial.alpha = 5.9690260418206069
/// solver.max_dt = 2e-3
/// branch.tau_list = [0.0, 0.5]
/// ```
///
/// Relative fixture paths are resolved against the directory of the
/// config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub grid: GridSection,
    pub initial: InitialSection,
    pub solver: SolverConfig,
    pub branch: FamilyPlan,
    pub barriers: BarrierSection,
    pub fields: Sampling,
    pub output: OutputSection,
}

impl ScenarioConfig {
    /// Parses `text`; relative fixture paths are taken relative to `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for p in [&mut cfg.barriers.subsolution, &mut cfg.barriers.supersolution]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks every section. Touches nothing on disk except for reading the
    /// fixtures.
    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        self.initial_spec()?;
        self.solver.validate(&grid)?;
        self.branch.validate()?;
        self.fields.validate()?;
        if !(self.barriers.phi_bar_sigma > 0.0 && self.barriers.phi_bar_sigma.is_finite()) {
            return Err(Error::Config(format!(
                "barriers.phi_bar_sigma must be > 0, got {}",
                self.barriers.phi_bar_sigma
            )));
        }
        self.subsolution()?;
        self.supersolution()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.grid.intervals, self.grid.grading).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn initial_spec(&self) -> Result<InitialDataSpec> {
        InitialDataSpec::new(self.initial.alpha, self.initial.beta)
    }

    pub fn initial_profile(&self) -> Result<AngleProfile> {
        initial_profile(&self.initial_spec()?, Arc::new(self.grid()?))
    }

    pub fn subsolution(&self) -> Result<Certificate> {
        load_certificate(self.barriers.subsolution.as_deref(), SHIPPED_SUBSOLUTION, Target::Subsolution)
    }

    pub fn supersolution(&self) -> Result<Certificate> {
        load_certificate(self.barriers.supersolution.as_deref(), SHIPPED_SUPERSOLUTION, Target::Supersolution)
    }
}

fn load_certificate(path: Option<&Path>, shipped: &str, family: Target) -> Result<Certificate> {
    let cert = match path {
        Some(p) => Certificate::load(p)?,
        None => serde_json::from_str(shipped)?,
    };
    if cert.family != family {
        return Err(Error::Config(format!(
            "fixture {} holds a {:?} certificate where a {family:?} one is expected",
            path.map_or("<shipped>".into(), |p| p.display().to_string()),
            cert.family
        )));
    }
    Ok(cert)
}

/// Fails unless `dir` exists as a writable directory or could be created
/// under a writable ancestor.
pub fn check_writable(dir: &Path) -> Result<()> {
    let mut probe = Some(dir);
    while let Some(p) = probe {
        if let Ok(meta) = std::fs::metadata(p) {
            if !meta.is_dir() {
                return Err(Error::Config(format!("{} is not a directory", p.display())));
            }
            if meta.permissions().readonly() {
                return Err(Error::Config(format!("{} is not writable", p.display())));
            }
            return Ok(());
        }
        probe = p.parent().filter(|q| !q.as_os_str().is_empty());
    }
    // A relative path with no existing component lives under the working
    // directory.
    Ok(())
}
