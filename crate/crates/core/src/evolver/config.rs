use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::RadialGrid;

/// Node whose radius sets the default blowup threshold.
///
/// The discrete bubble cannot shrink below about node 11 of a quadratic
/// grid, and the amplitude test needs `r₁⁄₂ ≲ ρ_blow/10`, so the threshold
/// has to sit well above the pinning scale.
pub const DEFAULT_BLOWUP_NODE: usize = 60;

/// Time stepping and detection controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub dt0: f64,
    pub max_dt: f64,
    /// Steps below this size abort the run as an unresolved singularity.
    pub min_dt: f64,
    /// Largest accepted change of any node in one step (radians).
    pub max_change: f64,
    /// Implicit weight of the linear part: 1 is backward Euler, 1/2 is
    /// Crank–Nicolson.
    pub theta: f64,
    /// Blowup threshold radius; `None` means the radius of node
    /// [`DEFAULT_BLOWUP_NODE`].
    pub rho_blow: Option<f64>,
    /// Snapshot spacing in time.
    pub output_every: f64,
    /// Nodes inside this radius are ignored by the step-size control. Set
    /// for the restart after a blowup, where the unresolved core has to
    /// unwind at grid scale.
    pub core_radius: Option<f64>,
    /// Whether to stop at a blowup while the axis value is 0.
    pub detect_blowup: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt0: 1e-6,
            max_dt: 2e-3,
            min_dt: 1e-12,
            max_change: 0.05,
            theta: 1.0,
            rho_blow: None,
            output_every: 0.01,
            core_radius: None,
            detect_blowup: true,
        }
    }
}

impl SolverConfig {
    /// Checks the invariants against `grid`.
    pub fn validate(&self, grid: &RadialGrid) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.dt0 > 0.0 && self.max_dt >= self.dt0 && self.min_dt > 0.0 && self.min_dt <= self.dt0) {
            return bad(format!(
                "need 0 < min_dt <= dt0 <= max_dt, got {} / {} / {}",
                self.min_dt, self.dt0, self.max_dt
            ));
        }
        if !(0.5..=1.0).contains(&self.theta) {
            return bad(format!("theta must lie in [1/2, 1], got {}", self.theta));
        }
        if !(self.max_change > 0.0) {
            return bad(format!("max_change must be > 0, got {}", self.max_change));
        }
        if !(self.output_every > 0.0) {
            return bad(format!("output_every must be > 0, got {}", self.output_every));
        }
        let rho = self.rho_blow(grid);
        if !(rho >= 3.0 * grid.axis_spacing()) || rho >= 0.5 {
            return bad(format!(
                "rho_blow = {rho} must be at least 3 axis spacings ({}) and below 1/2",
                3.0 * grid.axis_spacing()
            ));
        }
        Ok(())
    }

    pub fn rho_blow(&self, grid: &RadialGrid) -> f64 {
        self.rho_blow
            .unwrap_or_else(|| grid.r(DEFAULT_BLOWUP_NODE.min(grid.intervals() / 4)))
    }
}
