use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::radial::RadialGrid;

/// Axis values closer than this to 0 or π are snapped onto them.
const AXIS_SNAP: f64 = 1e-12;

/// The angle field `φ(·, t)` on a radial grid.
///
/// The axis value `χ = φ(0)` is either 0 or π and the outer value `β = φ(1)`
/// is whatever the last sample holds; both are stored in the sample vector so
/// the boundary conditions hold by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleProfile {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
    time: f64,
}

fn snap_axis(chi: f64) -> Option<f64> {
    if chi.abs() <= AXIS_SNAP {
        Some(0.0)
    } else if (chi - PI).abs() <= AXIS_SNAP {
        Some(PI)
    } else {
        None
    }
}

impl AngleProfile {
    pub fn new(grid: Arc<RadialGrid>, mut values: Vec<f64>, time: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidProfile(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { node: i, r: grid.r(i) });
        }
        if !time.is_finite() {
            return Err(Error::InvalidProfile(format!("non-finite time {time}")));
        }
        values[0] = snap_axis(values[0]).ok_or_else(|| {
            Error::InvalidProfile(format!("axis value {} is neither 0 nor pi", values[0]))
        })?;
        Ok(Self { grid, values, time })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Arc<RadialGrid>, time: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values, time)
    }

    pub fn constant(grid: Arc<RadialGrid>, value: f64, time: f64) -> Result<Self> {
        Self::new(grid.clone(), vec![value; grid.len()], time)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn grid_arc(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Axis value `χ`.
    pub fn chi(&self) -> f64 {
        self.values[0]
    }

    /// Outer boundary value `β`.
    pub fn beta(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn value_at(&self, r: f64) -> f64 {
        self.grid.interpolate(&self.values, r)
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// Same interior values with the axis value replaced.
    pub fn with_axis(&self, chi: f64) -> Result<Self> {
        let mut values = self.values.clone();
        values[0] = chi;
        Self::new(self.grid.clone(), values, self.time)
    }

    /// `φ + π` at every node (axis must be 0 so the result stays admissible).
    pub fn shifted_by_pi(&self) -> Result<Self> {
        let values = self.values.iter().map(|v| v + PI).collect();
        Self::new(self.grid.clone(), values, self.time)
    }

    /// Smallest radius where the profile first reaches π/2 (from above when
    /// the axis sits at π), linearly interpolated inside the crossing
    /// interval. `None` if it never does.
    pub fn half_angle_radius(&self) -> Option<f64> {
        let target = PI / 2.0;
        let rising = self.chi() == 0.0;
        let v = &self.values;
        let k = v
            .iter()
            .position(|&x| if rising { x >= target } else { x <= target })?;
        if k == 0 {
            return Some(0.0);
        }
        let (r0, r1) = (self.grid.r(k - 1), self.grid.r(k));
        let s = (target - v[k - 1]) / (v[k] - v[k - 1]);
        Some(r0 + s.clamp(0.0, 1.0) * (r1 - r0))
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}
