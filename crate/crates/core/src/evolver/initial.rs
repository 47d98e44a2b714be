use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barriers::BarrierSpec;
use crate::error::{Error, Result};
use crate::radial::{AngleProfile, RadialGrid};

/// Peak value `α` at `r = 1/2` and outer value `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialDataSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl InitialDataSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let s = Self { alpha, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > PI && self.alpha < 2.0 * PI) {
            return Err(Error::InvalidInitialData(format!(
                "alpha = {} must lie in (pi, 2 pi)",
                self.alpha
            )));
        }
        if !(self.beta > 0.0 && self.beta < PI) {
            return Err(Error::InvalidInitialData(format!(
                "beta = {} must lie in (0, pi)",
                self.beta
            )));
        }
        Ok(())
    }

    /// `α sin(πr)` on `[0, 1/2]`, `β + (α − β) cos²(π(r − 1/2))` beyond.
    pub fn value(&self, r: f64) -> f64 {
        if r <= 0.5 {
            self.alpha * (PI * r).sin()
        } else {
            let c = (PI * (r - 0.5)).cos();
            self.beta + (self.alpha - self.beta) * c * c
        }
    }
}

/// Shape checks of the sampled initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialReport {
    pub increasing_inner: bool,
    pub decreasing_outer: bool,
    /// `max φ₀(r)/r` over the nodes in `(0, 1/2]`, the discrete proxy for
    /// an odd extension through the axis.
    pub axis_slope_bound: f64,
    /// Largest `Φ(r, 0) − φ₀(r)` over nodes in `[0, 1/2]`; `≤ 0` means the
    /// subsolution starts below the data.
    pub domination_gap: Option<f64>,
}

impl InitialReport {
    pub fn dominated(&self) -> Option<bool> {
        self.domination_gap.map(|g| g <= 0.0)
    }
}

/// Samples the initial data on `grid`.
pub fn initial_profile(spec: &InitialDataSpec, grid: Arc<RadialGrid>) -> Result<AngleProfile> {
    spec.validate()?;
    let mut p = AngleProfile::from_fn(grid, 0.0, |r| spec.value(r))?;
    // Make the end values exact rather than rounded through cos²(π/2).
    let n = p.grid().intervals();
    p.values_mut()[n] = spec.beta;
    Ok(p)
}

/// Monotonicity, axis behaviour and (optionally) domination of a
/// subsolution at `t = 0`.
pub fn inspect_initial(profile: &AngleProfile, subsolution: Option<&BarrierSpec>) -> Result<InitialReport> {
    let grid = profile.grid();
    let v = profile.values();
    let mid = grid.first_node_at_or_above(0.5);
    let increasing_inner = v[..=mid].windows(2).all(|w| w[1] >= w[0]);
    let decreasing_outer = v[mid..].windows(2).all(|w| w[1] <= w[0]);
    let axis_slope_bound = (1..=mid)
        .map(|i| v[i].abs() / grid.r(i))
        .fold(0.0, f64::max);
    let domination_gap = match subsolution {
        None => None,
        Some(spec) => {
            let mut gap = f64::NEG_INFINITY;
            for i in 0..=mid {
                let r = grid.r(i);
                if r > 0.5 {
                    break;
                }
                gap = gap.max(spec.value(r, 0.0)? - v[i]);
            }
            Some(gap)
        }
    };
    Ok(InitialReport {
        increasing_inner,
        decreasing_outer,
        axis_slope_bound,
        domination_gap,
    })
}
