use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::radial::AngleProfile;

/// Replaces the profile inside `r_n` by the cap
/// `2 arctan((r/r_n) tan(φ̃(r_n)/2))`, which starts at 0 on the axis and
/// meets `φ̃` continuously at `r_n`. The kink at `r_n` is left for the
/// solver to smooth.
pub fn bubble_reinsertion(base: &AngleProfile, r_n: f64) -> Result<AngleProfile> {
    let grid = base.grid();
    let k = grid
        .node_index(r_n)
        .filter(|&k| k > 0 && k < grid.intervals())
        .ok_or_else(|| Error::InvalidParameter(format!("r_n = {r_n} is not an interior grid node")))?;
    let theta = base.values()[k];
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::DegenerateReinsertion(theta));
    }
    let slope = (0.5 * theta).tan() / r_n;
    let mut values = base.values().to_vec();
    values[0] = 0.0;
    for i in 1..k {
        values[i] = 2.0 * (grid.r(i) * slope).atan();
    }
    AngleProfile::new(base.grid_arc().clone(), values, base.time())
}

/// Default bubble radius: the node nearest `0.02`, but at least ten axis
/// spacings out.
pub fn default_r_n(grid: &crate::radial::RadialGrid) -> f64 {
    let floor = grid.first_node_at_or_above(10.0 * grid.axis_spacing());
    grid.r(grid.nearest_node(0.02).max(floor))
}
