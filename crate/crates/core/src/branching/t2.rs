use std::f64::consts::PI;

use serde::Serialize;

use crate::barriers::BarrierSpec;
use crate::error::{Error, Result};
use crate::evolver::Trajectory;
use crate::radial::AngleProfile;

/// Slope defaults of the cone `φ ≤ π − ε r` and of the dynamic cap `g`.
pub const DEFAULT_CONE_SLOPE: f64 = 0.1;
pub const DEFAULT_GAMMA: f64 = 1.05;

/// Outcome of [`find_t2`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct T2Report {
    /// First snapshot time after `t₁` from which the cone bound holds at
    /// every node for the rest of the trajectory.
    pub t2: f64,
    pub slope: f64,
    pub gamma: f64,
    /// First snapshot time after `t₁` with `φ ≤ g(·, 0)`, if any.
    pub t_sigma: Option<f64>,
    /// Largest `φ − g(·, t − t_σ)` over snapshots in `[t_σ, t_σ + ln 3]`;
    /// nonpositive means the trajectory stayed below the cap.
    pub g_margin: Option<f64>,
    /// `t_σ + (γ + ln 3)/2`, the time at which `g` itself has the cone
    /// slope.
    pub g_t2: Option<f64>,
}

/// `max_i (φ_i − (π − ε r_i))`.
pub fn cone_excess(profile: &AngleProfile, slope: f64) -> f64 {
    profile
        .grid()
        .nodes()
        .iter()
        .zip(profile.values())
        .map(|(r, v)| v - (PI - slope * r))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn cap_excess(profile: &AngleProfile, g: &BarrierSpec, t: f64) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for (&r, &v) in profile.grid().nodes().iter().zip(profile.values()) {
        worst = worst.max(v - g.value(r, t)?);
    }
    Ok(worst)
}

/// Finds `t₂` on the part of `base` after the first blowup (or on all of it
/// if there is none) by checking the cone at every snapshot, and evaluates
/// the dynamic cap `g` with `l = slope`.
pub fn find_t2(base: &Trajectory, slope: f64, gamma: f64) -> Result<T2Report> {
    let g = BarrierSpec::quadratic_cap(slope, gamma)?;
    let t1 = base.blowup_time().unwrap_or(f64::NEG_INFINITY);
    let snaps: Vec<&AngleProfile> = base
        .snapshots()
        .iter()
        .filter(|p| p.time() > t1 || (p.time() == t1 && p.chi() != 0.0))
        .collect();
    let last_time = snaps.last().map_or(t1, |p| p.time());
    let mut t2 = None;
    for p in snaps.iter().rev() {
        if cone_excess(p, slope) <= 0.0 {
            t2 = Some(p.time());
        } else {
            break;
        }
    }
    let t2 = t2.ok_or(Error::T2NotReached { last_time })?;

    let mut t_sigma = None;
    for p in &snaps {
        if cap_excess(p, &g, 0.0)? <= 0.0 {
            t_sigma = Some(p.time());
            break;
        }
    }
    let g_margin = match t_sigma {
        None => None,
        Some(ts) => {
            let mut worst = f64::NEG_INFINITY;
            for p in snaps.iter().filter(|p| p.time() >= ts && p.time() <= ts + 3f64.ln()) {
                worst = worst.max(cap_excess(p, &g, p.time() - ts)?);
            }
            Some(worst)
        }
    };
    Ok(T2Report {
        t2,
        slope,
        gamma,
        t_sigma,
        g_margin,
        g_t2: t_sigma.map(|ts| ts + 0.5 * (gamma + 3f64.ln())),
    })
}
