use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evolver::step::step;
use crate::evolver::{Event, SolverConfig, Trajectory};
use crate::radial::AngleProfile;

/// Amplitude margin below π that counts as "reached the bubble limit".
pub const NEAR_PI: f64 = 0.1;

/// Bound on `dt · cos⁺/r²`, the part of the sine Jacobian the step keeps
/// explicit. Without it the collapse is slowed by however much the step
/// outruns the bubble time scale `λ²`.
pub const EXPLICIT_STIFFNESS: f64 = 0.25;

/// Largest step for which the explicit part of the sine term stays below
/// [`EXPLICIT_STIFFNESS`] on nodes `first..`.
fn stiffness_cap(profile: &AngleProfile, first: usize) -> f64 {
    let grid = profile.grid();
    let chi = profile.chi();
    let n = grid.intervals();
    let worst = (first.max(1)..n)
        .map(|i| {
            let r = grid.r(i);
            (-(2.0 * (profile.values()[i] - chi)).cos()).max(0.0) / (r * r)
        })
        .fold(0.0, f64::max);
    if worst > 0.0 {
        EXPLICIT_STIFFNESS / worst
    } else {
        f64::INFINITY
    }
}

/// Largest value on nodes with `0 < r < r_max`.
fn max_inside(profile: &AngleProfile, r_max: f64) -> f64 {
    let grid = profile.grid();
    profile
        .values()
        .iter()
        .enumerate()
        .skip(1)
        .take_while(|(i, _)| grid.r(*i) < r_max)
        .map(|(_, &v)| v)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Fires when the half-angle radius is below `ρ_blow` and the profile
/// exceeds `π − 0.1` somewhere inside `2ρ_blow`. Only meaningful while the
/// axis value is 0.
pub fn detect_blowup(profile: &AngleProfile, config: &SolverConfig) -> Option<Event> {
    if profile.chi() != 0.0 {
        return None;
    }
    let rho = config.rho_blow(profile.grid());
    let r_half = profile.half_angle_radius()?;
    if r_half < rho && max_inside(profile, 2.0 * rho) > PI - NEAR_PI {
        Some(Event::Blowup {
            t: profile.time(),
            dt: 0.0,
            r_half,
        })
    } else {
        None
    }
}

/// Advances `start` to `t_end` holding the axis at `start.chi()`.
///
/// Snapshots are stored at every multiple of `config.output_every`, at
/// `t_end`, and at a detected blowup (which ends the run). The start state
/// is the first snapshot.
pub fn run_until(start: &AngleProfile, t_end: f64, config: &SolverConfig) -> Result<Trajectory> {
    config.validate(start.grid())?;
    if !(t_end > start.time()) {
        return Err(Error::InvalidParameter(format!(
            "t_end = {t_end} must exceed the start time {}",
            start.time()
        )));
    }
    let chi = start.chi();
    let weights = start.grid().weights().to_vec();
    let every = config.output_every;
    let first_checked = config
        .core_radius
        .map_or(1, |rc| start.grid().first_node_at_or_above(rc));

    let mut traj = Trajectory::new();
    traj.push(start.clone(), 0.0)?;
    let mut cur = start.clone();
    let mut dissipation = 0.0;
    let mut dt = config.dt0;
    let mut k_out = (start.time() / every).floor() as i64 + 1;
    let mut next_out = k_out as f64 * every;
    if next_out <= start.time() {
        k_out += 1;
        next_out = k_out as f64 * every;
    }

    while cur.time() < t_end {
        let target = next_out.min(t_end);
        let h = dt.min(stiffness_cap(&cur, first_checked)).min(target - cur.time());
        // Compared after rounding so a step can never stop one ulp short.
        let landing = cur.time() + h >= target;
        let attempt = step(&cur, h, chi, config.theta);
        let accepted = match attempt {
            Ok(new) => {
                let change = new.values()[first_checked..]
                    .iter()
                    .zip(&cur.values()[first_checked..])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                (change <= config.max_change).then_some(new)
            }
            Err(Error::SolveFailed { .. }) => None,
            Err(e) => return Err(e),
        };
        let Some(mut new) = accepted else {
            dt = 0.5 * h;
            if dt < config.min_dt {
                traj.push(cur.clone(), dissipation).ok();
                return Err(Error::UnresolvedSingularity {
                    t: cur.time(),
                    min_dt: config.min_dt,
                    partial: Box::new(traj),
                });
            }
            continue;
        };
        if landing {
            new = new.with_time(target);
        }
        dissipation += new
            .values()
            .iter()
            .zip(cur.values())
            .zip(&weights)
            .map(|((a, b), w)| (a - b) * (a - b) * w)
            .sum::<f64>()
            / h;
        cur = new;
        if h >= dt {
            dt = (dt * 1.2).min(config.max_dt);
        }

        let mut recorded = false;
        if landing {
            traj.push(cur.clone(), dissipation)?;
            recorded = true;
            if target == next_out {
                k_out += 1;
                next_out = k_out as f64 * every;
            }
        }
        if config.detect_blowup && chi == 0.0 {
            if let Some(Event::Blowup { t, r_half, .. }) = detect_blowup(&cur, config) {
                if !recorded {
                    traj.push(cur.clone(), dissipation)?;
                }
                traj.push_event(Event::Blowup { t, dt: h, r_half })?;
                return Ok(traj);
            }
        }
    }
    Ok(traj)
}

/// Restart state after a blowup, recording the `0 → π` boundary jump on
/// `traj`.
///
/// At detection the bubble is still a few cells wide, so simply setting
/// the axis to π would leave it in place next to a new grid-scale defect at
/// the axis. The restart instead takes the limit profile: nodes inside the
/// core (up to the first node past `r₁⁄₂` where `φ ≥ π − 0.1`) are replaced
/// by the linear ramp from π on the axis to the value there. A bubble
/// narrower than the first cell leaves no core, and only the axis changes.
pub fn continue_past_blowup(traj: &mut Trajectory, config: &SolverConfig) -> Result<AngleProfile> {
    let Some(&Event::Blowup { t, .. }) = traj.events().last() else {
        return Err(Error::InvalidTrace("last event is not a blowup".into()));
    };
    let last = traj
        .last()
        .ok_or_else(|| Error::InvalidTrace("empty trajectory".into()))?;
    let rho = config.rho_blow(last.grid());
    let restart = excise_core(last, 2.0 * rho)?;
    traj.push_event(Event::BoundaryJump {
        t,
        chi_old: 0.0,
        chi_new: PI,
    })?;
    Ok(restart)
}

/// The profile with its bubble core inside `r_max` replaced by a ramp
/// from π; fails when the profile never gets within 0.1 of π there.
pub fn excise_core(profile: &AngleProfile, r_max: f64) -> Result<AngleProfile> {
    let grid = profile.grid();
    let v = profile.values();
    let r_half = profile.half_angle_radius().unwrap_or(0.0);
    let edge = (1..grid.intervals())
        .take_while(|&i| grid.r(i) < r_max)
        .find(|&i| grid.r(i) >= r_half && v[i] > PI - NEAR_PI)
        .ok_or(Error::BlowupLimitNotPi {
            max_near_axis: max_inside(profile, r_max),
        })?;
    let (re, ve) = (grid.r(edge), v[edge]);
    let mut values = v.to_vec();
    values[0] = PI;
    for (i, x) in values.iter_mut().enumerate().take(edge).skip(1) {
        *x = PI + (ve - PI) * grid.r(i) / re;
    }
    AngleProfile::new(profile.grid_arc().clone(), values, profile.time())
}
