//! Energy bookkeeping along a trajectory: traces, the drop at a blowup, the
//! jump at a reinsertion, and the Gronwall bound on smooth segments.

use std::fmt::Write as _;

use serde::Serialize;

use crate::diagnostics::energy::{energy, total_energy};
use crate::error::{Error, Result};
use crate::evolver::{Event, Trajectory};

/// One row of an [`EnergyTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergySample {
    pub t: f64,
    pub total: f64,
    /// `E_{0,r̃}` at the trace's probe radius.
    pub inner: f64,
    /// `E_{0,r̃/2}`, the second probe used for extrapolation.
    pub inner_half: f64,
    pub r_half: Option<f64>,
    pub chi: f64,
}

/// Energies of every snapshot of a trajectory, with its dissipation and
/// events.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTrace {
    probe: f64,
    probe_half: f64,
    samples: Vec<EnergySample>,
    dissipation: Vec<f64>,
    events: Vec<Event>,
}

impl EnergyTrace {
    /// Evaluates the trace; the probe radius `r̃` and `r̃/2` are moved to
    /// the nearest grid nodes.
    pub fn from_trajectory(traj: &Trajectory, probe: f64) -> Result<Self> {
        let first = traj
            .snapshots()
            .first()
            .ok_or_else(|| Error::InvalidTrace("empty trajectory".into()))?;
        if !(probe > 0.0 && probe < 1.0) {
            return Err(Error::InvalidParameter(format!("probe radius must lie in (0, 1), got {probe}")));
        }
        let grid = first.grid();
        let snap = |r: f64| grid.r(grid.nearest_node(r).max(1));
        let (probe, probe_half) = (snap(probe), snap(0.5 * probe));
        if probe_half >= probe {
            return Err(Error::InvalidParameter(format!(
                "probe radius {probe} is too close to the axis for this grid"
            )));
        }
        let samples = traj
            .snapshots()
            .iter()
            .map(|p| {
                Ok(EnergySample {
                    t: p.time(),
                    total: total_energy(p)?,
                    inner: energy(p, 0.0, probe)?,
                    inner_half: energy(p, 0.0, probe_half)?,
                    r_half: p.half_angle_radius(),
                    chi: p.chi(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            probe,
            probe_half,
            samples,
            dissipation: traj.dissipation().to_vec(),
            events: traj.events().to_vec(),
        })
    }

    pub fn probe_radius(&self) -> f64 {
        self.probe
    }

    pub fn samples(&self) -> &[EnergySample] {
        &self.samples
    }

    pub fn dissipation(&self) -> &[f64] {
        &self.dissipation
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// First sample at `t` (the left limit at a jump).
    fn index_at(&self, t: f64) -> Option<usize> {
        let tol = 1e-9 * t.abs().max(1.0);
        self.samples.iter().position(|s| (s.t - t).abs() <= tol)
    }

    /// Last sample at `t` (the right limit at a jump).
    fn last_index_at(&self, t: f64) -> Option<usize> {
        let tol = 1e-9 * t.abs().max(1.0);
        self.samples.iter().rposition(|s| (s.t - t).abs() <= tol)
    }

    /// `t,E_total,E_inner,r_half,chi,dissipation_cum`; `r_half` is empty
    /// when the profile never crosses π/2.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,E_total,E_inner,r_half,chi,dissipation_cum\n");
        for (x, d) in self.samples.iter().zip(&self.dissipation) {
            let rh = x.r_half.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(s, "{},{},{},{},{},{}", x.t, x.total, x.inner, rh, x.chi, d);
        }
        s
    }
}

/// Energy lost at a blowup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DropEstimate {
    /// `E` at the last snapshot before the jump of χ.
    pub before: f64,
    /// `E` of the restart profile at the same time.
    pub after: f64,
    /// `before − after`.
    pub measured: f64,
    /// `E_{0,r̃}` just before the jump, i.e. `E(t₁⁻) − E_{r̃,1}(t₁)`, at
    /// `r̃` and `r̃/2`.
    pub probe: [f64; 2],
    pub probe_radii: [f64; 2],
    /// Linear extrapolation of `probe` to `r̃ → 0`.
    pub extrapolated: f64,
}

impl DropEstimate {
    /// `measured ≥ 4 − tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.measured >= 4.0 - tol
    }
}

/// Extrapolates two samples `(x₁, y₁)`, `(x₂, y₂)` linearly to `x = 0`.
fn to_zero(x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    y1 - x1 * (y1 - y2) / (x1 - x2)
}

/// Energy drop across the blowup at `t1`. The trace must hold both limits
/// at `t1`: the axis at 0, then the restart profile with the axis at π.
pub fn energy_drop(trace: &EnergyTrace, t1: f64) -> Result<DropEstimate> {
    let k = trace
        .index_at(t1)
        .filter(|&k| trace.samples[k].chi == 0.0)
        .ok_or_else(|| Error::InvalidTrace(format!("no pre-blowup snapshot at t1 = {t1}")))?;
    let after = trace
        .samples
        .get(k + 1)
        .filter(|s| s.chi != 0.0)
        .ok_or_else(|| Error::InvalidTrace(format!("trace does not continue past t1 = {t1}")))?;
    let pre = trace.samples[k];
    let (r1, r2) = (trace.probe, trace.probe_half);
    Ok(DropEstimate {
        before: pre.total,
        after: after.total,
        measured: pre.total - after.total,
        probe: [pre.inner, pre.inner_half],
        probe_radii: [r1, r2],
        extrapolated: to_zero(r1, pre.inner, r2, pre.inner_half),
    })
}

/// Energy gained at a reinsertion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpEstimate {
    pub base: f64,
    pub after: f64,
    pub jump: f64,
}

impl JumpEstimate {
    pub fn holds(&self, tol: f64) -> bool {
        (self.jump - 4.0).abs() <= tol
    }
}

/// Energy jump at `tau`; `base` is the energy of the base branch there.
///
/// `E` is right-continuous at the reinsertion (the spliced profile is the
/// initial datum of the new segment), so the limit `t ↓ τ` is the right
/// limit stored at `tau` itself, which must have the axis at 0.
pub fn energy_jump(trace: &EnergyTrace, tau: f64, base: f64) -> Result<JumpEstimate> {
    let first = trace
        .last_index_at(tau)
        .map(|k| &trace.samples[k])
        .filter(|s| s.chi == 0.0)
        .ok_or_else(|| Error::InvalidTrace(format!("no reinserted profile at tau = {tau}")))?;
    Ok(JumpEstimate {
        base,
        after: first.total,
        jump: first.total - base,
    })
}

/// `e^{T−s} E(s) − E(T)` for snapshot times `s < T` with no event in
/// `(s, T)`. Events at the ends are allowed: at `s` the right limit is used
/// and at `T` the left limit, both of which belong to the smooth segment.
pub fn gronwall_check(trace: &EnergyTrace, s: f64, t: f64) -> Result<f64> {
    if !(s < t) {
        return Err(Error::InvalidParameter(format!("need s < T, got {s} and {t}")));
    }
    if let Some(e) = trace.events.iter().find(|e| e.time() > s && e.time() < t) {
        return Err(Error::EventInInterval { s, t, event_time: e.time() });
    }
    let missing = |x: f64| Error::InvalidTrace(format!("no snapshot at t = {x}"));
    let es = trace.last_index_at(s).ok_or_else(|| missing(s))?;
    let et = trace.index_at(t).ok_or_else(|| missing(t))?;
    Ok((t - s).exp() * trace.samples[es].total - trace.samples[et].total)
}

/// Splits the trace into maximal runs of sample indices over which the
/// axis value stays fixed, i.e. the smooth pieces between singular times.
pub fn smooth_segments(trace: &EnergyTrace) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..trace.samples.len() {
        if trace.samples[k].chi != trace.samples[k - 1].chi {
            out.push(start..k);
            start = k;
        }
    }
    if !trace.samples.is_empty() {
        out.push(start..trace.samples.len());
    }
    out
}
