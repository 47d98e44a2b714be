use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::AngleProfile;

/// Something that happens at a single instant of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    /// Detector fired at `t`; the true blowup time lies in `[t − dt, t]`.
    Blowup { t: f64, dt: f64, r_half: f64 },
    BoundaryJump { t: f64, chi_old: f64, chi_new: f64 },
    Reinsertion { t: f64, r_n: f64 },
}

impl Event {
    pub fn time(&self) -> f64 {
        match *self {
            Event::Blowup { t, .. } | Event::BoundaryJump { t, .. } | Event::Reinsertion { t, .. } => t,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Event::Blowup { .. } => "blowup",
            Event::BoundaryJump { .. } => "boundary_jump",
            Event::Reinsertion { .. } => "reinsertion",
        }
    }
}

/// Snapshots of one solution branch together with its events.
///
/// `dissipation[k]` is `∫₀^{t_k} ∫ φ_t² r dr dt` accumulated step by step
/// up to snapshot `k`.
///
/// Times increase strictly except at a jump of the axis value, where the
/// left and right limits are both stored under the same time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    snapshots: Vec<AngleProfile>,
    dissipation: Vec<f64>,
    events: Vec<Event>,
}

impl Trajectory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshots(&self) -> &[AngleProfile] {
        &self.snapshots
    }

    pub fn dissipation(&self) -> &[f64] {
        &self.dissipation
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.time()).collect()
    }

    pub fn last(&self) -> Option<&AngleProfile> {
        self.snapshots.last()
    }

    pub fn last_dissipation(&self) -> f64 {
        self.dissipation.last().copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    /// Appends a snapshot; times must increase strictly unless the axis
    /// value changes.
    pub fn push(&mut self, profile: AngleProfile, dissipation: f64) -> Result<()> {
        if let Some(last) = self.snapshots.last() {
            let jump = profile.time() == last.time() && profile.chi() != last.chi();
            if !(profile.time() > last.time() || jump) {
                return Err(Error::InvalidTrace(format!(
                    "snapshot time {} does not follow {}",
                    profile.time(),
                    last.time()
                )));
            }
        }
        self.snapshots.push(profile);
        self.dissipation.push(dissipation);
        Ok(())
    }

    /// Appends an event; events must be time ordered.
    pub fn push_event(&mut self, event: Event) -> Result<()> {
        if let Some(last) = self.events.last() {
            if event.time() < last.time() {
                return Err(Error::InvalidTrace(format!(
                    "event at {} precedes the previous one at {}",
                    event.time(),
                    last.time()
                )));
            }
        }
        self.events.push(event);
        Ok(())
    }

    /// Appends a later segment. A first snapshot of `other` identical in
    /// time and axis value to the current end is dropped; one with a
    /// different axis value is kept as the right limit of the jump.
    /// Dissipation is offset so it stays cumulative.
    pub fn append(&mut self, other: Trajectory) -> Result<()> {
        let offset = self.last_dissipation();
        let end = self.last().map(|p| (p.time(), p.chi()));
        for (p, d) in other.snapshots.into_iter().zip(other.dissipation) {
            if end.is_some_and(|(t, chi)| p.time() == t && p.chi() == chi) {
                continue;
            }
            self.push(p, d + offset)?;
        }
        for e in other.events {
            self.push_event(e)?;
        }
        Ok(())
    }

    /// Copy of the snapshots with `t ≤ t_cut` and the events up to `t_cut`.
    /// At a jump exactly at `t_cut` both limits are kept.
    pub fn prefix(&self, t_cut: f64) -> Trajectory {
        let k = self.snapshots.partition_point(|s| s.time() <= t_cut);
        Trajectory {
            snapshots: self.snapshots[..k].to_vec(),
            dissipation: self.dissipation[..k].to_vec(),
            events: self.events.iter().copied().filter(|e| e.time() <= t_cut).collect(),
        }
    }

    /// Index of the first snapshot whose time is within `tol` of `t` (the
    /// left limit at a jump).
    pub fn snapshot_index(&self, t: f64, tol: f64) -> Option<usize> {
        let k = self.snapshots.partition_point(|s| s.time() < t - tol);
        (k < self.snapshots.len() && (self.snapshots[k].time() - t).abs() <= tol).then_some(k)
    }

    pub fn blowup(&self) -> Option<Event> {
        self.events.iter().copied().find(|e| matches!(e, Event::Blowup { .. }))
    }

    pub fn blowup_time(&self) -> Option<f64> {
        self.blowup().map(|e| e.time())
    }

    /// Times of all events, ascending.
    pub fn event_times(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.time()).collect()
    }
}
