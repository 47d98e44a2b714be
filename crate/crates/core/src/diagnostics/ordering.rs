//! Numerical comparison of a trajectory against a barrier.

use serde::{Deserialize, Serialize};

use crate::barriers::BarrierSpec;
use crate::error::{Error, Result};
use crate::evolver::Trajectory;

/// Which side of the barrier the trajectory should stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `φ ≤ g` (g a supersolution).
    Below,
    /// `φ ≥ g` (g a subsolution).
    Above,
}

/// Where and how the barrier is laid over the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OrderingWindow {
    /// Barrier time is `t − time_offset`.
    pub time_offset: f64,
    /// Constant added to the barrier.
    pub lift: f64,
    /// Outer edge of the comparison domain.
    pub r_max: f64,
    /// Allowed mismatch on the axis and outer edges.
    pub edge_tol: f64,
    /// Only snapshots with this axis value are compared, which restricts
    /// the comparison to one smooth piece of a branch.
    pub axis: Option<f64>,
    /// Snapshots after this time are ignored.
    pub t_max: f64,
}

impl Default for OrderingWindow {
    fn default() -> Self {
        Self {
            time_offset: 0.0,
            lift: 0.0,
            r_max: 1.0,
            edge_tol: 1e-9,
            axis: None,
            t_max: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderingReport {
    /// Largest signed violation (positive = wrong side) over interior
    /// nodes of all snapshots after the first compared one.
    pub worst: f64,
    pub r: f64,
    pub t: f64,
    /// Largest violation on the first compared snapshot (the initial edge
    /// of the parabolic boundary); reported, not enforced.
    pub initial: f64,
    pub snapshots: usize,
}

/// Worst violation of `φ ≤ g` or `φ ≥ g` over snapshots whose barrier time
/// lies in the barrier's domain.
///
/// The axis and the node at `r_max` form the lateral boundary: a violation
/// there beyond `edge_tol` is an error naming that edge, since no interior
/// statement follows from a broken boundary ordering.
pub fn ordering_report(
    traj: &Trajectory,
    spec: &BarrierSpec,
    side: Side,
    window: &OrderingWindow,
) -> Result<OrderingReport> {
    let sign = match side {
        Side::Below => 1.0,
        Side::Above => -1.0,
    };
    let mut report = OrderingReport {
        worst: f64::NEG_INFINITY,
        r: f64::NAN,
        t: f64::NAN,
        initial: f64::NEG_INFINITY,
        snapshots: 0,
    };
    let horizon = spec.time_horizon();
    for p in traj.snapshots() {
        let tb = p.time() - window.time_offset;
        if tb < -1e-12 || tb > horizon || p.time() > window.t_max || window.axis.is_some_and(|c| c != p.chi()) {
            continue;
        }
        let tb = tb.max(0.0);
        let grid = p.grid();
        let last = grid.nearest_node(window.r_max).max(1);
        let v = p.values();
        let viol = |i: usize| -> Result<f64> {
            Ok(sign * (v[i] - spec.value(grid.r(i), tb)? - window.lift))
        };
        let first = report.snapshots == 0;
        report.snapshots += 1;
        for (i, edge) in [(0, "axis"), (last, "outer")] {
            let x = viol(i)?;
            if x > window.edge_tol && !first {
                return Err(Error::BoundaryIncompatible { edge, violation: x, t: p.time() });
            }
            if first {
                report.initial = report.initial.max(x);
            }
        }
        for i in 1..last {
            let x = viol(i)?;
            if first {
                report.initial = report.initial.max(x);
            } else if x > report.worst {
                report.worst = x;
                report.r = grid.r(i);
                report.t = p.time();
            }
        }
    }
    if report.snapshots < 2 {
        return Err(Error::InvalidTrace(format!(
            "fewer than two snapshots fall in the time domain of {}",
            spec.name()
        )));
    }
    Ok(report)
}
