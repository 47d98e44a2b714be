use serde::Serialize;

use crate::branching::BranchRecord;
use crate::error::{Error, Result};
use crate::evolver::Trajectory;

/// Distance between two branches at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchDistance {
    pub sup: f64,
    /// `(∫ |a − b|² r dr)^{1/2}`.
    pub l2: f64,
}

/// Nodal values at `t`, linearly interpolated between snapshots. Fails at a
/// time carrying both limits of a jump and across any event.
fn values_at(traj: &Trajectory, t: f64, branch: usize) -> Result<Vec<f64>> {
    let s = traj.snapshots();
    let k = s.partition_point(|p| p.time() < t);
    if k < s.len() && s[k].time() == t {
        if s.get(k + 1).is_some_and(|q| q.time() == t) {
            return Err(Error::InterpolationAcrossEvent { t, branch });
        }
        return Ok(s[k].values().to_vec());
    }
    if k == 0 || k == s.len() {
        return Err(Error::InvalidParameter(format!(
            "t = {t} is outside the span of branch {branch}"
        )));
    }
    let (p, q) = (&s[k - 1], &s[k]);
    let gap = traj.events().iter().any(|e| e.time() > p.time() && e.time() < q.time());
    if gap || p.chi() != q.chi() {
        return Err(Error::InterpolationAcrossEvent { t, branch });
    }
    let w = (t - p.time()) / (q.time() - p.time());
    Ok(p.values()
        .iter()
        .zip(q.values())
        .map(|(a, b)| a + w * (b - a))
        .collect())
}

pub fn branch_distance(a: &BranchRecord, b: &BranchRecord, t: f64) -> Result<BranchDistance> {
    let va = values_at(&a.trajectory, t, a.id)?;
    let vb = values_at(&b.trajectory, t, b.id)?;
    let grid = a
        .trajectory
        .snapshots()
        .first()
        .ok_or_else(|| Error::InvalidTrace("empty branch".into()))?
        .grid();
    if va.len() != vb.len() {
        return Err(Error::InvalidParameter("branches live on different grids".into()));
    }
    let mut sup: f64 = 0.0;
    let mut sq = 0.0;
    for ((x, y), w) in va.iter().zip(&vb).zip(grid.weights()) {
        let d = (x - y).abs();
        sup = sup.max(d);
        sq += d * d * w;
    }
    Ok(BranchDistance { sup, l2: sq.sqrt() })
}
