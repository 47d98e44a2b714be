use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{bubble_reinsertion, default_r_n, find_t2, T2Report, DEFAULT_CONE_SLOPE, DEFAULT_GAMMA};
use crate::diagnostics::{
    cap_energy, energy, energy_drop, energy_jump, total_energy, DropEstimate, EnergyTrace, JumpEstimate,
};
use crate::error::{Error, Result};
use crate::evolver::{continue_past_blowup, run_until, Event, SolverConfig, Trajectory};
use crate::radial::AngleProfile;

/// What to run after the initial data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilyPlan {
    /// Give up if no blowup happens before this time.
    pub blowup_horizon: f64,
    /// The base branch runs to `t₁ + post_horizon`.
    pub post_horizon: f64,
    /// Family branches run to `τ_max + family_span`, the common final time.
    /// Every family branch relaxes to the same equilibrium, so distances
    /// between them decay once all bubbles have spread out.
    pub family_span: f64,
    /// Reinsertion times as offsets from `t₂`, each moved to the nearest
    /// snapshot time. Written `tau_list` in config files.
    #[serde(rename = "tau_list")]
    pub tau_offsets: Vec<f64>,
    /// Bubble radius; `None` means [`default_r_n`].
    pub r_n: Option<f64>,
    pub cone_slope: f64,
    pub gamma: f64,
    /// Probe radius `r̃` of the energy traces.
    pub probe_radius: f64,
}

impl Default for FamilyPlan {
    fn default() -> Self {
        Self {
            blowup_horizon: 1.0,
            post_horizon: 3.0,
            family_span: 0.2,
            tau_offsets: vec![0.0, 0.5],
            r_n: None,
            cone_slope: DEFAULT_CONE_SLOPE,
            gamma: DEFAULT_GAMMA,
            probe_radius: 0.05,
        }
    }
}

impl FamilyPlan {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.blowup_horizon > 0.0) {
            return bad(format!("blowup_horizon must be > 0, got {}", self.blowup_horizon));
        }
        if !(self.post_horizon >= 2.0) {
            return bad(format!(
                "post_horizon must be at least 2 to establish t2, got {}",
                self.post_horizon
            ));
        }
        if !(self.family_span > 0.0) {
            return bad(format!("family_span must be > 0, got {}", self.family_span));
        }
        if self.tau_offsets.iter().any(|&x| !(x >= 0.0)) {
            return bad("tau offsets must be >= 0 (tau >= t2)".into());
        }
        if self.tau_offsets.windows(2).any(|w| w[1] <= w[0]) {
            return bad("tau offsets must increase strictly".into());
        }
        if let Some(r) = self.r_n {
            if !(r > 0.0 && r <= 0.25) {
                return bad(format!("r_n must lie in (0, 1/4], got {r}"));
            }
        }
        if !(self.cone_slope > 0.0) {
            return bad(format!("cone_slope must be > 0, got {}", self.cone_slope));
        }
        if !(self.probe_radius > 0.0 && self.probe_radius < 0.5) {
            return bad(format!("probe_radius must lie in (0, 1/2), got {}", self.probe_radius));
        }
        Ok(())
    }
}

/// `E_{0,r_n}` of the reinserted profile against `2(1 − cos φ̃(r_n, τ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapCheck {
    pub quadrature: f64,
    pub identity: f64,
}

/// One weak-solution branch.
#[derive(Debug, Clone)]
pub struct BranchRecord {
    /// 0 for the base branch, `k + 1` for the k-th reinsertion time.
    pub id: usize,
    pub tau: Option<f64>,
    pub r_n: Option<f64>,
    pub trajectory: Trajectory,
    pub energy: EnergyTrace,
    pub jump: Option<JumpEstimate>,
    pub cap: Option<CapCheck>,
}

/// The base branch and its reinsertion family.
#[derive(Debug, Clone)]
pub struct FamilyRun {
    pub base: BranchRecord,
    pub family: Vec<BranchRecord>,
    pub t1: f64,
    /// Step size at detection: the blowup lies in `[t₁ − dt, t₁]`.
    pub t1_dt: f64,
    pub drop: DropEstimate,
    pub t2: T2Report,
    /// Common final time of the family, where distances are measured.
    pub final_time: f64,
}

impl FamilyRun {
    pub fn branches(&self) -> impl Iterator<Item = &BranchRecord> {
        std::iter::once(&self.base).chain(&self.family)
    }

    pub fn branch(&self, id: usize) -> Option<&BranchRecord> {
        self.branches().find(|b| b.id == id)
    }
}

/// Runs to the first blowup, continues with the axis at π, and returns the
/// base trajectory with `t₁` and the detection step.
pub fn run_base(initial: &AngleProfile, solver: &SolverConfig, plan: &FamilyPlan) -> Result<(Trajectory, f64, f64)> {
    let mut traj = run_until(initial, plan.blowup_horizon, solver)?;
    let Some(Event::Blowup { t: t1, dt, .. }) = traj.blowup() else {
        return Err(Error::InvalidTrace(format!(
            "no blowup before t = {}; raise alpha or blowup_horizon",
            plan.blowup_horizon
        )));
    };
    let restart = continue_past_blowup(&mut traj, solver)?;
    let post = run_until(&restart, t1 + plan.post_horizon, solver)?;
    traj.append(post)?;
    Ok((traj, t1, dt))
}

/// Spawns the branch reinserting a bubble of radius `r_n` at `tau` (a
/// snapshot time of `base`) and runs it to `t_end`.
pub fn spawn_branch(
    base: &Trajectory,
    id: usize,
    tau: f64,
    r_n: f64,
    t_end: f64,
    solver: &SolverConfig,
    probe: f64,
) -> Result<BranchRecord> {
    let k = base
        .snapshot_index(tau, 0.0)
        .ok_or_else(|| Error::InvalidParameter(format!("tau = {tau} is not a snapshot time")))?;
    let at_tau = &base.snapshots()[k];
    if at_tau.chi() != PI {
        return Err(Error::InvalidParameter(format!("the axis is not at pi at tau = {tau}")));
    }
    let spliced = bubble_reinsertion(at_tau, r_n)?;
    let cap = CapCheck {
        quadrature: energy(&spliced, 0.0, r_n)?,
        identity: cap_energy(at_tau.value_at(r_n)),
    };
    // The reinserted cap is a small bubble by construction; the detector
    // would fire on it at once.
    let quiet = SolverConfig { detect_blowup: false, ..solver.clone() };
    let segment = run_until(&spliced, t_end, &quiet)?;
    let mut traj = base.prefix(tau);
    traj.push_event(Event::Reinsertion { t: tau, r_n })?;
    traj.push_event(Event::BoundaryJump { t: tau, chi_old: PI, chi_new: 0.0 })?;
    traj.append(segment)?;
    let trace = EnergyTrace::from_trajectory(&traj, probe)?;
    let jump = energy_jump(&trace, tau, total_energy(at_tau)?)?;
    Ok(BranchRecord {
        id,
        tau: Some(tau),
        r_n: Some(r_n),
        trajectory: traj,
        energy: trace,
        jump: Some(jump),
        cap: Some(cap),
    })
}

/// The whole construction: base branch, `t₂`, and one branch per
/// reinsertion time. Family branches run concurrently and are returned in
/// order of their id.
pub fn orchestrate(initial: &AngleProfile, solver: &SolverConfig, plan: &FamilyPlan) -> Result<FamilyRun> {
    plan.validate()?;
    let (traj, t1, t1_dt) = run_base(initial, solver, plan).map_err(|e| e.in_branch(0))?;
    let trace = EnergyTrace::from_trajectory(&traj, plan.probe_radius)?;
    let drop = energy_drop(&trace, t1)?;
    let t2 = find_t2(&traj, plan.cone_slope, plan.gamma)?;
    let base_end = traj.last().map_or(t1, |p| p.time());
    let grid = initial.grid();
    let r_n = match plan.r_n {
        Some(r) => grid.r(grid.nearest_node(r)),
        None => default_r_n(grid),
    };

    let times = traj.times();
    let mut taus = Vec::with_capacity(plan.tau_offsets.len());
    for off in &plan.tau_offsets {
        let want = t2.t2 + off;
        let k = times.partition_point(|&t| t < want);
        let tau = match (k.checked_sub(1).map(|j| times[j]), times.get(k)) {
            (Some(a), Some(&b)) if want - a < b - want && a >= t2.t2 => a,
            (_, Some(&b)) => b,
            _ => f64::NAN,
        };
        taus.push(tau);
    }
    let final_time = taus.last().map_or(base_end, |t| t + plan.family_span);
    if !(final_time <= base_end) {
        return Err(Error::Config(format!(
            "family ends at {final_time}, after the base branch ({base_end}); raise post_horizon"
        )));
    }
    let family = taus
        .par_iter()
        .enumerate()
        .map(|(k, &tau)| {
            spawn_branch(&traj, k + 1, tau, r_n, final_time, solver, plan.probe_radius)
                .map_err(|e| e.in_branch(k + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let base = BranchRecord {
        id: 0,
        tau: None,
        r_n: None,
        trajectory: traj,
        energy: trace,
        jump: None,
        cap: None,
    };
    Ok(FamilyRun {
        base,
        family,
        t1,
        t1_dt,
        drop,
        t2,
        final_time,
    })
}
