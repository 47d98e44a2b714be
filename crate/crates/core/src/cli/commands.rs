use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::barriers::{
    certify_parameters, certify_parameters_with, delta_bound, max_s_function, scan_residual, theta_cos_bound,
    BarrierSpec, Certificate, DeltaRule, ParamRange, SampleDensity, ScanResult, SearchBox, Target,
};
use crate::branching::{orchestrate, run_base, write_family, BranchManifest, T2Report};
use crate::cli::{check_writable, ScenarioConfig};
use crate::diagnostics::{energy_drop, DropEstimate, EnergyTrace};
use crate::error::{Error, Result};
use crate::evolver::{inspect_initial, read_profiles, write_file, write_trajectory, InitialReport, SCHEMA_VERSION};
use crate::field3d::{export_vtk, FieldSeries};

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_file(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn branch_dir(out: &Path, id: usize) -> PathBuf {
    out.join(format!("branch_{id}"))
}

/// Contents of `simulate.json`.
#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub schema_version: u32,
    pub t1: f64,
    /// Detection step: the blowup lies in `[t1 − t1_dt, t1]`.
    pub t1_dt: f64,
    /// Vanishing time of the certified subsolution's path.
    pub t_lambda: f64,
    pub blowups: usize,
    pub final_time: f64,
    pub drop: DropEstimate,
    pub initial: InitialReport,
}

/// Runs the base branch (blowup, continuation with the axis at π) and writes
/// it to `out/branch_0/` together with `simulate.json`.
pub fn simulate(cfg: &ScenarioConfig, out: &Path) -> Result<SimulateReport> {
    cfg.validate()?;
    check_writable(out)?;
    let sub = cfg.subsolution()?.spec()?;
    let initial = cfg.initial_profile()?;
    let initial_report = inspect_initial(&initial, Some(&sub))?;

    let (traj, t1, t1_dt) = run_base(&initial, &cfg.solver, &cfg.branch).map_err(|e| e.in_branch(0))?;
    let trace = EnergyTrace::from_trajectory(&traj, cfg.branch.probe_radius)?;
    let drop = energy_drop(&trace, t1)?;

    let dir = branch_dir(out, 0);
    write_trajectory(&traj, &cfg.solver, &dir)?;
    write_file(&dir.join("energy.csv"), &trace.to_csv())?;
    let report = SimulateReport {
        schema_version: SCHEMA_VERSION,
        t1,
        t1_dt,
        t_lambda: sub.time_horizon(),
        blowups: traj.events().iter().filter(|e| e.kind() == "blowup").count(),
        final_time: traj.last().map_or(t1, |p| p.time()),
        drop,
        initial: initial_report,
    };
    write_json(&out.join("simulate.json"), &report)?;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureCheck {
    pub certificate: Certificate,
    /// Worst residual over the certificate's sample.
    pub scan: ScanResult,
    pub certified: bool,
    /// Best violation when the check failed.
    pub best_margin: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsolutionCheck {
    #[serde(flatten)]
    pub check: FixtureCheck,
    /// Vanishing time `T_λ` of the shrinking path.
    pub t_lambda: f64,
    /// `max (Φ(·, 0) − φ₀)` on `[0, 1/2]`.
    pub domination_gap: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupersolutionCheck {
    #[serde(flatten)]
    pub check: FixtureCheck,
    pub theta_cos_bound: f64,
    pub max_s_function: f64,
    pub delta_bound: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExactCheck {
    pub sigma: f64,
    pub max_abs_residual: f64,
}

/// Contents of `barriers.json`.
#[derive(Debug, Clone, Serialize)]
pub struct BarrierReport {
    pub schema_version: u32,
    pub subsolution: SubsolutionCheck,
    pub supersolution: SupersolutionCheck,
    pub phi_bar: ExactCheck,
}

impl BarrierReport {
    pub fn passed(&self) -> bool {
        self.subsolution.check.certified && self.supersolution.check.certified
    }
}

fn point_box(c: &Certificate) -> SearchBox {
    SearchBox {
        target: c.family,
        mu: ParamRange::fixed(c.mu),
        eps: ParamRange::fixed(c.eps),
        delta: DeltaRule::Range(ParamRange::fixed(c.delta)),
        lambda0: ParamRange::fixed(c.lambda0),
    }
}

fn fixture_check(c: Certificate, outcome: Result<Certificate>) -> Result<FixtureCheck> {
    let scan = scan_residual(&c.spec()?, c.family, &c.sample_density)?;
    let (certified, best_margin, failure) = match outcome {
        Ok(_) => (true, None, None),
        Err(Error::CertificationFailed { reason, best_margin }) => (false, Some(best_margin), Some(reason)),
        Err(e) => return Err(e),
    };
    Ok(FixtureCheck {
        certificate: c,
        scan,
        certified,
        best_margin,
        failure,
    })
}

/// Re-certifies both fixtures on their own samples, checks the exact
/// solution `φ̄`, and writes `barriers.json`. Fails with
/// [`Error::CertificationFailed`] (after writing the report) when either
/// fixture does not hold.
pub fn verify_barriers(cfg: &ScenarioConfig, out: &Path) -> Result<BarrierReport> {
    cfg.validate()?;
    check_writable(out)?;
    let (sub, sup) = (cfg.subsolution()?, cfg.supersolution()?);
    let initial = cfg.initial_profile()?;

    let sub_outcome = certify_parameters_with(&point_box(&sub), &sub.sample_density, |spec| {
        inspect_initial(&initial, Some(spec))
            .ok()
            .and_then(|r| r.dominated())
            .unwrap_or(false)
    });
    let sub_spec = sub.spec()?;
    let subsolution = SubsolutionCheck {
        check: fixture_check(sub, sub_outcome)?,
        t_lambda: sub_spec.time_horizon(),
        domination_gap: inspect_initial(&initial, Some(&sub_spec))?.domination_gap,
    };

    let sup_outcome = certify_parameters(&point_box(&sup), &sup.sample_density);
    let supersolution = SupersolutionCheck {
        check: fixture_check(sup, sup_outcome)?,
        theta_cos_bound: theta_cos_bound(sup.mu, sup.eps)?,
        max_s_function: max_s_function(sup.eps)?,
        delta_bound: delta_bound(sup.mu, sup.eps)?,
    };

    let sigma = cfg.barriers.phi_bar_sigma;
    let bar = BarrierSpec::phi_bar(sigma)?;
    let density = SampleDensity::default();
    let hi = scan_residual(&bar, Target::Supersolution, &density)?.margin;
    let lo = scan_residual(&bar, Target::Subsolution, &density)?.margin;
    let report = BarrierReport {
        schema_version: SCHEMA_VERSION,
        subsolution,
        supersolution,
        phi_bar: ExactCheck {
            sigma,
            max_abs_residual: hi.abs().max(lo.abs()),
        },
    };

    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    write_json(&out.join("barriers.json"), &report)?;
    for check in [&report.subsolution.check, &report.supersolution.check] {
        if !check.certified {
            return Err(Error::CertificationFailed {
                reason: format!(
                    "{:?} fixture: {}",
                    check.certificate.family,
                    check.failure.as_deref().unwrap_or("sign condition fails")
                ),
                best_margin: check.best_margin.unwrap_or(f64::NAN),
            });
        }
    }
    Ok(report)
}

/// Contents of `family.json`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub schema_version: u32,
    pub t1: f64,
    pub t1_dt: f64,
    pub drop: DropEstimate,
    pub t2: T2Report,
    pub final_time: f64,
    pub branches: Vec<BranchManifest>,
}

impl FamilyReport {
    /// Plain-text table of τ, jump and final distances.
    pub fn table(&self) -> String {
        let mut s = String::from("branch        tau      jump");
        for b in &self.branches {
            let _ = write!(s, "   d(.,{})", b.branch_id);
        }
        s.push('\n');
        for b in &self.branches {
            let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
            let _ = write!(
                s,
                "{:>6} {:>10} {:>9}",
                b.branch_id,
                opt(b.tau),
                opt(b.jump_estimate.map(|j| j.jump))
            );
            for d in &b.final_distances {
                let _ = write!(s, " {:>9.4}", d.distance.sup);
            }
            s.push('\n');
        }
        s
    }
}

/// Runs the base branch and one reinsertion branch per τ, writing
/// `out/branch_<id>/`, `summary.csv` and `family.json`.
pub fn branch_family(cfg: &ScenarioConfig, out: &Path) -> Result<FamilyReport> {
    cfg.validate()?;
    check_writable(out)?;
    if cfg.branch.tau_offsets.is_empty() {
        return Err(Error::Config("branch.tau_list is empty".into()));
    }
    let run = orchestrate(&cfg.initial_profile()?, &cfg.solver, &cfg.branch)?;
    let branches = write_family(&run, &cfg.solver, out)?;
    let report = FamilyReport {
        schema_version: SCHEMA_VERSION,
        t1: run.t1,
        t1_dt: run.t1_dt,
        drop: run.drop,
        t2: run.t2,
        final_time: run.final_time,
        branches,
    };
    write_json(&out.join("family.json"), &report)?;
    Ok(report)
}

/// Reconstructs `(u, d, P)` for every stored snapshot of branch `id` and
/// writes the VTK series to `out/branch_<id>/fields/`.
pub fn export_fields(cfg: &ScenarioConfig, out: &Path, id: usize) -> Result<FieldSeries> {
    cfg.validate()?;
    let dir = branch_dir(out, id);
    let profiles = read_profiles(&dir)?;
    check_writable(&dir)?;
    export_vtk(&profiles, &cfg.fields, &dir.join("fields"))
}
