//! Scenario runner: config file, subcommands and exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | ok |
//! | 1 | internal error |
//! | 2 | config invalid |
//! | 3 | certification failed |
//! | 4 | missing artifact |

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;

pub use commands::{
    branch_family, export_fields, simulate, verify_barriers, BarrierReport, ExactCheck, FamilyReport, FixtureCheck,
    SimulateReport, SubsolutionCheck, SupersolutionCheck,
};
pub use config::{check_writable, BarrierSection, GridSection, InitialSection, OutputSection, ScenarioConfig};

#[derive(Debug, Parser)]
#[command(name = "bubbleflow", version, about = "Blowup and bubble reinsertion for the radial director flow")]
pub struct Cli {
    /// Scenario file (TOML with dotted keys); defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output.dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for branch runs and certification scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the base branch through its first blowup.
    Simulate,
    /// Re-certify the barrier fixtures.
    VerifyBarriers,
    /// Run the base branch and the reinsertion family.
    BranchFamily,
    /// Write the VTK field series of one branch.
    ExportFields {
        #[arg(long, default_value_t = 0)]
        branch: usize,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::InvalidInitialData(_) | Error::InvalidGrid(_) => 2,
        Error::CertificationFailed { .. } => 3,
        Error::MissingArtifact(_) => 4,
        Error::Branch { source, .. } => exit_code(source),
        _ => 1,
    }
}

/// Parses `args`, runs the subcommand and returns the exit status.
/// Diagnostics go to stderr, results to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> crate::Result<()> {
    let cfg = match &cli.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    let out = cli.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(Error::Config("--threads must be >= 1".into()));
        }
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match cli.command {
        Command::Simulate => {
            let r = simulate(&cfg, &out)?;
            println!("t1 = {:.6} (detection step {:.2e}; T_lambda = {:.4})", r.t1, r.t1_dt, r.t_lambda);
            println!(
                "energy drop = {:.4} (E {:.4} -> {:.4}; probe extrapolation {:.4})",
                r.drop.measured, r.drop.before, r.drop.after, r.drop.extrapolated
            );
            println!("wrote {}", out.join("branch_0").display());
        }
        Command::VerifyBarriers => {
            let r = verify_barriers(&cfg, &out)?;
            let sub = &r.subsolution;
            let sup = &r.supersolution;
            println!(
                "subsolution   margin {:+.4e} (>= 0)  T_lambda {:.4}",
                sub.check.scan.margin, sub.t_lambda
            );
            println!(
                "supersolution margin {:+.4e} (<= 0)  M(eps) {:.6}  delta_bound {:.6}  cos-theta slack {:+.4}",
                sup.check.scan.margin, sup.max_s_function, sup.delta_bound, sup.theta_cos_bound
            );
            println!("phi_bar       |residual| {:.2e}", r.phi_bar.max_abs_residual);
            println!("wrote {}", out.join("barriers.json").display());
        }
        Command::BranchFamily => {
            let r = branch_family(&cfg, &out)?;
            println!("t1 = {:.6}, t2 = {:.4}, final time {:.4}", r.t1, r.t2.t2, r.final_time);
            print!("{}", r.table());
            println!("wrote {}", out.join("summary.csv").display());
        }
        Command::ExportFields { branch } => {
            let s = export_fields(&cfg, &out, branch)?;
            println!(
                "wrote {} snapshots to {}",
                s.snapshots.len(),
                out.join(format!("branch_{branch}")).join("fields").display()
            );
        }
    }
    Ok(())
}
