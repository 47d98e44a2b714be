//! Compares the base branch with the shipped subsolution and with the
//! explicit supersolution φ̄ for two shifts.
//!
//!     cargo run --release --example ordering -- 500

use std::path::Path;

use bubbleflow::barriers::BarrierSpec;
use bubbleflow::branching::run_base;
use bubbleflow::cli::ScenarioConfig;
use bubbleflow::diagnostics::{ordering_report, OrderingWindow, Side};

fn main() -> bubbleflow::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let cfg = ScenarioConfig::from_toml(&format!("grid.N = {n}\n"), Path::new("."))?;
    let p0 = cfg.initial_profile()?;
    let (base, t1, _) = run_base(&p0, &cfg.solver, &cfg.branch)?;
    let h = p0.grid().max_spacing();
    println!("t1 = {t1:.5}, h^2 = {:.2e}; positive violations mean the wrong side", h * h);

    let sub = cfg.subsolution()?.spec()?;
    let w = OrderingWindow { r_max: 0.5, axis: Some(0.0), ..Default::default() };
    println!("subsolution (below data): {:?}", ordering_report(&base, &sub, Side::Above, &w)?);
    for sigma in [cfg.barriers.phi_bar_sigma, 1.0] {
        let bar = BarrierSpec::phi_bar(sigma)?;
        let rep = ordering_report(&base, &bar, Side::Below, &OrderingWindow::default())?;
        println!("phi_bar sigma = {sigma}: worst {:+.3e} at r = {:.4}, t = {:.4}", rep.worst, rep.r, rep.t);
    }
    Ok(())
}
