//! Certifies the barrier parameters shipped in `fixtures/` and writes the
//! certificates to the directory given as the first argument (default
//! `fixtures`).
//!
//! The subsolution must also start below the default initial data.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use bubbleflow::barriers::{
    certify_parameters, certify_parameters_with, delta_bound, max_s_function, DeltaRule, ParamRange, SampleDensity,
    SearchBox, Target,
};
use bubbleflow::evolver::{initial_profile, inspect_initial, InitialDataSpec};
use bubbleflow::radial::build_grid;

fn main() -> bubbleflow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).map_err(|e| bubbleflow::Error::Config(e.to_string()))?;

    let grid = Arc::new(build_grid(2000, 2.0)?);
    let data = initial_profile(&InitialDataSpec::new(1.9 * PI, 0.5 * PI)?, grid)?;

    // Φ only has to hold on the ball r ≤ 1/2 where it is compared.
    let sub_box = SearchBox {
        target: Target::Subsolution,
        mu: ParamRange::fixed(1.1),
        eps: ParamRange::fixed(0.6),
        delta: DeltaRule::MultipleOfMinimum(1.01),
        lambda0: ParamRange::fixed(0.11),
    };
    let sub_density = SampleDensity { r_max: 0.5, ..SampleDensity::default() };
    let sub = certify_parameters_with(&sub_box, &sub_density, |spec| {
        inspect_initial(&data, Some(spec))
            .ok()
            .and_then(|r| r.dominated())
            .unwrap_or(false)
    })?;
    println!(
        "subsolution   mu={} eps={} delta={:.6} lambda0={} margin={:+.4e}",
        sub.mu, sub.eps, sub.delta, sub.lambda0, sub.margin
    );
    sub.save(&dir.join("subsolution.json"))?;

    let sup_box = SearchBox {
        target: Target::Supersolution,
        mu: ParamRange::fixed(10.0),
        eps: ParamRange::fixed(0.4),
        delta: DeltaRule::FractionOfBound(0.5),
        lambda0: ParamRange::fixed(0.0),
    };
    let sup = certify_parameters(&sup_box, &SampleDensity::default())?;
    println!(
        "supersolution mu={} eps={} delta={:.6} margin={:+.4e}  (M(eps)={:.6}, delta_bound={:.6})",
        sup.mu,
        sup.eps,
        sup.delta,
        sup.margin,
        max_s_function(sup.eps)?,
        delta_bound(sup.mu, sup.eps)?
    );
    sup.save(&dir.join("supersolution.json"))?;
    Ok(())
}
