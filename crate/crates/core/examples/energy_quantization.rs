//! Energy of harmonic bubbles and of a spliced cap on the graded grid.
//!
//!     cargo run --release --example energy_quantization -- 2000

use std::f64::consts::PI;
use std::sync::Arc;

use bubbleflow::branching::bubble_reinsertion;
use bubbleflow::diagnostics::{cap_energy, energy, total_energy};
use bubbleflow::radial::{build_grid, AngleProfile};

fn main() -> bubbleflow::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let grid = Arc::new(build_grid(n, 2.0)?);

    println!("{:>8} {:>14} {:>14} {:>10}", "lambda", "E", "4/(1+l^2)", "error");
    for lambda in [1e-1, 1e-2, 1e-3, 1e-4] {
        let p = AngleProfile::from_fn(grid.clone(), 0.0, |r| 2.0 * (r / lambda).atan())?;
        let e = total_energy(&p)?;
        let exact = 4.0 / (1.0 + lambda * lambda);
        println!("{lambda:>8.0e} {e:>14.10} {exact:>14.10} {:>10.2e}", e - exact);
    }

    // A bubble spliced into a profile with the axis at π: the inner part
    // carries the cap energy 2(1 - cos θ).
    let r_n = grid.r(grid.nearest_node(0.05));
    let theta = 2.0;
    let base = AngleProfile::from_fn(grid.clone(), 0.0, |r| PI - (PI - theta) * r / r_n)?;
    let spliced = bubble_reinsertion(&base, r_n)?;
    println!(
        "cap at r_n = {r_n:.5}, theta = {theta}: E = {:.8}, 2(1 - cos theta) = {:.8}",
        energy(&spliced, 0.0, r_n)?,
        cap_energy(theta)
    );
    Ok(())
}
