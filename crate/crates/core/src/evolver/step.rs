//! One linearly implicit θ-step of the drift heat flow.
//!
//! Diffusion uses the flux form `(1/r)(r φ_r)_r` and the drift `−r φ_r` a
//! backward (upwind) difference, which together give an M-matrix. The sine
//! term is linearised about the current level, but only the stabilising
//! (negative) part of its Jacobian `−cos(2φ)/r²` goes on the diagonal; the
//! rest stays explicit. A full Newton diagonal would lose dominance
//! whenever `dt > r²` at a node with `cos 2φ < 0`, which near the axis
//! means steps far below any usable size while a collapsed core unwinds.

use crate::error::{Error, Result};
use crate::radial::{AngleProfile, RadialGrid};

/// Off-diagonal couplings `(lower, upper)` of the linear part at node `i`.
fn couplings(grid: &RadialGrid, i: usize) -> (f64, f64) {
    let (rm, r, rp) = (grid.r(i - 1), grid.r(i), grid.r(i + 1));
    let (hm, hp) = (r - rm, rp - r);
    let hbar = 0.5 * (hm + hp);
    let diff_m = 0.5 * (rm + r) / (r * hbar * hm);
    let diff_p = 0.5 * (r + rp) / (r * hbar * hp);
    (diff_m + r / hm, diff_p)
}

/// Solves a tridiagonal system; `lower[0]` and `upper[n-1]` are unused.
/// Fails when a row is not weakly diagonally dominant with a positive pivot.
pub(crate) fn thomas(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    dt: f64,
) -> Result<Vec<f64>> {
    let n = diag.len();
    for i in 0..n {
        let off = if i > 0 { lower[i].abs() } else { 0.0 } + if i + 1 < n { upper[i].abs() } else { 0.0 };
        if !(diag[i] > 0.0 && diag[i] >= off) {
            return Err(Error::SolveFailed { row: i, dt });
        }
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - lower[i] * c[i - 1];
        if !(m > 0.0) {
            return Err(Error::SolveFailed { row: i, dt });
        }
        c[i] = if i + 1 < n { upper[i] / m } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Advances `profile` by `dt` with axis value `chi` and the outer value
/// held at `profile.beta()`.
///
/// `theta = 1` is backward Euler; `theta = 1/2` treats the linear part with
/// Crank–Nicolson weights.
pub fn step(profile: &AngleProfile, dt: f64, chi: f64, theta: f64) -> Result<AngleProfile> {
    step_impl(profile, dt, chi, theta, None)
}

/// As [`step`] with an extra source term `f_i` evaluated at the new time
/// level (used for manufactured-solution tests).
pub fn step_with_source(
    profile: &AngleProfile,
    dt: f64,
    chi: f64,
    theta: f64,
    source: &[f64],
) -> Result<AngleProfile> {
    if source.len() != profile.values().len() {
        return Err(Error::InvalidProfile(format!(
            "source has {} entries, expected {}",
            source.len(),
            profile.values().len()
        )));
    }
    step_impl(profile, dt, chi, theta, Some(source))
}

fn step_impl(
    profile: &AngleProfile,
    dt: f64,
    chi: f64,
    theta: f64,
    source: Option<&[f64]>,
) -> Result<AngleProfile> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
    }
    let grid = profile.grid();
    let phi = profile.values();
    let n = grid.intervals();
    let beta = profile.beta();

    // Work with x = φ − χ so that the equilibria φ ≡ χ stay bitwise fixed
    // and sin(2φ) = sin(2x) needs no reduction.
    let x: Vec<f64> = phi.iter().map(|v| v - chi).collect();
    let x_out = beta - chi;

    let mut lower = vec![0.0; n + 1];
    let mut diag = vec![1.0; n + 1];
    let mut upper = vec![0.0; n + 1];
    let mut rhs = vec![0.0; n + 1];

    for i in 1..n {
        let r = grid.r(i);
        let (l, u) = couplings(grid, i);
        // The axis entry of row 1 is the new χ, i.e. x = 0.
        let left = if i == 1 { 0.0 } else { x[i - 1] };
        let lin = l * (left - x[i]) + u * (x[i + 1] - x[i]);
        let g = -(2.0 * x[i]).sin() / (2.0 * r * r);
        let jac = (-(2.0 * x[i]).cos() / (r * r)).min(0.0);

        lower[i] = -theta * dt * l;
        upper[i] = -theta * dt * u;
        diag[i] = 1.0 + theta * dt * (l + u) - theta * dt * jac;
        let mut b = x[i] + dt * ((1.0 - theta) * lin + g - theta * jac * x[i]);
        if let Some(f) = source {
            b += dt * f[i];
        }
        rhs[i] = b;
    }
    // Known boundary values move to the right-hand side (x = 0 on the axis).
    lower[1] = 0.0;
    rhs[n - 1] -= upper[n - 1] * x_out;
    upper[n - 1] = 0.0;

    let interior = thomas(&lower[1..n], &diag[1..n], &upper[1..n], &rhs[1..n], dt)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(chi);
    values.extend(interior.iter().map(|v| v + chi));
    values.push(beta);
    AngleProfile::new(profile.grid_arc().clone(), values, profile.time() + dt)
}
