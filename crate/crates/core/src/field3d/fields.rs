use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::{radial_derivative, radial_operator, AngleProfile};

/// Fields at one point of `B¹ × [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub position: [f64; 3],
    pub u: [f64; 3],
    pub d: [f64; 3],
    pub p: f64,
}

/// The straining flow `u = (x, y, −2z)`; it does not depend on time.
pub fn velocity(x: f64, y: f64, z: f64) -> [f64; 3] {
    [x, y, -2.0 * z]
}

/// `∂ₓu₁ + ∂ᵧu₂ + ∂_z u₃` of [`velocity`].
pub fn velocity_divergence() -> f64 {
    1.0 + 1.0 - 2.0
}

/// `d = (sin φ x/r, sin φ y/r, cos φ)` with `φ` interpolated linearly; on
/// the axis `(0, 0, cos χ)`.
pub fn director(profile: &AngleProfile, x: f64, y: f64) -> [f64; 3] {
    let r = x.hypot(y);
    if r == 0.0 {
        return [0.0, 0.0, profile.chi().cos()];
    }
    let phi = profile.value_at(r.min(1.0));
    let (s, c) = phi.sin_cos();
    [s * x / r, s * y / r, c]
}

/// `φ_t` at every node: the backward difference from `prev` when it lies on
/// the same smooth segment, otherwise the value the equation assigns,
/// `𝓛[φ]`.
pub fn time_derivative(prev: Option<&AngleProfile>, cur: &AngleProfile) -> Vec<f64> {
    match prev {
        Some(p) if p.chi() == cur.chi() && cur.time() > p.time() => {
            let dt = cur.time() - p.time();
            p.values()
                .iter()
                .zip(cur.values())
                .map(|(a, b)| (b - a) / dt)
                .collect()
        }
        _ => radial_operator(cur),
    }
}

/// Radial part `Q(r)` of the pressure at the nodes of one snapshot,
/// gauged so that `Q(0) = 0`.
///
/// `Q = −∫₀^r (φ_rr + φ_r/r − sin 2φ/(2r²)) φ_r dr − r²/2`, with the
/// bracket replaced through the equation by `φ_t + rφ_r`, which is regular
/// at the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureProfile {
    nodes: Vec<f64>,
    q: Vec<f64>,
}

impl PressureProfile {
    pub fn new(profile: &AngleProfile, phi_t: &[f64]) -> Result<Self> {
        let grid = profile.grid();
        if phi_t.len() != grid.len() {
            return Err(Error::InvalidProfile(format!(
                "phi_t has {} entries, expected {}",
                phi_t.len(),
                grid.len()
            )));
        }
        let dphi = radial_derivative(profile);
        let f: Vec<f64> = (0..grid.len())
            .map(|i| (phi_t[i] + grid.r(i) * dphi[i]) * dphi[i])
            .collect();
        let mut q = vec![0.0; grid.len()];
        let mut acc = 0.0;
        for i in 1..grid.len() {
            acc += 0.5 * (f[i - 1] + f[i]) * grid.spacing(i - 1);
            let r = grid.r(i);
            q[i] = -acc - 0.5 * r * r;
        }
        Ok(Self {
            nodes: grid.nodes().to_vec(),
            q,
        })
    }

    /// `Q(r)`, linearly interpolated.
    pub fn radial(&self, r: f64) -> f64 {
        let r = r.clamp(0.0, 1.0);
        let k = self.nodes.partition_point(|&x| x <= r).clamp(1, self.nodes.len() - 1);
        let (a, b) = (self.nodes[k - 1], self.nodes[k]);
        let s = (r - a) / (b - a);
        self.q[k - 1] + s * (self.q[k] - self.q[k - 1])
    }

    /// `P(r, z) = Q(r) − 2z²` (both gauge constants zero).
    pub fn at(&self, r: f64, z: f64) -> f64 {
        self.radial(r) - 2.0 * z * z
    }
}

/// `P(r, z)` for one snapshot; `phi_t` is required.
pub fn pressure(profile: &AngleProfile, phi_t: Option<&[f64]>, r: f64, z: f64) -> Result<f64> {
    let phi_t = phi_t.ok_or_else(|| Error::InvalidParameter("pressure needs phi_t".into()))?;
    Ok(PressureProfile::new(profile, phi_t)?.at(r, z))
}
