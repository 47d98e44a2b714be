//! Scalar parameter bounds for the supersolution family.

use crate::error::{Error, Result};

fn check(mu: f64, eps: f64, eps_max: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must be > 0, got {mu}")));
    }
    if !(eps > 0.0 && eps <= eps_max) {
        return Err(Error::InvalidParameter(format!("eps out of range: {eps}")));
    }
    Ok(())
}

/// `min cos θ − 1/(1+ε)` over the domain; θ is largest at `(r, t) = (1, 0)`.
pub fn theta_cos_bound(mu: f64, eps: f64) -> Result<f64> {
    check(mu, eps, 1.0)?;
    let m2 = mu * mu;
    Ok((m2 - 1.0) / (m2 + 1.0) - 1.0 / (1.0 + eps))
}

/// Maximiser `s*` of `s^{2−ε}/(1+s²)`.
pub fn max_s_argmax(eps: f64) -> Result<f64> {
    check(1.0, eps, 1.0)?;
    Ok(((2.0 - eps) / eps).sqrt())
}

/// `M(ε) = max_{s>0} s^{2−ε}/(1+s²)`. `ε = 1` is accepted for testing.
pub fn max_s_function(eps: f64) -> Result<f64> {
    let s = max_s_argmax(eps)?;
    Ok(s.powf(2.0 - eps) / (1.0 + s * s))
}

/// Largest `δ` with `δ s^{2−ε}/(1+s²) ≤ με/(μ²+1)` for every `s > 0`.
pub fn delta_bound(mu: f64, eps: f64) -> Result<f64> {
    check(mu, eps, 1.0)?;
    Ok(mu * eps / (max_s_function(eps)? * (mu * mu + 1.0)))
}
