//! Closed-form barrier families and their exact parabolic residuals.
//!
//! Every family is built from two profiles with known spatial equations:
//! the bubble `b = 2 arctan(r/L(t))`, which satisfies
//! `b_rr + b_r/r = sin(2b)/(2r²)`, and the cap `c = 2 arctan(r^a / K(t))`,
//! which satisfies `c_rr + c_r/r = a² sin(2c)/(2r²)`. Combining those
//! identities gives the tension of `b ± c` without differentiating
//! numerically.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::barriers::lambda::LambdaPath;
use crate::error::{Error, Result};
use crate::radial::cubic_remainder;

/// A barrier family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BarrierSpec {
    /// `2 arctan(r/(λ(t)e^t)) + 2 arctan(r^{1+ε}/(μ e^t))` on a shrinking path.
    SubsolutionPhi { path: LambdaPath, mu: f64 },
    /// `2 arctan(r/(e^t λ̄(t))) − 2 arctan(r^{1+ε}/(e^{(1+ε)t} μ))` on a growing path.
    SupersolutionPsi { path: LambdaPath, mu: f64 },
    /// `2 arctan(r/(σ e^t)) + π`, an exact solution.
    ShiftedBubblePhiBar { sigma: f64 },
    /// `π + l(γ − t) r e^{−t} − l r² e^{−2t}`.
    QuadraticCapG { l: f64, gamma: f64 },
    /// `2 arctan(r/μ*)`, time independent.
    SmallBubblePsiStar { mu_star: f64 },
    /// `π − slope · r`.
    ConePiMinusEpsR { slope: f64 },
}

/// Which inequality a barrier is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierKind {
    Subsolution,
    Supersolution,
}

/// Value and exact derivatives of a barrier at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub dr: f64,
    pub drr: f64,
    pub dt: f64,
}

/// `2 arctan(r / L)` with `L = scale · e^{rate·t}`.
#[derive(Debug, Clone, Copy)]
struct Bubble {
    l: f64,
    /// `L − L_t`; the transport `b_t + r b_r` equals `2r(L − L_t)/(L² + r²)`.
    l_minus_lt: f64,
    lt: f64,
}

impl Bubble {
    fn from_path(path: &LambdaPath, t: f64) -> Result<Self> {
        let lam = path.value(t)?;
        let dlam = path.derivative(t)?;
        let et = t.exp();
        let l = lam * et;
        Ok(Self {
            l,
            l_minus_lt: -dlam * et,
            lt: (dlam + lam) * et,
        })
    }

    fn fixed_scale(sigma: f64, t: f64, grows: bool) -> Self {
        if grows {
            let l = sigma * t.exp();
            Self { l, l_minus_lt: 0.0, lt: l }
        } else {
            Self { l: sigma, l_minus_lt: sigma, lt: 0.0 }
        }
    }

    fn value(&self, r: f64) -> f64 {
        if self.l == 0.0 {
            PI
        } else {
            2.0 * (r / self.l).atan()
        }
    }

    fn transport(&self, r: f64) -> f64 {
        let l = self.l;
        2.0 * r * self.l_minus_lt / (l * l + r * r)
    }

    fn jet(&self, r: f64) -> Jet {
        let l = self.l;
        let d = l * l + r * r;
        if l == 0.0 {
            return Jet { value: PI, dr: 0.0, drr: 0.0, dt: 0.0 };
        }
        Jet {
            value: self.value(r),
            dr: 2.0 * l / d,
            drr: -4.0 * l * r / (d * d),
            dt: -2.0 * r * self.lt / d,
        }
    }
}

/// `2 arctan(r^a / K)` with `K = μ e^{k t}`.
#[derive(Debug, Clone, Copy)]
struct Cap {
    a: f64,
    k: f64,
    mu: f64,
    t: f64,
}

impl Cap {
    fn u(&self, r: f64) -> f64 {
        r.powf(self.a) / (self.mu * (self.k * self.t).exp())
    }

    fn value(&self, r: f64) -> f64 {
        2.0 * self.u(r).atan()
    }

    /// `c_t + r c_r = (a − k) sin c`.
    fn transport(&self, r: f64) -> f64 {
        (self.a - self.k) * self.value(r).sin()
    }

    fn jet(&self, r: f64) -> Jet {
        let u = self.u(r);
        let den = 1.0 + u * u;
        let ur = self.a * u / r;
        let urr = self.a * (self.a - 1.0) * u / (r * r);
        Jet {
            value: 2.0 * u.atan(),
            dr: 2.0 * ur / den,
            drr: 2.0 * urr / den - 4.0 * u * ur * ur / (den * den),
            dt: -2.0 * self.k * u / den,
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
    }
}

impl BarrierSpec {
    pub fn subsolution(delta: f64, eps: f64, lambda0: f64, mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(Self::SubsolutionPhi {
            path: LambdaPath::shrinking(delta, eps, lambda0)?,
            mu,
        })
    }

    pub fn supersolution(delta: f64, eps: f64, mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(Self::SupersolutionPsi {
            path: LambdaPath::growing(delta, eps)?,
            mu,
        })
    }

    pub fn phi_bar(sigma: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        Ok(Self::ShiftedBubblePhiBar { sigma })
    }

    pub fn quadratic_cap(l: f64, gamma: f64) -> Result<Self> {
        check_positive("l", l)?;
        if !(gamma > 1.0 && gamma < 3f64.ln()) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (1, ln 3), got {gamma}"
            )));
        }
        Ok(Self::QuadraticCapG { l, gamma })
    }

    pub fn psi_star(mu_star: f64) -> Result<Self> {
        check_positive("mu_star", mu_star)?;
        Ok(Self::SmallBubblePsiStar { mu_star })
    }

    pub fn cone(slope: f64) -> Result<Self> {
        check_positive("slope", slope)?;
        Ok(Self::ConePiMinusEpsR { slope })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SubsolutionPhi { .. } => "subsolution_phi",
            Self::SupersolutionPsi { .. } => "supersolution_psi",
            Self::ShiftedBubblePhiBar { .. } => "shifted_bubble_phi_bar",
            Self::QuadraticCapG { .. } => "quadratic_cap_g",
            Self::SmallBubblePsiStar { .. } => "small_bubble_psi_star",
            Self::ConePiMinusEpsR { .. } => "cone_pi_minus_eps_r",
        }
    }

    /// The inequality the family is constructed to satisfy.
    pub fn kind(&self) -> BarrierKind {
        match self {
            Self::SubsolutionPhi { .. } => BarrierKind::Subsolution,
            // The cone is listed with the supersolutions but its residual
            // has the subsolution sign near the axis; callers read the sign
            // off `barrier_residual` instead of trusting this tag.
            _ => BarrierKind::Supersolution,
        }
    }

    /// Latest admissible time, `T_λ` for the subsolution.
    pub fn time_horizon(&self) -> f64 {
        match self {
            Self::SubsolutionPhi { path, .. } => path.vanishing_time(),
            _ => f64::INFINITY,
        }
    }

    fn check_domain(&self, r: f64, t: f64) -> Result<()> {
        let ok = (0.0..=1.0).contains(&r) && t >= 0.0 && t <= self.time_horizon() * (1.0 + 1e-12);
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                family: self.name(),
                r,
                t,
            })
        }
    }

    fn cap(&self, t: f64) -> Option<Cap> {
        match *self {
            Self::SubsolutionPhi { path, mu } => Some(Cap { a: 1.0 + path.eps(), k: 1.0, mu, t }),
            Self::SupersolutionPsi { path, mu } => {
                let a = 1.0 + path.eps();
                Some(Cap { a, k: a, mu, t })
            }
            _ => None,
        }
    }

    fn bubble(&self, t: f64) -> Result<Option<Bubble>> {
        Ok(match *self {
            Self::SubsolutionPhi { path, .. } | Self::SupersolutionPsi { path, .. } => {
                Some(Bubble::from_path(&path, t)?)
            }
            Self::ShiftedBubblePhiBar { sigma } => Some(Bubble::fixed_scale(sigma, t, true)),
            Self::SmallBubblePsiStar { mu_star } => Some(Bubble::fixed_scale(mu_star, t, false)),
            _ => None,
        })
    }

    /// Sign attached to the cap: `+1` for Φ, `−1` for ψ.
    fn cap_sign(&self) -> f64 {
        match self {
            Self::SupersolutionPsi { .. } => -1.0,
            _ => 1.0,
        }
    }

    /// Closed-form value at `(r, t)`.
    pub fn value(&self, r: f64, t: f64) -> Result<f64> {
        self.check_domain(r, t)?;
        Ok(match *self {
            Self::QuadraticCapG { l, gamma } => {
                PI + l * (gamma - t) * r * (-t).exp() - l * r * r * (-2.0 * t).exp()
            }
            Self::ConePiMinusEpsR { slope } => PI - slope * r,
            Self::ShiftedBubblePhiBar { .. } => {
                PI + self.bubble(t)?.map_or(0.0, |b| b.value(r))
            }
            _ => {
                let b = self.bubble(t)?.map_or(0.0, |b| b.value(r));
                let c = self.cap(t).map_or(0.0, |c| c.value(r));
                b + self.cap_sign() * c
            }
        })
    }

    /// Value with exact first/second radial and first time derivatives.
    pub fn jet(&self, r: f64, t: f64) -> Result<Jet> {
        self.check_domain(r, t)?;
        if r == 0.0 {
            return Err(Error::OutOfDomain { family: self.name(), r, t });
        }
        Ok(match *self {
            Self::QuadraticCapG { l, gamma } => {
                let (e1, e2) = ((-t).exp(), (-2.0 * t).exp());
                Jet {
                    value: self.value(r, t)?,
                    dr: l * (gamma - t) * e1 - 2.0 * l * r * e2,
                    drr: -2.0 * l * e2,
                    dt: -l * r * e1 * (1.0 + gamma - t) + 2.0 * l * r * r * e2,
                }
            }
            Self::ConePiMinusEpsR { slope } => Jet {
                value: PI - slope * r,
                dr: -slope,
                drr: 0.0,
                dt: 0.0,
            },
            _ => {
                let mut jet = self
                    .bubble(t)?
                    .map(|b| b.jet(r))
                    .unwrap_or(Jet { value: 0.0, dr: 0.0, drr: 0.0, dt: 0.0 });
                if matches!(self, Self::ShiftedBubblePhiBar { .. }) {
                    jet.value += PI;
                }
                if let Some(cap) = self.cap(t) {
                    let s = self.cap_sign();
                    let c = cap.jet(r);
                    jet.value += s * c.value;
                    jet.dr += s * c.dr;
                    jet.drr += s * c.drr;
                    jet.dt += s * c.dt;
                }
                jet
            }
        })
    }

    /// `𝓛[f] − f_t` at `(r, t)`, `r > 0`; `≥ 0` for a subsolution, `≤ 0` for
    /// a supersolution.
    pub fn residual(&self, r: f64, t: f64) -> Result<f64> {
        self.check_domain(r, t)?;
        if r == 0.0 {
            return Err(Error::OutOfDomain { family: self.name(), r, t });
        }
        Ok(match *self {
            Self::QuadraticCapG { l, gamma } => {
                let h = l * (gamma - t) * r * (-t).exp() - l * r * r * (-2.0 * t).exp();
                -3.0 * l * (-2.0 * t).exp() + cubic_remainder(h) / (r * r) + l * r * (-t).exp()
            }
            Self::ConePiMinusEpsR { slope } => {
                -cubic_remainder(slope * r) / (r * r) + slope * r
            }
            _ => {
                let bubble = self.bubble(t)?;
                let b = bubble.map_or(0.0, |b| b.value(r));
                let mut tension = 0.0;
                let mut transport = bubble.map_or(0.0, |b| b.transport(r));
                if let Some(cap) = self.cap(t) {
                    let s = self.cap_sign();
                    let c = cap.value(r);
                    let a2 = cap.a * cap.a;
                    tension = s * c.sin() / (r * r) * (a2 * c.cos() - (2.0 * b + s * c).cos());
                    transport += s * cap.transport(r);
                }
                tension - transport
            }
        })
    }
}

/// Closed-form value of the barrier.
pub fn barrier_value(spec: &BarrierSpec, r: f64, t: f64) -> Result<f64> {
    spec.value(r, t)
}

/// Exact parabolic residual `𝓛[f] − f_t`.
pub fn barrier_residual(spec: &BarrierSpec, r: f64, t: f64) -> Result<f64> {
    spec.residual(r, t)
}

/// Slope `κ` such that `g(r, t*) ≤ π − κ r` on `[0, 1]` at
/// `t* = (γ + ln 3)/2`, where the quadratic cap has turned below π.
pub fn quadratic_cap_cone_slope(l: f64, gamma: f64) -> f64 {
    let ts = 0.5 * (gamma + 3f64.ln());
    l * (ts - gamma) * (-ts).exp()
}

/// Matches the growing/shrinking direction to the expected family.

#[cfg(test)]
mod tests {
    use super::*;

    fn psi() -> BarrierSpec {
        let delta = 0.5 * crate::barriers::delta_bound(20.0, 0.5).unwrap();
        BarrierSpec::supersolution(delta, 0.5, 20.0).unwrap()
    }

    #[test]
    fn psi_axis_limits() {
        let s = psi();
        assert!((s.value(1e-12, 0.0).unwrap() - PI).abs() < 1e-9);
        assert!(s.value(1e-15, 0.5).unwrap().abs() < 1e-9);
        assert_eq!(s.value(0.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn phi_bar_at_sigma() {
        let s = BarrierSpec::phi_bar(0.3).unwrap();
        assert!((s.value(0.3, 0.0).unwrap() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn phi_bar_residual_vanishes() {
        for sigma in [1e-3, 0.05, 1.0, 40.0] {
            let s = BarrierSpec::phi_bar(sigma).unwrap();
            for &r in &[1e-4, 0.01, 0.3, 1.0] {
                for &t in &[0.0, 0.4, 2.5] {
                    assert!(s.residual(r, t).unwrap().abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn domain_checks() {
        let s = BarrierSpec::subsolution(1.0, 0.5, 1.0 / 64.0, 1.0).unwrap();
        assert!(s.value(0.5, 0.1).is_ok());
        assert!(matches!(s.value(0.5, 1.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(s.value(1.5, 0.1), Err(Error::OutOfDomain { .. })));
        assert!(s.residual(0.0, 0.1).is_err());
        assert!(BarrierSpec::quadratic_cap(0.1, 1.2).is_err());
    }

    #[test]
    fn cone_residual_has_subsolution_sign() {
        let c = BarrierSpec::cone(0.1).unwrap();
        for &r in &[1e-3, 0.1, 1.0] {
            let res = c.residual(r, 0.0).unwrap();
            let lead = 0.1 * r * (1.0 - 2.0 * 0.01 / 3.0);
            assert!(res > 0.0 && (res - lead).abs() < 1e-4 * r, "{r}: {res}");
        }
    }

    #[test]
    fn psi_star_is_supersolution() {
        let s = BarrierSpec::psi_star(0.05).unwrap();
        for &r in &[1e-4, 0.1, 1.0] {
            assert!(s.residual(r, 1.0).unwrap() < 0.0);
        }
    }

    #[test]
    fn quadratic_cap_turns_below_pi() {
        let (l, gamma) = (0.1, 1.05);
        let slope = quadratic_cap_cone_slope(l, gamma);
        let g = BarrierSpec::quadratic_cap(l, gamma).unwrap();
        let ts = 0.5 * (gamma + 3f64.ln());
        assert!(slope > 0.0);
        for k in 0..=100 {
            let r = k as f64 / 100.0;
            assert!(g.value(r, ts).unwrap() <= PI - slope * r + 1e-15);
        }
        assert!(g.value(1.0, 0.0).unwrap() > PI);
    }
}
