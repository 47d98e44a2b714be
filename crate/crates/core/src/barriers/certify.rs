//! Dense-sampling certification of the residual sign of Φ and ψ.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barriers::{delta_bound, theta_cos_bound, BarrierSpec};
use crate::error::{Error, Result};

/// Which sign the residual must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Residual `≥ 0` (family Φ).
    Subsolution,
    /// Residual `≤ 0` (family ψ).
    Supersolution,
}

/// Inclusive range sampled at `steps` evenly spaced points (`steps = 1`
/// means the lower end only).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl ParamRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    pub fn fixed(v: f64) -> Self {
        Self { lo: v, hi: v, steps: 1 }
    }

    fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.lo];
        }
        (0..self.steps)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64)
            .collect()
    }

    fn is_valid(&self) -> bool {
        self.steps >= 1 && self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }
}

/// How `δ` is chosen for each `(μ, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaRule {
    Range(ParamRange),
    /// `δ = fraction · delta_bound(μ, ε)`.
    FractionOfBound(f64),
    /// `δ = factor · 2λ₀^{1−ε}/(1−ε)`, the smallest `δ` for which the
    /// shrinking path exists, scaled up by `factor > 1`.
    MultipleOfMinimum(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub target: Target,
    pub mu: ParamRange,
    pub eps: ParamRange,
    pub delta: DeltaRule,
    /// Ignored for the supersolution.
    pub lambda0: ParamRange,
}

/// `(r, t)` sampling used to certify one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleDensity {
    pub nr: usize,
    pub nt: usize,
    pub r_min: f64,
    /// Outer radius of the scan; the subsolution only has to hold on the
    /// ball where it is compared.
    pub r_max: f64,
    /// Time horizon for families without a natural end time.
    pub t_max: f64,
    /// Local refinement factor around the worst lattice point.
    pub refine: usize,
}

impl Default for SampleDensity {
    fn default() -> Self {
        Self {
            nr: 400,
            nt: 400,
            r_min: 1e-4,
            r_max: 1.0,
            t_max: 3.0,
            refine: 4,
        }
    }
}

/// Outcome of scanning one barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    /// Worst residual: minimum for a subsolution, maximum for a supersolution.
    pub margin: f64,
    pub r: f64,
    pub t: f64,
}

impl ScanResult {
    /// Positive means the sign condition fails.
    fn violation(&self, target: Target) -> f64 {
        match target {
            Target::Subsolution => -self.margin,
            Target::Supersolution => self.margin,
        }
    }
}

/// A certified parameter set as stored in fixture files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub family: Target,
    pub mu: f64,
    pub eps: f64,
    pub delta: f64,
    pub lambda0: f64,
    pub margin: f64,
    pub sample_density: SampleDensity,
}

impl Certificate {
    pub fn spec(&self) -> Result<BarrierSpec> {
        match self.family {
            Target::Subsolution => BarrierSpec::subsolution(self.delta, self.eps, self.lambda0, self.mu),
            Target::Supersolution => BarrierSpec::supersolution(self.delta, self.eps, self.mu),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingArtifact(path.to_path_buf()),
            _ => Error::io(path, e),
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }
}

fn lattice_r(d: &SampleDensity) -> Vec<f64> {
    let (lo, hi) = (d.r_min.ln(), d.r_max.ln());
    let mut rs: Vec<f64> = (0..d.nr)
        .map(|i| (lo + (hi - lo) * i as f64 / (d.nr - 1) as f64).exp())
        .collect();
    rs[d.nr - 1] = d.r_max;
    rs
}

fn lattice_t(t_end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| t_end * j as f64 / (n - 1) as f64).collect()
}

fn worse(a: ScanResult, b: ScanResult, target: Target) -> ScanResult {
    if b.violation(target) > a.violation(target) {
        b
    } else {
        a
    }
}

/// Worst residual of `spec` over the lattice plus a local refinement.
pub fn scan_residual(spec: &BarrierSpec, target: Target, d: &SampleDensity) -> Result<ScanResult> {
    if d.nr < 2 || d.nt < 2 || !(d.r_min > 0.0 && d.r_min < d.r_max && d.r_max <= 1.0) || d.refine == 0 {
        return Err(Error::InvalidParameter(format!("bad sample density {d:?}")));
    }
    let t_end = match spec.time_horizon() {
        h if h.is_finite() => h,
        _ => d.t_max,
    };
    let rs = lattice_r(d);
    let ts = lattice_t(t_end, d.nt);
    let eval = |r: f64, t: f64| -> Result<ScanResult> {
        Ok(ScanResult {
            margin: spec.residual(r, t)?,
            r,
            t,
        })
    };

    let mut worst = eval(rs[0], ts[0])?;
    let (mut wi, mut wj) = (0, 0);
    for (i, &r) in rs.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            let s = eval(r, t)?;
            if s.violation(target) > worst.violation(target) {
                worst = s;
                (wi, wj) = (i, j);
            }
        }
    }

    // Refine over the neighbouring lattice cells.
    let (r0, r1) = (rs[wi.saturating_sub(1)], rs[(wi + 1).min(d.nr - 1)]);
    let (t0, t1) = (ts[wj.saturating_sub(1)], ts[(wj + 1).min(d.nt - 1)]);
    let m = 2 * d.refine + 1;
    for a in 0..m {
        let r = r0 * (r1 / r0).powf(a as f64 / (m - 1) as f64);
        for b in 0..m {
            let t = t0 + (t1 - t0) * b as f64 / (m - 1) as f64;
            worst = worse(worst, eval(r, t)?, target);
        }
    }
    Ok(worst)
}

/// Whether a scan result satisfies the sign condition (up to `tol`).
pub fn is_certified(result: &ScanResult, target: Target, tol: f64) -> bool {
    result.violation(target) <= tol
}

/// Sign tolerance for rounding in the residual evaluation.
pub const SIGN_TOL: f64 = 1e-10;

/// Searches the box for a parameter set whose residual has the required
/// sign everywhere on the sample. Among certified candidates the one with
/// the largest slack wins; ties go to the first in box order.
pub fn certify_parameters(sbox: &SearchBox, density: &SampleDensity) -> Result<Certificate> {
    certify_parameters_with(sbox, density, |_| true)
}

/// As [`certify_parameters`], with an extra admissibility filter applied to
/// each candidate before scanning (e.g. domination of the initial data).
pub fn certify_parameters_with<F>(
    sbox: &SearchBox,
    density: &SampleDensity,
    admissible: F,
) -> Result<Certificate>
where
    F: Fn(&BarrierSpec) -> bool + Sync,
{
    let ranges_ok = sbox.mu.is_valid()
        && sbox.eps.is_valid()
        && (sbox.target == Target::Supersolution || sbox.lambda0.is_valid())
        && match sbox.delta {
            DeltaRule::Range(r) => r.is_valid(),
            DeltaRule::FractionOfBound(f) => f > 0.0,
            DeltaRule::MultipleOfMinimum(f) => f > 1.0,
        };
    if !ranges_ok {
        return Err(Error::InvalidParameter(format!("empty or invalid search box {sbox:?}")));
    }

    let mut candidates = Vec::new();
    for &mu in &sbox.mu.values() {
        for &eps in &sbox.eps.values() {
            let lambdas = match sbox.target {
                Target::Subsolution => sbox.lambda0.values(),
                Target::Supersolution => vec![0.0],
            };
            for &lambda0 in &lambdas {
                let deltas = match sbox.delta {
                    DeltaRule::Range(r) => r.values(),
                    DeltaRule::FractionOfBound(f) => vec![f * delta_bound(mu, eps)?],
                    DeltaRule::MultipleOfMinimum(f) => {
                        vec![f * 2.0 * lambda0.powf(1.0 - eps) / (1.0 - eps)]
                    }
                };
                for &delta in &deltas {
                    candidates.push((mu, eps, delta, lambda0));
                }
            }
        }
    }

    let target = sbox.target;
    let outcomes: Vec<Option<(f64, ScanResult)>> = candidates
        .par_iter()
        .map(|&(mu, eps, delta, lambda0)| {
            let spec = match target {
                Target::Subsolution => BarrierSpec::subsolution(delta, eps, lambda0, mu),
                Target::Supersolution => BarrierSpec::supersolution(delta, eps, mu),
            }
            .ok()?;
            if !admissible(&spec) {
                return None;
            }
            let scan = scan_residual(&spec, target, density).ok()?;
            let mut violation = scan.violation(target);
            if target == Target::Supersolution {
                // The ψ construction also needs cos θ ≥ 1/(1+ε).
                let bound = theta_cos_bound(mu, eps).ok()?;
                if bound < 0.0 {
                    violation = violation.max(-bound);
                }
            }
            Some((violation, scan))
        })
        .collect();

    let mut best: Option<(usize, f64, ScanResult)> = None;
    for (k, o) in outcomes.iter().enumerate() {
        if let Some((v, scan)) = *o {
            if best.is_none_or(|(_, bv, _)| v < bv) {
                best = Some((k, v, scan));
            }
        }
    }
    match best {
        Some((k, v, scan)) if v <= SIGN_TOL => {
            let (mu, eps, delta, lambda0) = candidates[k];
            Ok(Certificate {
                family: target,
                mu,
                eps,
                delta,
                lambda0,
                margin: scan.margin,
                sample_density: *density,
            })
        }
        Some((_, v, _)) => Err(Error::CertificationFailed {
            reason: format!("no candidate in the box satisfies the {target:?} sign condition"),
            best_margin: v,
        }),
        None => Err(Error::CertificationFailed {
            reason: "no admissible candidate in the box".into(),
            best_margin: f64::INFINITY,
        }),
    }
}
