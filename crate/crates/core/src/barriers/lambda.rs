use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which way the bubble scale moves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `λ' = −δ e^{−2t} λ^ε`, `λ(0) = λ₀ > 0`; reaches zero at `T_λ`.
    Shrinking { lambda0: f64 },
    /// `λ' = δ e^{−2t} λ^ε`, `λ(0) = 0`.
    Growing,
}

/// Bubble scale `λ(t)` solving `λ' = ∓δ e^{−2t} λ^ε` in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaPath {
    direction: Direction,
    delta: f64,
    eps: f64,
}

fn check_common(delta: f64, eps: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("delta must be > 0, got {delta}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

impl LambdaPath {
    pub fn shrinking(delta: f64, eps: f64, lambda0: f64) -> Result<Self> {
        check_common(delta, eps)?;
        let lhs = 2.0 * lambda0.powf(1.0 - eps);
        let rhs = delta * (1.0 - eps);
        if !(lambda0 > 0.0) || !(lhs < rhs) {
            return Err(Error::InvalidParameter(format!(
                "shrinking path needs 0 < 2 lambda0^(1-eps) < delta (1-eps); got {lhs} vs {rhs}"
            )));
        }
        Ok(Self {
            direction: Direction::Shrinking { lambda0 },
            delta,
            eps,
        })
    }

    pub fn growing(delta: f64, eps: f64) -> Result<Self> {
        check_common(delta, eps)?;
        Ok(Self {
            direction: Direction::Growing,
            delta,
            eps,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn lambda0(&self) -> f64 {
        match self.direction {
            Direction::Shrinking { lambda0 } => lambda0,
            Direction::Growing => 0.0,
        }
    }

    /// `δ(1−ε)(1−e^{−2t})/2`, the change of `λ^{1−ε}` over `[0, t]`.
    fn increment(&self, t: f64) -> f64 {
        0.5 * self.delta * (1.0 - self.eps) * -(-2.0 * t).exp_m1()
    }

    /// `T_λ` for a shrinking path, `+∞` for a growing one.
    pub fn vanishing_time(&self) -> f64 {
        match self.direction {
            Direction::Shrinking { lambda0 } => {
                let a = self.delta * (1.0 - self.eps);
                let b = 2.0 * lambda0.powf(1.0 - self.eps);
                // ½ ln(a / (a − b)) = −½ ln(1 − b/a)
                -0.5 * (-b / a).ln_1p()
            }
            Direction::Growing => f64::INFINITY,
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be >= 0, got {t}")));
        }
        let p = 1.0 / (1.0 - self.eps);
        match self.direction {
            Direction::Growing => Ok(self.increment(t).powf(p)),
            Direction::Shrinking { lambda0 } => {
                let tv = self.vanishing_time();
                if t > tv * (1.0 + 1e-12) {
                    return Err(Error::PathVanished {
                        t,
                        vanishing_time: tv,
                    });
                }
                let base = lambda0.powf(1.0 - self.eps) - self.increment(t);
                Ok(base.max(0.0).powf(p))
            }
        }
    }

    /// `λ'(t)` from the ODE right-hand side.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let lam = self.value(t)?;
        let rate = self.delta * (-2.0 * t).exp() * lam.powf(self.eps);
        Ok(match self.direction {
            Direction::Shrinking { .. } => -rate,
            Direction::Growing => rate,
        })
    }
}

/// `λ(t)` of the path.
pub fn lambda_value(path: &LambdaPath, t: f64) -> Result<f64> {
    path.value(t)
}

/// Closed-form first time a shrinking path reaches zero.
pub fn first_vanishing_time(path: &LambdaPath) -> Result<f64> {
    match path.direction {
        Direction::Shrinking { .. } => Ok(path.vanishing_time()),
        Direction::Growing => Err(Error::InvalidParameter(
            "a growing path never vanishes".into(),
        )),
    }
}
