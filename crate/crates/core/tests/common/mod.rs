//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Dormand–Prince 5(4) integration of `y' = f(t, y)` from `t0`
/// to `t1`. Returns `None` if the step size collapses.
pub fn rk45<F: Fn(f64, f64) -> f64>(f: F, t0: f64, y0: f64, t1: f64, tol: f64) -> Option<f64> {
    const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let (mut t, mut y) = (t0, y0);
    let mut h = (t1 - t0) / 100.0;
    while t < t1 {
        h = h.min(t1 - t);
        if h < 1e-14 {
            return None;
        }
        let mut k = [0.0; 7];
        for s in 0..7 {
            let ys = y + h * (0..s).map(|j| A[s][j] * k[j]).sum::<f64>();
            k[s] = f(t + C[s] * h, ys);
        }
        let y5 = y + h * (0..7).map(|j| B5[j] * k[j]).sum::<f64>();
        let y4 = y + h * (0..7).map(|j| B4[j] * k[j]).sum::<f64>();
        let err = (y5 - y4).abs();
        let scale = tol * (1.0 + y5.abs());
        if err <= scale {
            t += h;
            y = y5;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * (scale / err).powf(0.2)).clamp(0.1, 5.0) };
        h *= factor;
    }
    Some(y)
}

/// First time the shrinking path `λ' = −δ e^{−2t} λ^ε`, `λ(0) = λ₀`,
/// reaches zero, found by integrating `u = λ^{1−ε}` (which stays smooth)
/// with [`rk45`] and bisecting for the root of `u`.
pub fn vanishing_time_numeric(delta: f64, eps: f64, lambda0: f64) -> f64 {
    // λ' = −δ e^{−2t} λ^ε  ⇔  u' = −(1−ε) δ e^{−2t}
    let rhs = |t: f64, _u: f64| -(1.0 - eps) * delta * (-2.0 * t).exp();
    let u0 = lambda0.powf(1.0 - eps);
    let u = |t: f64| rk45(rhs, 0.0, u0, t, 1e-13).unwrap();
    let mut hi = 1.0;
    while u(hi) > 0.0 {
        hi *= 2.0;
        assert!(hi < 1e3, "path never vanishes");
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if u(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `λ(t)` from integrating `λ' = s δ e^{−2t} λ^ε` directly (`s = ±1`).
pub fn lambda_numeric(delta: f64, eps: f64, lambda0: f64, sign: f64, t: f64) -> f64 {
    rk45(
        |tt, l: f64| sign * delta * (-2.0 * tt).exp() * l.max(0.0).powf(eps),
        0.0,
        lambda0,
        t,
        1e-13,
    )
    .unwrap()
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..200 {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Brute-force `max_s s^{2−ε}/(1+s²)` on a log-spaced grid.
pub fn max_s_brute(eps: f64) -> f64 {
    (0..200_001)
        .map(|k| 10f64.powf(-4.0 + 8.0 * k as f64 / 200_000.0))
        .map(|s| s.powf(2.0 - eps) / (1.0 + s * s))
        .fold(0.0, f64::max)
}

/// `E_{0,R}` of `2 arctan(r/λ)`: `4R²/(λ² + R²)`.
pub fn bubble_energy(lambda: f64, r: f64) -> f64 {
    4.0 * r * r / (lambda * lambda + r * r)
}

/// Simpson's rule on `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Energy over `[r0, 1]` of a profile given with its derivative, by
/// Simpson's rule in `log r`.
pub fn energy_smooth<F: Fn(f64) -> (f64, f64)>(f: F, r0: f64) -> f64 {
    let g = |s: f64| {
        let r = s.exp();
        let (v, d) = f(r);
        (d * d + (v.sin() / r).powi(2)) * r * r
    };
    simpson(g, r0.ln(), 0.0, 20_000)
}

/// Exact parabolic residual `𝓛[f] − f_t` from a jet.
pub fn residual_from_jet(r: f64, value: f64, dr: f64, drr: f64, dt: f64) -> f64 {
    drr + dr / r - (2.0 * value).sin() / (2.0 * r * r) - r * dr - dt
}

/// Residual by centred differences of a closed-form `f(r, t)`.
pub fn residual_fd<F: Fn(f64, f64) -> f64>(f: F, r: f64, t: f64) -> f64 {
    let h = 1e-4 * r;
    let k = 1e-5;
    let v = f(r, t);
    let dr = (f(r + h, t) - f(r - h, t)) / (2.0 * h);
    let drr = (f(r + h, t) - 2.0 * v + f(r - h, t)) / (h * h);
    let dt = if t >= k { (f(r, t + k) - f(r, t - k)) / (2.0 * k) } else { (f(r, t + k) - v) / k };
    residual_from_jet(r, v, dr, drr, dt)
}

/// Minimal parser for the legacy ASCII VTK files written by the exporter.
#[derive(Debug, Default)]
pub struct Vtk {
    pub dims: [usize; 3],
    pub points: Vec<[f64; 3]>,
    pub vectors: Vec<(String, Vec<[f64; 3]>)>,
    pub scalars: Vec<(String, Vec<f64>)>,
}

impl Vtk {
    pub fn vector(&self, name: &str) -> &[[f64; 3]] {
        &self.vectors.iter().find(|(n, _)| n == name).expect(name).1
    }

    pub fn scalar(&self, name: &str) -> &[f64] {
        &self.scalars.iter().find(|(n, _)| n == name).expect(name).1
    }
}

pub fn parse_vtk(text: &str) -> Vtk {
    let mut out = Vtk::default();
    let mut lines = text.lines().peekable();
    let nums = |l: &str| -> Vec<f64> { l.split_whitespace().map(|x| x.parse().unwrap()).collect() };
    while let Some(line) = lines.next() {
        let mut w = line.split_whitespace();
        match w.next() {
            Some("DIMENSIONS") => {
                let d: Vec<usize> = w.map(|x| x.parse().unwrap()).collect();
                out.dims = [d[0], d[1], d[2]];
            }
            Some("POINTS") => {
                let n: usize = w.next().unwrap().parse().unwrap();
                for _ in 0..n {
                    let v = nums(lines.next().unwrap());
                    out.points.push([v[0], v[1], v[2]]);
                }
            }
            Some("VECTORS") => {
                let name = w.next().unwrap().to_string();
                let n = out.points.len();
                let data = (0..n)
                    .map(|_| {
                        let v = nums(lines.next().unwrap());
                        [v[0], v[1], v[2]]
                    })
                    .collect();
                out.vectors.push((name, data));
            }
            Some("SCALARS") => {
                let name = w.next().unwrap().to_string();
                if lines.peek().is_some_and(|l| l.starts_with("LOOKUP_TABLE")) {
                    lines.next();
                }
                let n = out.points.len();
                let data = (0..n).map(|_| nums(lines.next().unwrap())[0]).collect();
                out.scalars.push((name, data));
            }
            _ => {}
        }
    }
    out
}

/// Profiles whose values are multiples of `2⁻⁴⁰` in `[0, 0.8]`, so that
/// adding π is exact.
pub fn dyadic_profile_values(n: usize, seed: u64) -> Vec<f64> {
    let q = 2f64.powi(-40);
    let mut x = seed;
    let mut out = vec![0.0; n + 1];
    for (i, v) in out.iter_mut().enumerate().skip(1) {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let smooth = 0.8 * (PI * i as f64 / (2.0 * n as f64)).sin();
        let noise = ((x >> 33) as f64 / 2f64.powi(31) - 0.5) * 1e-3;
        *v = (((smooth + noise).clamp(0.0, 0.8)) / q).round() * q;
    }
    out
}
