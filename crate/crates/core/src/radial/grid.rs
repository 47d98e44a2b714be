use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest accepted number of intervals.
pub const MIN_INTERVALS: usize = 16;

/// Graded mesh on `[0, 1]` with nodes `r_i = (i/N)^q`.
///
/// Quadrature weights integrate against the measure `r dr` with the
/// trapezoid rule, which is exact for linear integrands and keeps every
/// weight positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    grading: f64,
    weights: Vec<f64>,
}

impl RadialGrid {
    /// Builds the graded grid with `intervals + 1` nodes.
    pub fn new(intervals: usize, grading: f64) -> Result<Self> {
        if intervals < MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_INTERVALS} intervals, got {intervals}"
            )));
        }
        if !(grading >= 1.0) || !grading.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "grading exponent must be >= 1, got {grading}"
            )));
        }
        let n = intervals as f64;
        let mut nodes: Vec<f64> = (0..=intervals)
            .map(|i| (i as f64 / n).powf(grading))
            .collect();
        nodes[0] = 0.0;
        nodes[intervals] = 1.0;

        let mut weights = vec![0.0; intervals + 1];
        for (i, w) in nodes.windows(2).enumerate() {
            let h = w[1] - w[0];
            weights[i] += 0.5 * h * w[0];
            weights[i + 1] += 0.5 * h * w[1];
        }
        Ok(Self {
            nodes,
            grading,
            weights,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Trapezoid weights for `∫ f(r) r dr`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    /// Number of intervals `N` (there are `N + 1` nodes).
    pub fn intervals(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Width of interval `i`, i.e. `r_{i+1} - r_i`.
    pub fn spacing(&self, i: usize) -> f64 {
        self.nodes[i + 1] - self.nodes[i]
    }

    pub fn axis_spacing(&self) -> f64 {
        self.nodes[1]
    }

    pub fn max_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    pub fn min_spacing(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Index of the node equal to `r` (relative tolerance 1e-12), if any.
    pub fn node_index(&self, r: f64) -> Option<usize> {
        let tol = 1e-12 * r.abs().max(1e-300);
        let i = self.nodes.partition_point(|&x| x < r - tol);
        (i < self.nodes.len() && (self.nodes[i] - r).abs() <= tol).then_some(i)
    }

    /// Smallest node index with `r_i >= r`.
    pub fn first_node_at_or_above(&self, r: f64) -> usize {
        self.nodes
            .partition_point(|&x| x < r)
            .min(self.nodes.len() - 1)
    }

    /// Index of the node closest to `r`.
    pub fn nearest_node(&self, r: f64) -> usize {
        let i = self.first_node_at_or_above(r);
        if i > 0 && (r - self.nodes[i - 1]) < (self.nodes[i] - r) {
            i - 1
        } else {
            i
        }
    }

    /// Locates the interval containing `r` and the linear weight of its right end.
    pub fn locate(&self, r: f64) -> (usize, f64) {
        let r = r.clamp(0.0, 1.0);
        let j = self.nodes.partition_point(|&x| x <= r);
        let i = j.saturating_sub(1).min(self.nodes.len() - 2);
        let h = self.spacing(i);
        (i, ((r - self.nodes[i]) / h).clamp(0.0, 1.0))
    }

    /// Linear interpolation of nodal `values` at `r`.
    pub fn interpolate(&self, values: &[f64], r: f64) -> f64 {
        let (i, s) = self.locate(r);
        values[i] * (1.0 - s) + values[i + 1] * s
    }
}

/// Builds the graded grid `r_i = (i/N)^q`.
pub fn build_grid(intervals: usize, grading: f64) -> Result<RadialGrid> {
    RadialGrid::new(intervals, grading)
}

/// Approximates `∫_0^1 f(r) r dr` from nodal samples.
pub fn weighted_integral(grid: &RadialGrid, samples: &[f64]) -> Result<f64> {
    if samples.len() != grid.len() {
        return Err(Error::InvalidProfile(format!(
            "expected {} samples, got {}",
            grid.len(),
            samples.len()
        )));
    }
    let mut sum = 0.0;
    for (node, (&f, &w)) in samples.iter().zip(grid.weights()).enumerate() {
        if !f.is_finite() {
            return Err(Error::NonFiniteSample {
                node,
                r: grid.r(node),
            });
        }
        sum += f * w;
    }
    Ok(sum)
}
