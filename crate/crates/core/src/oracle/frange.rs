//! Brute-force range of f_{λ,ω} on the unit circle, and the largest λ
//! satisfying 2(r² − λ²) ∈ f(𝕋) found by scanning a λ grid.

use std::f64::consts::PI;

use crate::closedform::RangeInterval;
use crate::error::{invalid, Error, Result};

/// Default number of unit-circle samples.
pub const DEFAULT_CIRCLE_SAMPLES: usize = 100_000;
/// Default spacing of the descending λ grid.
pub const DEFAULT_LAMBDA_STEP: f64 = 1e-4;

/// f_{λ,ω}(t) = a_k − λ b_k at the grid points t_k = e^{2πik/K}, with
/// a_k = Re(t_k²) + Re(ω²) and b_k = 4 Re t_k Re ω.
#[derive(Debug, Clone)]
pub struct CircleGrid {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CircleGrid {
    pub fn new(theta: f64, k: usize) -> Self {
        let re_omega = theta.cos();
        let re_omega2 = (2.0 * theta).cos();
        let (a, b) = (0..k)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / k as f64;
                ((2.0 * phi).cos() + re_omega2, 4.0 * phi.cos() * re_omega)
            })
            .unzip();
        Self { a, b }
    }

    /// [min f, max f] over the grid.
    pub fn range(&self, lambda: f64) -> RangeInterval {
        let (lo, hi) = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| a - lambda * b)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        RangeInterval::new(lo, hi)
    }
}

/// Min and max of f_{λ,ω} over `k` equally spaced points of the unit circle.
pub fn oracle_f_range(lambda: f64, theta: f64, k: usize) -> Result<RangeInterval> {
    if k < 1000 {
        return Err(invalid("K", k, "need at least 1000 circle samples"));
    }
    Ok(CircleGrid::new(theta, k).range(lambda))
}

/// Descending grid from `r + 2` down to 1 with the given step; the last
/// point is exactly 1.
pub fn lambda_grid(r: f64, step: f64) -> Vec<f64> {
    let top = r + 2.0;
    let count = ((top - 1.0) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..count).map(|k| top - step * k as f64).collect();
    grid.push(1.0);
    grid
}

fn check_grid(grid: &[f64], r: f64) -> Result<()> {
    let first = *grid.first().ok_or_else(|| invalid("lambda_grid", "[]", "empty"))?;
    let last = *grid.last().unwrap();
    if first < r + 2.0 - 1e-12 || last > 1.0 + 1e-12 {
        return Err(invalid("lambda_grid", format!("[{first}, {last}]"), "must cover [1, r + 2]"));
    }
    let max_step = DEFAULT_LAMBDA_STEP * (1.0 + 1e-9);
    for w in grid.windows(2) {
        let gap = w[0] - w[1];
        if !(gap > 0.0) {
            return Err(invalid("lambda_grid", w[1], "must be strictly descending"));
        }
        if gap > max_step {
            return Err(invalid("lambda_grid", gap, "step exceeds 1e-4"));
        }
    }
    Ok(())
}

/// The first (largest) λ of the descending `grid` with 2(r² − λ²) inside the
/// brute-force range of f_{λ,ω} on `k` circle points.
pub fn oracle_lambda_max_via_condition(theta: f64, r: f64, grid: &[f64], k: usize) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("r", r, "must be positive"));
    }
    if k < 1000 {
        return Err(invalid("K", k, "need at least 1000 circle samples"));
    }
    check_grid(grid, r)?;
    let circle = CircleGrid::new(theta, k);
    grid.iter()
        .copied()
        .find(|&lambda| circle.range(lambda).contains(2.0 * (r * r - lambda * lambda)))
        .ok_or(Error::LambdaGridExhausted { theta, r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = lambda_grid(0.5, 1e-4);
        assert_eq!(g[0], 2.5);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(check_grid(&g, 0.5).is_ok());
        assert!(check_grid(&lambda_grid(0.5, 1e-3), 0.5).is_err());
        let mut up = g.clone();
        up.reverse();
        assert!(check_grid(&up, 0.5).is_err());
    }

    #[test]
    fn too_few_circle_points() {
        assert!(oracle_f_range(2.0, 0.0, 999).is_err());
    }

    #[test]
    fn incomplete_grid_rejected() {
        let g: Vec<f64> = (0..20).map(|k| 2.5 - 1e-4 * k as f64).collect();
        assert!(matches!(
            oracle_lambda_max_via_condition(0.0, 0.5, &g, 1000),
            Err(Error::InvalidParameter { name: "lambda_grid", .. })
        ));
    }
}
