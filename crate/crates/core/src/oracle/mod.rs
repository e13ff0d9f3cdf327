//! Independent numerical oracle: finite compressions of F_{aI}, their top
//! eigenvalues, and a brute-force check of the admissible-λ condition.

mod boundary;
mod eigen;
mod frange;
mod truncation;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use boundary::oracle_boundary;
pub use eigen::{dense_top_eigenvalue, top_eigenvalue, TopEigen};
pub use frange::{
    lambda_grid, oracle_f_range, oracle_lambda_max_via_condition, CircleGrid,
    DEFAULT_CIRCLE_SAMPLES, DEFAULT_LAMBDA_STEP,
};
pub use truncation::{build_foguel, BandedHermitian, HermitianRotation, TruncatedOperator};

use crate::closedform::lambda_max;
use crate::error::{invalid, Result};

/// Rayleigh-quotient residual at which the eigensolver stops.
pub const EIGEN_RESIDUAL_TARGET: f64 = 1e-11;
/// Largest truncation level accepted by the dense cross-check path.
pub const DENSE_MAX_LEVEL: usize = 64;

/// Top eigenvalue of the hermitian rotation of the N-level compression, with
/// solver diagnostics.
pub fn oracle_top_eigen(theta: f64, a: Complex64, n: usize) -> Result<TopEigen> {
    let op = build_foguel(a, n)?;
    top_eigenvalue(&op.hermitian_rotation(theta).band, EIGEN_RESIDUAL_TARGET)
}

/// λ_max(Re(e^{−iθ}F_N)) for the N-level compression F_N of F_{aI}.
pub fn oracle_lambda_max(theta: f64, a: Complex64, n: usize) -> Result<f64> {
    oracle_top_eigen(theta, a, n).map(|e| e.value)
}

/// Same quantity by dense decomposition; only for N ≤ 64.
pub fn oracle_lambda_max_dense(theta: f64, a: Complex64, n: usize) -> Result<f64> {
    if n > DENSE_MAX_LEVEL {
        return Err(invalid("N", n, "dense path is limited to N <= 64"));
    }
    let op = build_foguel(a, n)?;
    Ok(dense_top_eigenvalue(op.hermitian_rotation(theta).to_dense()))
}

/// Maximum of lambda_max − oracle_lambda_max over `thetas` for each level.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceProfile {
    pub levels: Vec<usize>,
    pub max_errors: Vec<f64>,
    /// Richardson extrapolation in 1/N² of the last two errors; a diagnostic
    /// only, never used in a pass/fail decision.
    pub richardson_estimate: Option<f64>,
}

impl ConvergenceProfile {
    pub fn strictly_decreasing(&self) -> bool {
        self.max_errors.windows(2).all(|w| w[1] < w[0])
    }
}

pub fn convergence_profile(a: Complex64, levels: &[usize], thetas: &[f64]) -> Result<ConvergenceProfile> {
    let r = a.norm() / 2.0;
    let max_errors = levels
        .iter()
        .map(|&n| {
            thetas
                .par_iter()
                .map(|&t| Ok(lambda_max(t, r) - oracle_lambda_max(t, a, n)?))
                .collect::<Result<Vec<f64>>>()
                .map(|e| e.into_iter().fold(f64::NEG_INFINITY, f64::max))
        })
        .collect::<Result<Vec<_>>>()?;
    let richardson_estimate = match (levels, max_errors.as_slice()) {
        ([.., n1, n2], [.., e1, e2]) => {
            let (n1, n2) = (*n1 as f64, *n2 as f64);
            let w = (n2 / n1).powi(2);
            Some((w * e2 - e1) / (w - 1.0))
        }
        _ => None,
    };
    Ok(ConvergenceProfile {
        levels: levels.to_vec(),
        max_errors,
        richardson_estimate,
    })
}

/// `count` equally spaced angles in [−π, π).
pub fn theta_grid(count: usize) -> Vec<f64> {
    let step = 2.0 * std::f64::consts::PI / count as f64;
    (0..count)
        .map(|k| -std::f64::consts::PI + step * k as f64)
        .collect()
}
