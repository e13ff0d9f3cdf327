use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{oracle_lambda_max, truncation::build_foguel};
use crate::error::{invalid, Result};

/// Vertices of the polygon cut out by `samples` equally spaced supporting
/// lines of the compression's numerical range: vertex k is the intersection
/// of the lines at θ_k and θ_{k+1}.
pub fn oracle_boundary(a: Complex64, n: usize, samples: usize) -> Result<Vec<(f64, f64)>> {
    if n < 50 {
        return Err(invalid("N", n, "oracle boundary needs N >= 50"));
    }
    if samples < 90 {
        return Err(invalid("samples", samples, "oracle boundary needs at least 90 angles"));
    }
    build_foguel(a, n)?;
    let step = 2.0 * PI / samples as f64;
    let thetas: Vec<f64> = (0..samples).map(|k| -PI + step * k as f64).collect();
    let offsets: Vec<f64> = thetas
        .par_iter()
        .map(|&t| oracle_lambda_max(t, a, n))
        .collect::<Result<_>>()?;
    Ok((0..samples)
        .map(|k| {
            let j = (k + 1) % samples;
            let (s1, c1) = thetas[k].sin_cos();
            let (s2, c2) = (thetas[k] + step).sin_cos();
            let (p1, p2) = (offsets[k], offsets[j]);
            let det = c1 * s2 - s1 * c2;
            ((p1 * s2 - p2 * s1) / det, (c1 * p2 - c2 * p1) / det)
        })
        .collect())
}
