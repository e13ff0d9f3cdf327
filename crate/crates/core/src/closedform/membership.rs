use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::support::{check_radius, lambda_max};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Containment {
    Interior,
    /// Within `tol` of the boundary.
    Boundary { tol: f64 },
    Exterior,
}

/// Default band classified as `Boundary`.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Largest excess x·cosθ + y·sinθ − λ_max(θ) over all directions, with the
/// maximising angle.
///
/// A uniform grid of `gridsize` angles locates the maximum, which is then
/// refined by golden-section search on the neighbouring grid cells.
pub fn max_support_excess(x: f64, y: f64, r: f64, gridsize: usize) -> (f64, f64) {
    let excess = |t: f64| {
        let (s, c) = t.sin_cos();
        x * c + y * s - lambda_max(t, r)
    };
    let step = 2.0 * PI / gridsize as f64;
    let (best_k, _) = (0..gridsize)
        .map(|k| (k, excess(-PI + step * k as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
    let center = -PI + step * best_k as f64;
    let (mut a, mut b) = (center - step, center + step);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (excess(c), excess(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = excess(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = excess(d);
        }
    }
    let candidates = [(excess(center), center), (fc, c), (fd, d)];
    candidates
        .into_iter()
        .fold((f64::NEG_INFINITY, center), |acc, v| if v.0 > acc.0 { v } else { acc })
}

/// Classifies (x, y) against W(F_{aI}) with the default tolerance.
pub fn contains(x: f64, y: f64, r: f64, gridsize: usize) -> Result<Containment> {
    contains_with_tol(x, y, r, gridsize, DEFAULT_MEMBERSHIP_TOL)
}

pub fn contains_with_tol(x: f64, y: f64, r: f64, gridsize: usize, tol: f64) -> Result<Containment> {
    check_radius(r)?;
    if gridsize < 64 {
        return Err(invalid("gridsize", gridsize, "must be at least 64"));
    }
    if !(tol >= 0.0) {
        return Err(invalid("tol", tol, "must be nonnegative"));
    }
    let (m, _) = max_support_excess(x, y, r, gridsize);
    Ok(if m > tol {
        Containment::Exterior
    } else if m.abs() <= tol {
        Containment::Boundary { tol }
    } else {
        Containment::Interior
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        for r in [0.0, 0.5, 2.0] {
            assert_eq!(contains(0.0, 0.0, r, 720).unwrap(), Containment::Interior);
        }
        assert!(matches!(contains(1.5, 0.0, 0.5, 720).unwrap(), Containment::Boundary { .. }));
        assert_eq!(contains(0.0, 1.25, 0.5, 720).unwrap(), Containment::Exterior);
        // open unit disk sits inside
        assert_eq!(contains(0.0, 0.999, 0.5, 720).unwrap(), Containment::Interior);
    }

    #[test]
    fn off_grid_boundary_points_are_found() {
        // theta = 0.123 is not on a 64-point grid
        let p = crate::closedform::envelope_point(0.123, 0.5).unwrap();
        assert!(matches!(contains(p.x, p.y, 0.5, 64).unwrap(), Containment::Boundary { .. }));
        let p = crate::closedform::envelope_point(1.234, 0.5).unwrap();
        assert!(matches!(contains(p.x, p.y, 0.5, 64).unwrap(), Containment::Boundary { .. }));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(contains(0.0, 0.0, 0.5, 63).is_err());
        assert!(contains(0.0, 0.0, -0.5, 64).is_err());
        assert!(contains_with_tol(0.0, 0.0, 0.5, 64, -1.0).is_err());
    }
}
