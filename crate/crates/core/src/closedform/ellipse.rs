//! Distance between ∂W(F_{aI}) and the axis-aligned ellipse with half-axes
//! 1 + r (matching the numerical radius) and √(1 + r²) (matching the top
//! supporting line).

use serde::{Deserialize, Serialize};

use super::envelope::boundary_curve;
use super::support::{check_radius, lambda_max};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjecturedEllipse {
    pub semi_major: f64,
    pub semi_minor: f64,
}

impl ConjecturedEllipse {
    pub fn for_radius(r: f64) -> Self {
        Self {
            semi_major: 1.0 + r,
            semi_minor: (1.0 + r * r).sqrt(),
        }
    }

    /// Support function √(A² cos²θ + B² sin²θ).
    pub fn support(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        (self.semi_major.powi(2) * c * c + self.semi_minor.powi(2) * s * s).sqrt()
    }

    /// Euclidean distance from (x, y) to the ellipse curve.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        distance_to_ellipse(self.semi_major, self.semi_minor, x.abs(), y.abs())
    }
}

/// Distance from a first-quadrant point to the ellipse with half-axes
/// `e0 ≥ e1`, by bisection on the Lagrange parameter.
fn distance_to_ellipse(e0: f64, e1: f64, y0: f64, y1: f64) -> f64 {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g == 0.0 {
                return 0.0;
            }
            let r0 = (e0 / e1).powi(2);
            let sbar = ellipse_root(r0, z0, z1, g);
            let x0 = r0 * y0 / (sbar + r0);
            let x1 = y1 / (sbar + 1.0);
            ((x0 - y0).powi(2) + (x1 - y1).powi(2)).sqrt()
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer0 = e0 * y0;
        let denom0 = e0 * e0 - e1 * e1;
        if numer0 < denom0 {
            let xde0 = numer0 / denom0;
            let x0 = e0 * xde0;
            let x1 = e1 * (1.0 - xde0 * xde0).max(0.0).sqrt();
            ((x0 - y0).powi(2) + x1 * x1).sqrt()
        } else {
            (y0 - e0).abs()
        }
    }
}

fn ellipse_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..1100 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let ratio0 = n0 / (s + r0);
        let ratio1 = z1 / (s + 1.0);
        let g = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if g > 0.0 {
            s0 = s;
        } else if g < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseGap {
    pub max_gap: f64,
    pub argmax_theta: f64,
}

/// Largest distance from a sampled boundary point of W(F_{aI}) to the
/// conjectured ellipse.
pub fn ellipse_gap(r: f64, samples: usize) -> Result<EllipseGap> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::DegenerateRadius);
    }
    if samples < 100 {
        return Err(invalid("samples", samples, "must be at least 100"));
    }
    let ellipse = ConjecturedEllipse::for_radius(r);
    let pts = boundary_curve(r, samples)?;
    let best = pts
        .iter()
        .map(|p| (ellipse.distance(p.x, p.y), p.theta))
        .fold((f64::NEG_INFINITY, 0.0), |acc, v| if v.0 > acc.0 { v } else { acc });
    Ok(EllipseGap {
        max_gap: best.0,
        argmax_theta: best.1,
    })
}

/// max over the sampled directions of h_E(θ) − λ_max(θ), the support-function
/// form of the same gap.
pub fn ellipse_support_gap(r: f64, samples: usize) -> Result<EllipseGap> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::DegenerateRadius);
    }
    let ellipse = ConjecturedEllipse::for_radius(r);
    let step = 2.0 * std::f64::consts::PI / samples as f64;
    let best = (0..samples)
        .map(|k| {
            let t = -std::f64::consts::PI + step * k as f64;
            (ellipse.support(t) - lambda_max(t, r), t)
        })
        .fold((f64::NEG_INFINITY, 0.0), |acc, v| if v.0 > acc.0 { v } else { acc });
    Ok(EllipseGap {
        max_gap: best.0,
        argmax_theta: best.1,
    })
}
