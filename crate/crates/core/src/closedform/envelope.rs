//! Envelope of the supporting-line family: the boundary of W(F_{aI}).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::support::{check_radius, in_circle_regime, lambda_max, sextic_branch, switching_angles};
#[cfg(test)]
use super::support::switching_cosine;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    CircleRight,
    CircleLeft,
    SexticUpper,
    SexticLower,
}

impl Branch {
    pub fn is_circle(self) -> bool {
        matches!(self, Branch::CircleRight | Branch::CircleLeft)
    }

    pub fn token(self) -> &'static str {
        match self {
            Branch::CircleRight => "circle-right",
            Branch::CircleLeft => "circle-left",
            Branch::SexticUpper => "sextic-upper",
            Branch::SexticLower => "sextic-lower",
        }
    }

    /// The branch selected for direction θ. Ties at the switching cosine go to
    /// the circle.
    pub fn for_angle(theta: f64, r: f64) -> Branch {
        let (s, c) = theta.sin_cos();
        if in_circle_regime(c, r) {
            if c >= 0.0 {
                Branch::CircleRight
            } else {
                Branch::CircleLeft
            }
        } else if s >= 0.0 {
            Branch::SexticUpper
        } else {
            Branch::SexticLower
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle-right" => Ok(Branch::CircleRight),
            "circle-left" => Ok(Branch::CircleLeft),
            "sextic-upper" => Ok(Branch::SexticUpper),
            "sextic-lower" => Ok(Branch::SexticLower),
            other => Err(invalid("branch", other, "unknown branch token")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub x: f64,
    pub y: f64,
    pub branch: Branch,
    pub theta: f64,
}

/// Point of tangency of the supporting line in direction θ.
///
/// With p = λ_max and the family x·cosθ + y·sinθ = p(θ), the envelope is
/// (p cosθ − p′ sinθ, p sinθ + p′ cosθ). On the circle branches this is
/// (±1 + r cosθ, r sinθ); on the sextic branches
/// p′ = −r² cosθ / (sin³θ · p).
pub fn envelope_point(theta: f64, r: f64) -> Result<BoundaryPoint> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::DegenerateRadius);
    }
    if !theta.is_finite() {
        return Err(invalid("theta", theta, "must be finite"));
    }
    let branch = Branch::for_angle(theta, r);
    let (s, c) = theta.sin_cos();
    let (x, y) = match branch {
        Branch::CircleRight => (1.0 + r * c, r * s),
        Branch::CircleLeft => (-1.0 + r * c, r * s),
        Branch::SexticUpper | Branch::SexticLower => sextic_curve_point(theta, r)?,
    };
    Ok(BoundaryPoint { x, y, branch, theta })
}

/// Envelope of the lines x·cosθ + y·sinθ = √(1 + (r/sinθ)²) for any θ with
/// sinθ ≠ 0, including directions where that family does not support W.
/// Sweeping θ over (0, π) traces the whole upper sextic arc, which leaves
/// every bounded box as θ → 0 or π.
pub fn sextic_curve_point(theta: f64, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::DegenerateRadius);
    }
    let (s, c) = theta.sin_cos();
    if s == 0.0 || !theta.is_finite() {
        return Err(Error::SingularBranch { theta });
    }
    let p = sextic_branch(s, r);
    let dp = -r * r * c / (s * s * s * p);
    Ok((p * c - dp * s, p * s + dp * c))
}

/// Angles swept by [`boundary_curve`]: a uniform grid of `samples` angles in
/// [−π, π) merged with the four switching angles and the axis directions.
pub fn boundary_angles(r: f64, samples: usize) -> Vec<f64> {
    let step = 2.0 * PI / samples as f64;
    let mut angles: Vec<f64> = (0..samples).map(|k| -PI + step * k as f64).collect();
    angles.extend(switching_angles(r));
    angles.extend([-PI, -FRAC_PI_2, 0.0, FRAC_PI_2]);
    angles.retain(|a| *a < PI);
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    angles
}

/// Closed, counter-clockwise polygonal sampling of ∂W(F_{aI}), starting at
/// θ = −π (the leftmost point).
pub fn boundary_curve(r: f64, samples: usize) -> Result<Vec<BoundaryPoint>> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::DegenerateRadius);
    }
    if samples < 8 {
        return Err(invalid("samples", samples, "must be at least 8"));
    }
    boundary_angles(r, samples)
        .into_iter()
        .map(|theta| envelope_point(theta, r))
        .collect()
}

/// Number of adjacent pairs with different branch tags.
pub fn branch_transitions(points: &[BoundaryPoint]) -> usize {
    points
        .windows(2)
        .filter(|w| w[0].branch != w[1].branch)
        .count()
}

/// The four switching points (tagged with the circle branch), in the order
/// of [`switching_angles`].
pub fn switching_points(r: f64) -> Result<[BoundaryPoint; 4]> {
    let a = switching_angles(r);
    Ok([
        envelope_point(a[0], r)?,
        envelope_point(a[1], r)?,
        envelope_point(a[2], r)?,
        envelope_point(a[3], r)?,
    ])
}

/// Incidence residual of a boundary point with its own supporting line.
pub fn incidence_residual(p: &BoundaryPoint, r: f64) -> f64 {
    let (s, c) = p.theta.sin_cos();
    p.x * c + p.y * s - lambda_max(p.theta, r)
}
