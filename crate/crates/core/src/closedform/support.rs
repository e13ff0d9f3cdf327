//! Support function of W(F_{aI}) and the interval analysis behind it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Parameters of F_{aI}. Only the modulus r = |a|/2 enters the closed forms;
/// the complex coupling `a` is kept for the truncation oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoguelParams {
    r: f64,
    a: Option<(f64, f64)>,
}

impl FoguelParams {
    pub fn from_radius(r: f64) -> Result<Self> {
        check_radius(r)?;
        Ok(Self { r, a: None })
    }

    pub fn from_coupling(a: Complex64) -> Result<Self> {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(invalid("a", a, "must be finite"));
        }
        Ok(Self {
            r: a.norm() / 2.0,
            a: Some((a.re, a.im)),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The coupling constant; a real `2r` when only the radius was given.
    pub fn a(&self) -> Complex64 {
        match self.a {
            Some((re, im)) => Complex64::new(re, im),
            None => Complex64::new(2.0 * self.r, 0.0),
        }
    }

    pub fn support_line(&self, theta: f64) -> SupportLine {
        SupportLine::new(theta, self.r)
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() || r < 0.0 {
        return Err(invalid("r", r, "must be finite and nonnegative"));
    }
    Ok(())
}

/// The line {e^{iθ}(offset + is) : s ∈ ℝ}, i.e. x·cosθ + y·sinθ = offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportLine {
    pub theta: f64,
    pub offset: f64,
}

impl SupportLine {
    pub fn new(theta: f64, r: f64) -> Self {
        Self {
            theta,
            offset: lambda_max(theta, r),
        }
    }

    /// x·cosθ + y·sinθ − offset; positive outside the half-plane.
    pub fn excess(&self, x: f64, y: f64) -> f64 {
        let (s, c) = self.theta.sin_cos();
        x * c + y * s - self.offset
    }
}

/// (√(4+r²) − r)/2, the value of |cos θ| at which the boundary switches
/// between circle arcs and sextic arcs.
pub fn switching_cosine(r: f64) -> f64 {
    // 2/(√(4+r²) + r) avoids cancellation for large r
    2.0 / ((4.0 + r * r).sqrt() + r)
}

/// True when |cos θ| selects the circle branch. Values within a few ulps of
/// the switching cosine count as ties and go to the circle, so that
/// `cos(acos(c))` rounding cannot flip the branch of a switching point.
pub fn in_circle_regime(cos: f64, r: f64) -> bool {
    cos.abs() >= switching_cosine(r) * (1.0 - 4.0 * f64::EPSILON)
}

/// The supporting-line offset λ_max(θ) of W(F_{aI}) with r = |a|/2.
///
/// r + |cos θ| when |cos θ| ≥ [`switching_cosine`], otherwise
/// √(1 + (r / sin θ)²). At r = 0 the range is the open unit disk and the
/// result is exactly 1.
pub fn lambda_max(theta: f64, r: f64) -> f64 {
    if r == 0.0 {
        // both branches give 1 up to rounding of cos θ; skip the rounding
        return 1.0;
    }
    let (s, c) = theta.sin_cos();
    if in_circle_regime(c, r) {
        circle_branch(c, r)
    } else {
        sextic_branch(s, r)
    }
}

pub(crate) fn circle_branch(cos: f64, r: f64) -> f64 {
    r + cos.abs()
}

/// √(1 + (r/sin θ)²), with the sin θ = 0 limit taken as +∞.
pub(crate) fn sextic_branch(sin: f64, r: f64) -> f64 {
    if sin == 0.0 {
        if r == 0.0 {
            return 1.0;
        }
        return f64::INFINITY;
    }
    let q = r / sin;
    (1.0 + q * q).sqrt()
}

/// A closed real interval, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeInterval {
    pub lo: f64,
    pub hi: f64,
    pub empty: bool,
}

impl RangeInterval {
    /// `[lo, hi]`, flagged empty when `lo > hi`.
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            empty: lo > hi,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        !self.empty && self.lo <= v && v <= self.hi
    }

    pub fn max(&self) -> Option<f64> {
        (!self.empty).then_some(self.hi)
    }
}

/// Reduces θ to the first quadrant: returns (|cos θ|, |sin θ|).
fn first_quadrant(theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (c.abs(), s.abs())
}

/// Range of f_{λ,ω}(t) = Re(t²) + Re(ω²) − 4λ Re t Re ω over the unit circle,
/// ω = e^{iθ}, in closed form.
pub fn f_range(lambda: f64, theta: f64) -> Result<RangeInterval> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(invalid("lambda", lambda, "must be finite and > 1"));
    }
    let (c, _) = first_quadrant(theta);
    let c2 = c * c;
    let hi = 2.0 * c2 + 4.0 * lambda * c;
    let lo = if lambda * c >= 1.0 {
        2.0 * c2 - 4.0 * lambda * c
    } else {
        2.0 * (1.0 - lambda * lambda) * c2 - 2.0
    };
    Ok(RangeInterval::new(lo, hi))
}

/// The two intervals whose union is the set of λ with 2(r² − λ²) ∈ f(𝕋):
///
/// Λ₁ = [max{r − cos θ, sec θ}, r + cos θ],
/// Λ₂ = [r − cos θ, min{√(1 + (r/sin θ)²), sec θ}],
///
/// with θ reduced to the first quadrant, sec θ = +∞ at cos θ = 0 and the
/// square root = +∞ at sin θ = 0.
pub fn admissible_lambdas(theta: f64, r: f64) -> Result<(RangeInterval, RangeInterval)> {
    check_radius(r)?;
    let (c, s) = first_quadrant(theta);
    let sec = if c == 0.0 { f64::INFINITY } else { 1.0 / c };
    let root = if s == 0.0 {
        f64::INFINITY
    } else {
        sextic_branch(s, r)
    };
    let lambda1 = RangeInterval::new((r - c).max(sec), r + c);
    let lambda2 = RangeInterval::new(r - c, root.min(sec));
    Ok((lambda1, lambda2))
}

/// max(Λ₁ ∪ Λ₂), or `None` when both are empty.
pub fn union_max(intervals: (RangeInterval, RangeInterval)) -> Option<f64> {
    match (intervals.0.max(), intervals.1.max()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Angle in [0, π/2] at which the upper-right switching point sits.
pub fn switching_angle(r: f64) -> f64 {
    switching_cosine(r).acos()
}

/// The four switching angles in (−π, π], ascending.
pub fn switching_angles(r: f64) -> [f64; 4] {
    let a = switching_angle(r);
    [-(PI - a), -a, a, PI - a]
}
