//! Closed-form description of W(F_{aI}): support function, the two
//! boundary regimes, the sextic curve, membership and the ellipse gap.
//!
//! Everything here is a pure function of its arguments.

mod ellipse;
mod envelope;
mod membership;
mod sextic;
mod support;

pub use ellipse::{ellipse_gap, ellipse_support_gap, ConjecturedEllipse, EllipseGap};
pub use envelope::{
    boundary_angles, boundary_curve, branch_transitions, envelope_point, incidence_residual,
    sextic_curve_point, switching_points, BoundaryPoint, Branch,
};
pub use membership::{
    contains, contains_with_tol, max_support_excess, Containment, DEFAULT_MEMBERSHIP_TOL,
};
pub use sextic::{sextic_eval, sextic_relative_residual, sextic_scale};
pub use support::{
    admissible_lambdas, f_range, in_circle_regime, lambda_max, switching_angle, switching_angles, switching_cosine,
    union_max, FoguelParams, RangeInterval, SupportLine,
};
