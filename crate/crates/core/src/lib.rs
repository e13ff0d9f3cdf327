//! Numerical range of the Foguel operator F_{aI} = [[S*, aI], [0, S]] built
//! from the unilateral shift S.
//!
//! * [`closedform`]: support function, boundary arcs, the sextic curve and
//!   derived geometry.
//! * [`oracle`]: finite compressions and brute-force checks that verify the
//!   closed forms independently.
//! * [`exactpoly`]: exact polynomial arithmetic and the resultant
//!   certificate for the sextic.

pub mod closedform;
pub mod error;
pub mod exactpoly;
pub mod oracle;
pub mod tolerances;

pub use closedform::{
    boundary_curve, contains, ellipse_gap, envelope_point, lambda_max, sextic_eval,
    switching_cosine, BoundaryPoint, Branch, Containment, FoguelParams, RangeInterval,
    SupportLine,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use tolerances::Tolerances;
