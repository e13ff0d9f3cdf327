//! Exact polynomial arithmetic and the resultant certificate for the
//! boundary curve.

mod arc;
mod certificate;
mod poly;
mod resultant;

pub use arc::{arc_expression, arc_polynomial, arc_polynomial_xy, tp_polynomials, ArcScalar};
pub use certificate::{
    bivariate_dimension, interpolate, min_sample_count, verify_arc_identity,
    verify_identity_with, CofactorSummary, ResultantReport, SAMPLE_HEIGHT,
};
pub use poly::{ExactPoly, Monomial};
pub use resultant::{
    bareiss_determinant, relative_resultant_at, resultant, resultant_scale, specialized_tp,
    sylvester_matrix, sylvester_resultant_at, ResultantPoint,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
