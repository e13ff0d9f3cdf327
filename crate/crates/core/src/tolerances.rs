//! Shared numeric tolerances.
//!
//! Every threshold used by the library, the CLI `verify` command and the
//! acceptance suite lives in [`Tolerances`]. The defaults are the pinned
//! acceptance values; callers may override individual fields.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for closed-form algebraic identities (branch
    /// continuity, circle equations, support-line incidence).
    pub algebraic: f64,
    /// Relative tolerance for envelope points on the sextic: the residual is
    /// divided by the largest monomial magnitude at the point.
    pub envelope: f64,
    /// Slack allowed when testing that a boundary point is inside every other
    /// supporting half-plane, and for convexity cross products.
    pub support: f64,
    /// Band around zero classified as `Boundary` by `contains`.
    pub membership: f64,
    /// Rayleigh-quotient residual target of the top-eigenvalue solver.
    pub eigen_residual: f64,
    /// Acceptable gap `lambda_max - oracle_lambda_max` at N = 400, a = 1.
    pub convergence_n400: f64,
    /// Step of the descending lambda grid used by the condition oracle.
    pub lambda_grid_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-12,
            envelope: 1e-8,
            support: 1e-10,
            membership: 1e-9,
            eigen_residual: 1e-11,
            convergence_n400: 5e-3,
            lambda_grid_step: 1e-4,
        }
    }
}
