use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    /// r = 0: the numerical range is the open unit disk and the two-branch
    /// boundary structure collapses.
    #[error("r = 0 is degenerate: W(F_0) is the open unit disk, use the unit circle as its boundary")]
    DegenerateRadius,

    #[error("envelope derivative is singular at theta = {theta}")]
    SingularBranch { theta: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e}, target {target:e})")]
    EigenNonConvergence {
        iterations: usize,
        residual: f64,
        target: f64,
    },

    #[error("no lambda in the supplied grid satisfies 2(r^2 - lambda^2) in f(T) (theta = {theta}, r = {r})")]
    LambdaGridExhausted { theta: f64, r: f64 },

    #[error("polynomial has no value assigned for variable `{0}`")]
    MissingVariable(String),

    #[error("leading coefficient vanishes: {0}")]
    VanishingLeadingCoefficient(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: impl ToString, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value: value.to_string(),
        reason,
    }
}
