//! Error type shared by every module of the crate.

use thiserror::Error;

/// Unified error type for construction, solving, and certification failures.
///
/// Numerical routines never panic on bad geometry; they return one of these
/// variants so callers can distinguish "the input violates a precondition"
/// from "the method did not converge" from "the configuration is degenerate".
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input dimensions disagree (wrong variable count, wrong coordinate length, ...).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A polynomial failed a structural invariant (inhomogeneous term, zero leading coefficient, ...).
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    /// Two projective points that must span a line are proportional.
    #[error("proportional points cannot span a line")]
    ProportionalPoints,

    /// A point that must lie on the surface does not (residual reported).
    #[error("point is not on the surface (relative residual {residual:.3e})")]
    OffSurface { residual: f64 },

    /// A point that must be generic is singular for the construction at hand.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// The two input equations share a common factor; the solution set is positive-dimensional.
    #[error("positive-dimensional solution set (common factor detected)")]
    CommonFactor,

    /// An iterative solve exhausted its iteration budget.
    #[error("no convergence after {iterations} iterations (best residual {best_residual:.3e})")]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
    },

    /// A certificate could not be produced: the object fails its defining residual test.
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    /// Every local chart needed by the computation was numerically unusable.
    #[error("no usable chart: {0}")]
    ChartFailure(String),

    /// (De)serialization of an external JSON document failed.
    #[error("json: {0}")]
    Json(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
