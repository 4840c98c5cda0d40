//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the Sol geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolError {
    /// A tangent vector with zero Riemannian length was passed to an angle
    /// computation.
    #[error("degenerate tangent")]
    DegenerateTangent,

    /// A curve inversion was requested for the origin itself.
    #[error("zero-length curve")]
    ZeroLengthCurve,

    /// A curve parameter lies outside the arc it belongs to.
    #[error("parameter {value} out of range [0, {max}]")]
    OutOfRange { value: f64, max: f64 },

    /// The two-point geodesic solver failed to converge from every start.
    #[error("bvp-divergence: best residual {residual}")]
    BvpDivergence { residual: f64 },

    /// Triangle vertices coincide or lie on a single geodesic.
    #[error("degenerate triangle")]
    DegenerateTriangle,

    /// A bracketing root search found no sign change.
    #[error("no sign change: {0}")]
    NoSignChange(String),

    /// An isoptic evaluation was requested at a segment endpoint.
    #[error("endpoint excluded")]
    EndpointExcluded,

    /// An isoptic quotient denominator underflowed.
    #[error("degenerate configuration")]
    DegenerateConfiguration,

    /// A parameter violates its documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Convenience alias used throughout the crate.
pub type SolResult<V> = Result<V, SolError>;
