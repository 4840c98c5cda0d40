//! Scalar abstraction: all of the geometry is written against a floating
//! point trait so the same code runs with `f32` or `f64` coefficients.

use core::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable for Sol computations.
///
/// `f64` is the type the numerical tolerances in this crate are tuned for;
/// `f32` works but loses most of the documented accuracy guarantees.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant")
    }

    /// Lossy view of the value as `f64` (used for reporting and seeding).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
