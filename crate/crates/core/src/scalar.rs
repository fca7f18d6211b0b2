//! Numeric type used for objective values, gains and thresholds.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating point scalar that objectives and algorithms are generic over.
///
/// Implemented for `f32` and `f64`. Threshold rules compare values of this type
/// directly, so the precision of the chosen type is the precision of every
/// acceptance decision.
pub trait Scalar:
    Float + FromPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal or parameter.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Scalar")
    }

    /// Lossy conversion to `f64`, used for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion of a count.
    fn of_count(n: usize) -> Self {
        Self::from_usize(n).expect("count is representable in every Scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
