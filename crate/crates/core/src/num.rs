//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the models are written against: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Speed of light in the requested scalar type.
#[inline]
pub fn speed_of_light<F: Scalar>() -> F {
    F::lit(SPEED_OF_LIGHT)
}
