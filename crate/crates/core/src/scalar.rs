use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the geometry is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Absolute tolerance used inside elimination and simplex pivoting.
///
/// `1e-11` for `f64`; widened to a small multiple of machine epsilon for
/// narrower types.
#[inline]
pub(crate) fn pivot_tolerance<T: Real>() -> T {
    lit::<T>(1e-11).max(T::epsilon() * lit(100.0))
}
