use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the kernel is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::lit(2.0)
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn sqrt3() -> Self {
        Self::lit(3.0).sqrt()
    }

    /// Lossy conversion used for diagnostics and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `u² − 3` with a single rounding (fused multiply-add), clamped at zero.
///
/// `u` equal to the rounded `√3` is treated as the fixed point itself and
/// gives exactly zero.
#[inline]
pub fn u_sq_minus_3<T: Scalar>(u: T) -> T {
    if u == T::sqrt3() {
        return T::zero();
    }
    u.mul_add(u, -T::lit(3.0)).max(T::zero())
}

/// `√(u² − 3)`, see [`u_sq_minus_3`].
#[inline]
pub fn root_u_sq_minus_3<T: Scalar>(u: T) -> T {
    u_sq_minus_3(u).sqrt()
}
