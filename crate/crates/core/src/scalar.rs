//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Tolerances throughout the crate are written as `f64` literals. They are
/// mapped through [`Real::tol`], which never lets a threshold drop below a
/// small multiple of the type's machine epsilon, so the same code is
/// meaningful in single precision.
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` constant into this type.
    fn lit(x: f64) -> Self;

    /// Lossless (f64) or widening (f32) conversion back to `f64`.
    fn as_f64(self) -> f64;

    /// Tolerance `x`, floored at `16 * epsilon`.
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(16.0);
        Self::lit(x).max(floor)
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}
