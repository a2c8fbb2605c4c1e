//! Floating-point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the analysis is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Magnitudes below this are treated as exact zeros of `R` or of its
    /// denominator.
    fn zero_threshold() -> Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Scalar for f64 {
    fn zero_threshold() -> Self {
        1e-300
    }
}

impl Scalar for f32 {
    fn zero_threshold() -> Self {
        1e-37
    }
}

/// Principal logarithm with the argument normalized into `(-pi, pi]`.
///
/// `Complex::ln` returns `-pi` for a negative real with a negative-zero
/// imaginary part; that value is mapped onto `+pi`.
pub fn ln_principal<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let mut l = z.ln();
    if l.im <= -T::PI() {
        l.im = T::PI();
    }
    l
}

/// `ln(1 + w)` on the principal branch, accurate for small `|w|`.
pub fn ln_1p<T: Scalar>(w: Complex<T>) -> Complex<T> {
    let two = T::one() + T::one();
    let re = (two * w.re + w.norm_sqr()).ln_1p() / two;
    let im = w.im.atan2(T::one() + w.re);
    Complex::new(re, im)
}
