//! Field abstraction shared by every kernel.
//!
//! Real matrices use `f64` directly, complex ones use [`Complex64`]. All
//! solver code is written once against [`Scalar`].

use core::fmt::Debug;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use num_complex::Complex64;

/// A real or complex floating point number.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Default
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
{
    /// `true` for complex scalars.
    const IS_COMPLEX: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(re: f64) -> Self;

    /// Builds a scalar from a pair of components. Real scalars drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;

    fn re(self) -> f64;
    fn im(self) -> f64;
    fn conj(self) -> Self;

    /// Modulus `|s|`.
    fn modulus(self) -> f64;

    /// Squared modulus, `s * conj(s)` as a real.
    fn modulus_sqr(self) -> f64;

    fn scale(self, factor: f64) -> Self;

    /// Componentwise division by a real.
    fn div_real(self, divisor: f64) -> Self;

    fn is_finite(self) -> bool;

    /// `s / |s|`, or one when `s` is zero.
    fn unit_phase(self) -> Self {
        let m = self.modulus();
        if m == 0.0 {
            Self::one()
        } else {
            self.div_real(m)
        }
    }
}

impl Scalar for f64 {
    const IS_COMPLEX: bool = false;

    #[inline]
    fn zero() -> Self {
        0.0
    }

    #[inline]
    fn one() -> Self {
        1.0
    }

    #[inline]
    fn from_real(re: f64) -> Self {
        re
    }

    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    #[inline]
    fn re(self) -> f64 {
        self
    }

    #[inline]
    fn im(self) -> f64 {
        0.0
    }

    #[inline]
    fn conj(self) -> Self {
        self
    }

    #[inline]
    fn modulus(self) -> f64 {
        libm::fabs(self)
    }

    #[inline]
    fn modulus_sqr(self) -> f64 {
        self * self
    }

    #[inline]
    fn scale(self, factor: f64) -> Self {
        self * factor
    }

    #[inline]
    fn div_real(self, divisor: f64) -> Self {
        self / divisor
    }

    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    #[inline]
    fn unit_phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex64 {
    const IS_COMPLEX: bool = true;

    #[inline]
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    #[inline]
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    #[inline]
    fn from_real(re: f64) -> Self {
        Complex64::new(re, 0.0)
    }

    #[inline]
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    #[inline]
    fn re(self) -> f64 {
        self.re
    }

    #[inline]
    fn im(self) -> f64 {
        self.im
    }

    #[inline]
    fn conj(self) -> Self {
        Complex64::new(self.re, -self.im)
    }

    #[inline]
    fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    #[inline]
    fn modulus_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    fn scale(self, factor: f64) -> Self {
        Complex64::new(self.re * factor, self.im * factor)
    }

    #[inline]
    fn div_real(self, divisor: f64) -> Self {
        Complex64::new(self.re / divisor, self.im / divisor)
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
