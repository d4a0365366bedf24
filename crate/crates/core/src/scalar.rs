//! Scalar types the Gaussian-state algebra can run on.
//!
//! Everything in [`crate::gaussian`] is generic over [`Real`]. Ordinary work
//! uses `f64`; the purification oracle switches to [`TwoFloat`]
//! (double-double, about 32 significant digits) because purifying a thermal
//! mode of variance `W` produces covariance entries of order `W` whose
//! smallest eigenvalue is of order `1/W`. Near unit receiver transmittance
//! `W` reaches 1e8 and `f64` cannot hold both ends of that range.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::Float;
pub use twofloat::TwoFloat;

pub trait Real:
    Float
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Unit roundoff of the representation.
    const PRECISION: f64;

    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;

    /// Quotient correctly rounded to [`Real::PRECISION`].
    fn quo(self, rhs: Self) -> Self {
        self / rhs
    }
}

impl Real for f64 {
    const PRECISION: f64 = f64::EPSILON;

    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for TwoFloat {
    // 2^-104
    const PRECISION: f64 = 4.930380657631324e-32;

    #[inline]
    fn lit(x: f64) -> Self {
        TwoFloat::from(x)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.hi() + self.lo()
    }

    // The upstream quotient is only accurate to about 1e-16; one Newton step
    // on the residual restores full double-double accuracy.
    #[inline]
    fn quo(self, rhs: Self) -> Self {
        let q = self / rhs;
        q + (self - q * rhs) / rhs
    }
}
