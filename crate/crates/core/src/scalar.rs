use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numeric side of the crate is written against.
///
/// Implemented for `f32` and `f64`. Exact work (factorization, Schinzel
/// conditions) happens over arbitrary-precision integers instead.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    #[inline]
    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }

    /// Absolute tolerance that is meaningful at this precision: `max(target, scale * eps)`.
    #[inline]
    fn tol(target: f64, scale: f64) -> Self {
        Self::lit(target).max(Self::epsilon() * Self::lit(scale))
    }
}

impl Real for f32 {}
impl Real for f64 {}
