//! Scalar abstraction for the geometric kernel.
//!
//! Everything below the solvers is generic over [`Scalar`] so the kernel can
//! be instantiated at `f32` for quick screening and `f64` for the exact
//! solvers. The boolean-operation plumbing in `spm` additionally requires
//! `geo`'s numeric traits, which both floats satisfy.

use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + geo::GeoFloat
    + geo::algorithm::bool_ops::BoolOpsNum
    + 'static
{
    /// Shorthand for lossy conversion from an f64 literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal out of range for scalar")
    }

    // `geo`'s boolean-op bound drags in a second float trait whose `abs`,
    // `min` and `max` collide with `num_traits::Float`. These unambiguous
    // spellings are what the kernel uses.
    fn fabs(self) -> Self {
        Float::abs(self)
    }
    fn fmin(self, other: Self) -> Self {
        Float::min(self, other)
    }
    fn fmax(self, other: Self) -> Self {
        Float::max(self, other)
    }
    fn fsqrt(self) -> Self {
        Float::sqrt(self)
    }

    fn to_f64_lossy(self) -> f64;
}

impl Scalar for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}
