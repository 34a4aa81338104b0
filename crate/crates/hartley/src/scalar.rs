//! Scalar abstraction for the transform code.
//!
//! All numeric routines are generic over [`Real`]; `f32` and `f64` implement
//! it. Tolerances quoted elsewhere in the crate assume `f64`.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar usable by every transform and factorization routine.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from an `f64` literal. Panics only for scalars
    /// that cannot represent ordinary constants, which none of ours are.
    fn from_f64_lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar must represent f64 constants")
    }

    /// 2*pi, the full angle used by the transform definitions.
    fn tau() -> Self {
        Self::PI() + Self::PI()
    }
}

impl Real for f32 {}
impl Real for f64 {}
