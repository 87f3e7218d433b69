//! Scalar abstraction over the floating-point type used by all score math.
//!
//! Every score, learner, and statistic in this crate is generic over
//! [`Scalar`]; `f64` is the default (and what the CLI uses), `f32` works
//! where a smaller footprint matters.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::{de::DeserializeOwned, Serialize};

/// Floating-point scalar usable throughout the crate.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` literal (constants, defaults, counts).
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }

    /// Convert a count into the scalar domain.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Guard below which a reference statistic is treated as zero when forming
/// relative errors.
pub const EPS_ZERO: f64 = 1e-12;

/// Lower clamp applied to association magnitudes before the signed log.
pub const EPS_ASSOC: f64 = 1e-6;
