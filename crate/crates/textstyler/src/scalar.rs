//! Floating-point abstraction: every numeric routine in this crate is generic
//! over [`Scalar`] so the same code runs in f32 for training and f64 for
//! finite-difference validation.

use ndarray::{LinalgScalar, ScalarOperand};
use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + ScalarOperand
    + LinalgScalar
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn from_f64(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 conversion")
    }

    fn from_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize conversion")
    }

    fn to_f64_lossy(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("f64 conversion")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for lifting an f64 constant into the working scalar type.
pub fn c<S: Scalar>(v: f64) -> S {
    S::from_f64(v)
}
