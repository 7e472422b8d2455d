use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable by the linear algebra and LP layers.
///
/// Everything in this crate is exact: there is no floating point anywhere, so
/// the scalar parameter ranges over machine integers and big integers rather
/// than over `f32`/`f64`.
pub trait Scalar:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Hash + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + fmt::Debug
        + fmt::Display
        + FromPrimitive
        + ToPrimitive
        + Hash
        + 'static
{
}

pub(crate) fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("every scalar type holds an i64")
}
