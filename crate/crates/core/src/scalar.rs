use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as the numerator/denominator of a [`Fraction`](crate::Fraction).
///
/// Implemented for the primitive signed integers and for `num_bigint::BigInt`.
pub trait ExactInt:
    Integer + Signed + Clone + Hash + Debug + Display + FromStr + ToPrimitive + FromPrimitive + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + ToPrimitive
        + FromPrimitive
        + Send
        + Sync
{
}
