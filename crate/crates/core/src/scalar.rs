use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Numeric type used for data volumes, loads and costs.
///
/// Everything in the crate is generic over this trait. Exact integer
/// weights (`i64`) are the default, `Ratio<i64>` gives exact fractional
/// volumes and `f32`/`f64` are available when rounding is acceptable.
pub trait Weight:
    Copy
    + Num
    + PartialOrd
    + Debug
    + Display
    + Sum
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_hops(hops: u32) -> Self {
        Self::from_u32(hops).expect("hop count representable in weight type")
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// Total order used for deterministic sorting; incomparable values
    /// (NaN) compare equal.
    fn order(&self, other: &Self) -> std::cmp::Ordering {
        self.partial_cmp(other).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl<T> Weight for T where
    T: Copy
        + Num
        + PartialOrd
        + Debug
        + Display
        + Sum
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
