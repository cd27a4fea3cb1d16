//! Coordinate types for outcome-indexed vectors.
//!
//! Everything above this module is generic over [`Coord`], a signed
//! primitive integer. The crate root fixes `i64` through type aliases;
//! `i32` is enough for desk-scale searches and halves the memory of large
//! event spaces.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};

/// A signed exact integer usable as a vector coordinate.
pub trait Coord:
    PrimInt + Signed + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    /// Converts a count (multiplicity, index) into a coordinate.
    fn from_count(n: usize) -> Option<Self> {
        <Self as num_traits::NumCast>::from(n)
    }

    /// Widens the coordinate for serialization and bound checks.
    fn as_i64(self) -> i64 {
        self.to_i64().expect("coordinate fits in i64")
    }
}

impl<T> Coord for T where
    T: PrimInt + Signed + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}
