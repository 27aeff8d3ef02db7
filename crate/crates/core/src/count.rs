//! Arbitrary-precision nonnegative counts.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// Nonnegative integer of unbounded size. Serializes as a decimal string so
/// exact values survive JSON.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        BigCount(BigUint::one() << exp)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for BigCount {
            fn from(v: $t) -> Self {
                BigCount(BigUint::from(v))
            }
        }
    )*};
}
from_prim!(u8, u32, u64, u128, usize);

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul<u64> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: u64) -> BigCount {
        BigCount(self.0 * rhs)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}
