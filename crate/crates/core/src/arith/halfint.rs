use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// The value as an integer, if it is one.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    /// Whether `self - other` is an integer.
    pub fn same_parity(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }

    /// `self - other` as an integer; panics if it is not one.
    pub fn int_diff(self, other: HalfInt) -> i64 {
        assert!(self.same_parity(other), "{self} - {other} is not an integer");
        (self.0 - other.0) / 2
    }

    /// Validates a highest weight: `2j >= 0`.
    pub fn check_highest_weight(self) -> Result<Self> {
        if self.0 < 0 {
            Err(Error::InvalidHighestWeight(self))
        } else {
            Ok(self)
        }
    }

    /// Validates `-j <= m <= j` with `j - m` integral.
    pub fn check_weight_of(self, j: HalfInt) -> Result<Self> {
        j.check_highest_weight()?;
        if self.abs() > j || !self.same_parity(j) {
            Err(Error::InvalidWeight { j, m: self })
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = super::rational::parse_rational(s)?;
        let twice = r * Rational::from_integer(2.into());
        super::rational::to_i64(&twice)
            .map(HalfInt)
            .ok_or_else(|| Error::Parse(format!("not an integer or half-integer: {s:?}")))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
