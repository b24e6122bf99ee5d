use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact multiple of 1/2, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// `num/den` as a half-integer; anything that is not a multiple of 1/2 is rejected.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = 2 * num;
        if t % den != 0 {
            return Err(Error::NotHalfInteger(format!("{num}/{den}")));
        }
        Ok(HalfInt { twice: t / den })
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Integer value, if integral.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Dimension 4j+1 of the irreducible osp(2|1) module of spin `self`.
    pub fn rep_dim(self) -> usize {
        assert!(self.twice >= 0, "spin must be non-negative");
        (2 * self.twice + 1) as usize
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `k` or `k/2` only.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::NotHalfInteger(s.to_string());
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                if d.trim() != "2" {
                    return Err(bad());
                }
                Ok(HalfInt::from_twice(n))
            }
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + o.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - o.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt::from_twice(self.twice * k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_only_halves() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1".parse::<HalfInt>().unwrap(), HalfInt::from_int(-1));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert!("5/4".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn ratio_rejects_quarters() {
        assert!(HalfInt::from_ratio(1, 4).is_err());
        assert_eq!(HalfInt::from_ratio(3, 6).unwrap(), HalfInt::HALF);
        assert_eq!(HalfInt::from_ratio(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_and_order() {
        let a = HalfInt::from_twice(3);
        let b = HalfInt::HALF;
        assert_eq!(a + b, HalfInt::from_int(2));
        assert_eq!(a - b, HalfInt::ONE);
        assert_eq!(b * 3, a);
        assert!(b < a);
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(HalfInt::from_int(1).rep_dim(), 5);
    }
}
