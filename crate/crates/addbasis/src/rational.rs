//! Exact rational scalars with arbitrary-precision components.
//!
//! Every quantity in this crate is a `Rational`; there is no floating-point
//! mode. Values are kept in canonical form (positive denominator, coprime
//! components) after every operation, so equality, ordering and hashing all
//! agree with mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction p/q with q > 0 and gcd(|p|, q) = 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Canonical fraction equal to p/q. Fails when q = 0.
    pub fn reduce(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let q = q.into();
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(p.into(), q)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// (⌊x⌋, ⌈x⌉); both components equal x when x is integral.
    pub fn floor_ceil(&self) -> (BigInt, BigInt) {
        (self.0.floor().to_integer(), self.0.ceil().to_integer())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Fractional part in [0, 1): x − ⌊x⌋.
    pub fn fractional_part(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    /// Nearest integer, ties rounded to even.
    pub fn round_half_even(&self) -> BigInt {
        let floor = self.0.floor().to_integer();
        let frac = &self.0 - self.0.floor();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if frac < half {
            floor
        } else if frac > half {
            floor + 1
        } else if (&floor % BigInt::from(2)).is_zero() {
            floor
        } else {
            floor + 1
        }
    }

    /// The integer value when the fraction is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts "p" (decimal integer) or "p/q"; re-canonicalizes.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |_| Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            None => Ok(Rational::from_int(BigInt::from_str(s).map_err(bad)?)),
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(bad)?;
                let q = BigInt::from_str(q.trim()).map_err(bad)?;
                Rational::reduce(p, q)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Shorthand used across the crate's unit tests.
#[cfg(test)]
pub(crate) fn rat(p: i64, q: i64) -> Rational {
    Rational::reduce(p, q).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_canonicalizes() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(3, -6).to_string(), "-1/2");
        assert_eq!(rat(0, 7).to_string(), "0");
        assert!(matches!(Rational::reduce(1, 0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn floor_ceil_examples() {
        assert_eq!(rat(7, 2).floor_ceil(), (BigInt::from(3), BigInt::from(4)));
        assert_eq!(rat(-1, 3).floor_ceil(), (BigInt::from(-1), BigInt::from(0)));
        assert_eq!(rat(5, 1).floor_ceil(), (BigInt::from(5), BigInt::from(5)));
    }

    #[test]
    fn fractional_part_examples() {
        assert_eq!(rat(7, 3).fractional_part(), rat(1, 3));
        assert_eq!(rat(-1, 4).fractional_part(), rat(3, 4));
        assert_eq!(rat(2, 1).fractional_part(), Rational::zero());
    }

    #[test]
    fn round_half_even_ties() {
        assert_eq!(rat(1, 2).round_half_even(), BigInt::from(0));
        assert_eq!(rat(3, 2).round_half_even(), BigInt::from(2));
        assert_eq!(rat(-1, 2).round_half_even(), BigInt::from(0));
        assert_eq!(rat(7, 3).round_half_even(), BigInt::from(2));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["12", "-3", "-1/3", "0", "5/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // non-canonical input re-canonicalizes
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert_eq!("2/-4".parse::<Rational>().unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a".parse::<Rational>().is_err());
    }
}
