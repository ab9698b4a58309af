//! Exact rational scalars.
//!
//! Every coordinate and coefficient in this crate is a [`Rat`]: an
//! arbitrary-precision rational kept in lowest terms with a positive
//! denominator. There is no floating point anywhere; every comparison the
//! checkers make is an exact equality or inequality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number.
///
/// Stored normalized (lowest terms, positive denominator). The wire format is
/// `"p/q"`, or `"p"` when the denominator is 1, with an optional leading
/// minus on the numerator only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

/// Error produced when a rational string does not match the wire format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: &'static str,
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numer/denom` in lowest terms. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Parses the wire format: `p` or `p/q`, minus sign on `p` only,
    /// `q` a positive integer, no whitespace.
    pub fn parse(input: &str) -> Result<Self, ParseRatError> {
        let err = |reason| ParseRatError {
            input: input.to_owned(),
            reason,
        };
        let (numer, denom) = match input.split_once('/') {
            None => (input, None),
            Some((n, d)) => (n, Some(d)),
        };
        let digits = numer.strip_prefix('-').unwrap_or(numer);
        if !is_digits(digits) {
            return Err(err("numerator must be an optionally signed integer"));
        }
        let n: BigInt = numer.parse().expect("validated integer");
        let d: BigInt = match denom {
            None => BigInt::one(),
            Some(d) => {
                if !is_digits(d) {
                    return Err(err("denominator must be an unsigned integer"));
                }
                let d: BigInt = d.parse().expect("validated integer");
                if d.is_zero() {
                    return Err(err("denominator must be nonzero"));
                }
                d
            }
        };
        Ok(Rat(BigRational::new(n, d)))
    }

    /// Renders the wire format (`"p"` when the denominator is 1, else `"p/q"`).
    pub fn render(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Smallest integer `n` with `n >= self`; caller must keep magnitudes in
    /// i64 range (true for everything the samplers produce).
    pub fn ceil_to_i64(&self) -> i64 {
        let c = self.0.ceil();
        let n = c.numer();
        i64::try_from(n).expect("ceiling out of i64 range")
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::parse(&s).map_err(D::Error::custom)
    }
}

/// Total order helper used by pointwise models.
pub fn rat_min(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn rat_max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn rat_cmp(a: &Rat, b: &Rat) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["0", "1", "-1", "1/2", "-3/4", "22/7", "100000000000000000000/3"] {
            let q = Rat::parse(s).unwrap();
            assert_eq!(q.render(), s);
        }
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        assert_eq!(Rat::parse("2/4").unwrap(), Rat::new(1, 2));
        assert_eq!(Rat::parse("2/4").unwrap().render(), "1/2");
        assert_eq!(Rat::new(-2, -4).render(), "1/2");
        assert_eq!(Rat::new(2, -4).render(), "-1/2");
        assert_eq!(Rat::parse("0/17").unwrap().render(), "0");
    }

    #[test]
    fn rejects_malformed_input() {
        for s in [
            "", " 1", "1 ", "+1", "1/-2", "1/0", "1/2/3", "a", "1.5", "--1", "-", "1/",
            "/2", "- 1",
        ] {
            assert!(Rat::parse(s).is_err(), "should reject `{s}`");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(&a + &b, Rat::new(1, 2));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 18));
        assert_eq!(&a / &b, Rat::from_int(2));
        assert_eq!(-&a, Rat::new(-1, 3));
        assert_eq!(a.recip().unwrap(), Rat::from_int(3));
        assert!(Rat::zero().recip().is_none());
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::zero());
        assert_eq!(rat_min(&Rat::new(1, 2), &Rat::one()), Rat::new(1, 2));
        assert_eq!(rat_max(&Rat::new(1, 2), &Rat::one()), Rat::one());
    }

    #[test]
    fn ceiling() {
        assert_eq!(Rat::new(5, 2).ceil_to_i64(), 3);
        assert_eq!(Rat::new(-5, 2).ceil_to_i64(), -2);
        assert_eq!(Rat::from_int(4).ceil_to_i64(), 4);
    }
}
