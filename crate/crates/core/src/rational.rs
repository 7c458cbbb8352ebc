//! Exact rationals and their extension by the two infinities.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational number.
pub type Rational = BigRational;

/// Builds `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats `r` canonically as `p/q` with `q > 0` and `gcd(p, q) = 1`.
///
/// Integers keep the explicit denominator: `3` is written `3/1`.
pub fn format_rational(r: &Rational) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Parses a comma-separated list such as `2/1,3/1`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// A rational number or one of the two infinities.
///
/// The derived ordering is the natural one: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extended {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn zero() -> Self {
        Extended::Finite(Rational::zero())
    }

    /// Parses `inf`, `+inf`, `-inf` or a rational.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" => Ok(Extended::PosInf),
            "-inf" | "-infinity" => Ok(Extended::NegInf),
            _ => parse_rational(s).map(Extended::Finite),
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("inf"),
            Extended::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// Smallest integer `>= r`, as a `BigInt`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&int(0)), "0/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("-3/9").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational_list("2/1,3/1").unwrap(), vec![int(2), int(3)]);
    }

    #[test]
    fn extended_order() {
        assert!(Extended::NegInf < Extended::Finite(int(-100)));
        assert!(Extended::Finite(int(100)) < Extended::PosInf);
        assert!(Extended::Finite(rat(1, 3)) < Extended::Finite(rat(1, 2)));
        assert_eq!(Extended::parse("inf").unwrap(), Extended::PosInf);
        assert_eq!(Extended::PosInf.to_string(), "inf");
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_int(&rat(7, 3)), BigInt::from(3));
        assert_eq!(ceil_int(&rat(-7, 3)), BigInt::from(-2));
        assert_eq!(floor_int(&rat(7, 3)), BigInt::from(2));
        assert!(is_integral(&rat(6, 3)));
    }
}
