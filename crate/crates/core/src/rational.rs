//! Exact rational scalars backed by arbitrary-precision integers.
//!
//! The canonical text form is `a/b` with `b` omitted when it is 1; every
//! serializer downstream relies on this form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Reduced fraction with positive denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(numer: N, denom: D) -> Self {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), d))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.0)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }

    /// Floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Least integer >= self.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
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

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_int = |txt: &str, pos: usize| -> Result<BigInt, Error> {
            txt.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                pos,
                msg: format!("invalid integer `{txt}`"),
            })
        };
        match s.split_once('/') {
            None => Ok(Rational::from_int(parse_int(s, 0)?)),
            Some((a, b)) => {
                let num = parse_int(a, 0)?;
                let den = parse_int(b, a.len() + 1)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

/// Sign of a big integer as -1, 0, 1.
pub(crate) fn int_sign(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
        assert_eq!(q(0, 5), Rational::zero());
        assert_eq!(q(0, 5).to_string(), "0");
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!("7/3".parse::<Rational>().unwrap(), q(7, 3));
        assert_eq!("-5".parse::<Rational>().unwrap(), q(-5, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(q(5, 3).floor_int(), 1.into());
        assert_eq!(q(5, 3).ceil_int(), 2.into());
        assert_eq!(q(-5, 3).floor_int(), (-2).into());
        assert_eq!(q(6, 3).ceil_int(), 2.into());
    }
}
