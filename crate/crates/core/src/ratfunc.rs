//! Reduced rational functions in `t`: the coefficient field Q(t).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// `num/den` with monic denominator and gcd(num, den) = 1; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let inv = den.leading_coeff().expect("nonzero denominator").inv();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(q))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }

    pub fn var() -> Self {
        RatFunc::from_poly(UniPoly::var())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule derivative d/dt.
    pub fn derivative(&self) -> Self {
        let num =
            self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        Self::normalized(num, &self.den * &self.den)
    }

    /// Evaluate at a rational point; None when the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

/// Cancel the gcd and make the denominator monic.
pub fn ratfunc_normalize(num: UniPoly, den: UniPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        // classical gcd trick keeps intermediate degrees down
        let g = self.den.gcd(&rhs.den);
        let lb = self.den.exact_div(&g).unwrap();
        let rb = rhs.den.exact_div(&g).unwrap();
        let num = self.num * rb.clone() + rhs.num * lb.clone();
        let den = &(&lb * &g) * &rb;
        RatFunc::normalized(num, den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let an = self.num.exact_div(&g1).unwrap();
        let bd = rhs.den.exact_div(&g1).unwrap();
        let bn = rhs.num.exact_div(&g2).unwrap();
        let ad = self.den.exact_div(&g2).unwrap();
        RatFunc::normalized(&an * &bn, &ad * &bd)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is mul by inverse
    fn div(self, rhs: RatFunc) -> RatFunc {
        self * rhs.inv()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        // (t^2 - t, t) -> (t - 1, 1)
        let r = ratfunc_normalize(UniPoly::from_ints(&[0, -1, 1]), UniPoly::var()).unwrap();
        assert_eq!(r, RatFunc::from_poly(UniPoly::from_ints(&[-1, 1])));
        // (2t, 2) -> (t, 1)
        let r = ratfunc_normalize(UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[2])).unwrap();
        assert_eq!(r, RatFunc::from_poly(UniPoly::var()));
        assert_eq!(
            ratfunc_normalize(UniPoly::one(), UniPoly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn normalize_example2_coefficient() {
        // 10(972t^2 - 192)/3 over (27t^3 - 16t)^2: reduced with monic denominator
        let num = UniPoly::from_ints(&[-192, 0, 972]).scale(&Rational::new(10, 3));
        let s = UniPoly::from_ints(&[0, -16, 0, 27]);
        let den = &s * &s;
        let r = ratfunc_normalize(num.clone(), den.clone()).unwrap();
        assert!(r.den().is_monic());
        assert_eq!(r.num().gcd(r.den()), UniPoly::one());
        // cross-multiplication equality with the input pair
        assert_eq!(r.num() * &den, &num * r.den());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dt (1/t) = -1/t^2
        let r = RatFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
        let d = r.derivative();
        assert_eq!(
            d,
            RatFunc::new(UniPoly::from_ints(&[-1]), UniPoly::from_ints(&[0, 0, 1])).unwrap()
        );
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(UniPoly::from_ints(&[1, 1]), UniPoly::var()).unwrap();
        let b = RatFunc::new(UniPoly::from_ints(&[-1, 1]), UniPoly::from_ints(&[1, 1])).unwrap();
        let prod = a.clone() * b.clone();
        assert_eq!(
            prod,
            RatFunc::new(UniPoly::from_ints(&[-1, 1]), UniPoly::var()).unwrap()
        );
        let back = prod / b;
        assert_eq!(back, a);
    }
}
