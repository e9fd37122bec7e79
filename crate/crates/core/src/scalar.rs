//! The coefficient-field abstraction.
//!
//! All polynomial and linear-algebra code is generic over [`Field`]; the
//! concrete instantiations used by the pipeline are `Rational` (Q),
//! `RatFunc` (Q(t)) and `CycloElem` (cyclotomic fields).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyclotomic::CycloElem;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// Commutative ring scalars: enough structure for matrices and polynomials.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Send
        + Sync
        + 'static
{
}

pub trait Field: Ring {
    /// Multiplicative inverse; panics on zero (callers check).
    fn inv(&self) -> Self;

    /// Canonical embedding of Q.
    fn from_rational(q: &Rational) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.clone() * rhs.inv()
    }

    /// Multiplier that brings a coefficient list into its canonical scale.
    ///
    /// Over Q(t) this clears denominators and integer content (content-free
    /// `Q[t]` form), which keeps the Groebner engine away from rational-function
    /// blowup. The default makes the designated leading coefficient 1.
    fn canonical_scale<'a>(leading: &Self, _rest: impl Iterator<Item = &'a Self>) -> Self
    where
        Self: 'a,
    {
        leading.inv()
    }

    /// Render a coefficient for use inside a polynomial term, parenthesized
    /// when the bare form would be ambiguous next to `*monomial`.
    fn coeff_string(&self) -> String {
        self.to_string()
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        Rational::inv(self)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        RatFunc::inv(self)
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::from_rational(q.clone())
    }

    fn canonical_scale<'a>(leading: &Self, rest: impl Iterator<Item = &'a Self>) -> Self {
        // lcm of all denominators over gcd of all numerators, sign-fixed so
        // the leading coefficient gets a positive leading numerator
        let mut den_lcm = leading.den().clone();
        let mut num_gcd = leading.num().clone();
        for c in rest {
            den_lcm = den_lcm.lcm(c.den());
            num_gcd = num_gcd.gcd(c.num());
        }
        let mut mult = RatFunc::new(den_lcm, num_gcd).expect("num gcd nonzero");
        let lead = leading.clone() * mult.clone();
        debug_assert!(lead.is_polynomial());
        let p = lead.as_polynomial().unwrap().integer_normal_form();
        let adjust =
            p.leading_coeff().unwrap().clone() / lead.num().leading_coeff().unwrap().clone();
        mult = mult * RatFunc::from_rational(adjust);
        mult
    }

    fn coeff_string(&self) -> String {
        let s = self.to_string();
        if self.is_polynomial() && self.num().degree() == Some(0) {
            s
        } else {
            format!("({s})")
        }
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        CycloElem::zero()
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
}

impl One for CycloElem {
    fn one() -> Self {
        CycloElem::one()
    }
}

impl Field for CycloElem {
    fn inv(&self) -> Self {
        CycloElem::inv(self)
    }

    fn from_rational(q: &Rational) -> Self {
        CycloElem::rational(q.clone())
    }

    fn coeff_string(&self) -> String {
        format!("({self})")
    }
}

/// Exact integer-power helper shared by evaluation code.
pub fn field_pow<K: Field>(base: &K, e: u32) -> K {
    let mut acc = K::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// Evaluate a univariate polynomial over any field through the canonical
/// embedding of its rational coefficients (Horner).
pub fn eval_unipoly_in<K: Field>(p: &UniPoly, x: &K) -> K {
    let mut acc = K::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x.clone() + K::from_rational(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfunc_canonical_scale_clears_to_content_free() {
        // coefficients (3/2)/(t), 6/(t^2): multiplier should make them
        // content-free polynomials in t
        let a = RatFunc::new(UniPoly::constant(Rational::new(3, 2)), UniPoly::var()).unwrap();
        let b = RatFunc::new(
            UniPoly::constant(Rational::from_int(6)),
            UniPoly::from_ints(&[0, 0, 1]),
        )
        .unwrap();
        let m = <RatFunc as Field>::canonical_scale(&a, [&b].into_iter());
        let ca = a * m.clone();
        let cb = b * m;
        assert!(ca.is_polynomial() && cb.is_polynomial());
        let lead = ca.as_polynomial().unwrap();
        assert!(lead.leading_coeff().unwrap() > &Rational::zero());
        assert_eq!(lead, &lead.integer_normal_form());
    }

    #[test]
    fn eval_unipoly_in_ratfunc() {
        // p = t^2 + 1 at x = 1/t gives (1 + t^2)/t^2
        let p = UniPoly::from_ints(&[1, 0, 1]);
        let x = RatFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
        let v = eval_unipoly_in(&p, &x);
        assert_eq!(
            v,
            RatFunc::new(
                UniPoly::from_ints(&[1, 0, 1]),
                UniPoly::from_ints(&[0, 0, 1])
            )
            .unwrap()
        );
    }
}
