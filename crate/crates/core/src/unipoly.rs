//! Dense univariate polynomials in `t` over the rationals.
//!
//! Coefficient index equals the power of `t`; trailing zeros are trimmed and
//! the empty vector is the zero polynomial. The gcd goes through a primitive
//! pseudo-remainder sequence over the integers so that chained normalizations
//! (rational-function arithmetic, fraction-free solves) stay fast.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int_sign, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn var() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        UniPoly::from_coeffs(vals.iter().map(|&v| Rational::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Rational::one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| *c == Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Rational::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Euclidean division; panics only on zero divisor (callers check).
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() / lc.clone();
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &(dc * &c);
                    rem[k + i] = v;
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!(
                "exact division left remainder {r} for {self} / {divisor}"
            )))
        }
    }

    /// Monic gcd via a primitive pseudo-remainder sequence over the integers.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive_int_coeffs();
        let mut b = other.primitive_int_coeffs();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        UniPoly::from_coeffs(a.into_iter().map(Rational::from_int).collect()).monic()
    }

    pub fn lcm(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(other);
        (self.clone() * other.exact_div(&g).unwrap()).monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Rescale to integer coefficients with content 1 and positive leading coefficient.
    pub fn integer_normal_form(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let ints = self.primitive_int_coeffs();
        UniPoly::from_coeffs(ints.into_iter().map(Rational::from_int).collect())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }

    fn primitive_int_coeffs(&self) -> Vec<BigInt> {
        let den = self.denominator_lcm();
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if content.is_zero() {
            return Vec::new();
        }
        if int_sign(ints.last().unwrap()) < 0 {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        ints
    }

    /// Y-th cyclotomic polynomial, by dividing `t^n - 1` by the cyclotomic
    /// polynomials of the proper divisors of `n`.
    pub fn cyclotomic(n: u32) -> UniPoly {
        assert!(n >= 1);
        let mut coeffs = vec![Rational::zero(); n as usize + 1];
        coeffs[0] = -Rational::one();
        coeffs[n as usize] = Rational::one();
        let mut p = UniPoly::from_coeffs(coeffs);
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p.exact_div(&UniPoly::cyclotomic(d)).unwrap();
            }
        }
        p
    }
}

/// One pseudo-remainder step over the integers: lc(b)^k * a mod b.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b.last().unwrap().clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    while rem.len() > db {
        let c = rem.last().unwrap().clone();
        let k = rem.len() - 1 - db;
        for v in rem.iter_mut() {
            *v = &*v * &lc;
        }
        for (i, bc) in b.iter().enumerate() {
            let v = &rem[k + i] - &(bc * &c);
            rem[k + i] = v;
        }
        while rem.last().is_some_and(|v| v.is_zero()) {
            rem.pop();
        }
    }
    rem
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if int_sign(v.last().unwrap()) < 0 {
        content = -content;
    }
    for c in &mut v {
        *c = &*c / &content;
    }
    v
}

impl num_traits::Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
}

impl num_traits::One for UniPoly {
    fn one() -> Self {
        UniPoly::one()
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        (&self).mul(&rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = &out[i + j] + &(a * b);
                out[i + j] = v;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let coeff_str = if mag == Rational::one() && k > 0 {
                String::new()
            } else if mag.is_integer() || k == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => write!(f, "{coeff_str}")?,
                1 => write!(f, "{coeff_str}t")?,
                _ => write!(f, "{coeff_str}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Squarefree part, monic.
pub fn unipoly_squarefree(p: &UniPoly) -> Result<UniPoly> {
    p.squarefree_part()
}

/// Canonical form of a coefficient family: common polynomial gcd removed,
/// collective integer content 1, and the designated entry (or the first
/// nonzero one) carrying a positive leading coefficient.
pub fn normalize_family(polys: Vec<UniPoly>, sign_index: Option<usize>) -> Vec<UniPoly> {
    if polys.iter().all(|p| p.is_zero()) {
        return polys;
    }
    let mut g = UniPoly::zero();
    for p in &polys {
        g = g.gcd(p);
    }
    let mut out: Vec<UniPoly> = polys
        .iter()
        .map(|p| p.exact_div(&g).expect("gcd divides"))
        .collect();
    let mut den = BigInt::one();
    for p in &out {
        den = den.lcm(&p.denominator_lcm());
    }
    let mut content = BigInt::zero();
    for p in &out {
        for c in p.coeffs() {
            content = content.gcd(&(c.numer() * (&den / c.denom())));
        }
    }
    let scale = Rational::new(den, content);
    for p in out.iter_mut() {
        *p = p.scale(&scale);
    }
    let reference = sign_index
        .filter(|&i| !out[i].is_zero())
        .or_else(|| out.iter().position(|p| !p.is_zero()));
    if let Some(i) = reference {
        if out[i].leading_coeff().unwrap() < &Rational::zero() {
            for p in out.iter_mut() {
                *p = -p.clone();
            }
        }
    }
    out
}

/// N-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> UniPoly {
    UniPoly::cyclotomic(n)
}
