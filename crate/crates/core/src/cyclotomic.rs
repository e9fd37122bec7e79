//! Elements of cyclotomic fields Q(zeta_N), stored modulo the N-th
//! cyclotomic polynomial.
//!
//! Coordinates are taken with respect to the powers zeta^0..zeta^{phi(N)-1}.
//! Order 0 denotes a plain rational constant; it coerces into any Q(zeta_N)
//! on the first mixed operation, which is what lets zero() and one() exist
//! without a fixed N.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    order: u32,
    coords: Vec<Rational>,
}

/// Euler totient by trial division; N stays small here.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

impl CycloElem {
    /// A rational constant (order-0 wildcard).
    pub fn rational(q: Rational) -> Self {
        CycloElem {
            order: 0,
            coords: vec![q],
        }
    }

    pub fn zero() -> Self {
        CycloElem::rational(Rational::zero())
    }

    pub fn one() -> Self {
        CycloElem::rational(Rational::one())
    }

    /// zeta_N^e, reduced modulo Phi_N.
    pub fn root_power(order: u32, e: u32) -> Self {
        assert!(order >= 1);
        let e = (e % order) as usize;
        let mut coords = vec![Rational::zero(); e + 1];
        coords[e] = Rational::one();
        CycloElem::from_coords(order, coords)
    }

    /// Build from coordinates of any length; reduces modulo Phi_N and pads.
    pub fn from_coords(order: u32, coords: Vec<Rational>) -> Self {
        assert!(order >= 1);
        let phi = euler_phi(order) as usize;
        let mut coords = reduce_mod_phi(order, coords);
        coords.resize(phi, Rational::zero());
        CycloElem { order, coords }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates w.r.t. zeta^0..zeta^{phi(N)-1}; length 1 for order 0.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    fn lift(&self, order: u32) -> Self {
        if self.order == order {
            return self.clone();
        }
        assert_eq!(
            self.order, 0,
            "cyclotomic order mismatch: {} vs {}",
            self.order, order
        );
        CycloElem::from_coords(order, self.coords.clone())
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let order = a.order.max(b.order);
        if order == 0 {
            (a.clone(), b.clone())
        } else {
            (a.lift(order), b.lift(order))
        }
    }

    fn as_unipoly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coords.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm with Phi_N.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero cyclotomic element");
        if self.order == 0 || self.is_rational() {
            let mut out = self.clone();
            out.coords = vec![self.coords[0].inv()];
            if self.order != 0 {
                out.coords
                    .resize(euler_phi(self.order) as usize, Rational::zero());
            }
            return out;
        }
        let phi = UniPoly::cyclotomic(self.order);
        let (g, _, v) = xgcd(&phi, &self.as_unipoly());
        assert_eq!(
            g.degree(),
            Some(0),
            "Phi_N and a nonzero element are coprime"
        );
        let scale = g.coeff(0).inv();
        CycloElem::from_coords(self.order, v.scale(&scale).coeffs().to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElem {
            order: self.order,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

/// In-place reduction of a coefficient vector modulo Phi_N.
fn reduce_mod_phi(order: u32, mut coords: Vec<Rational>) -> Vec<Rational> {
    let phi = euler_phi(order) as usize;
    if coords.len() <= phi {
        return coords;
    }
    let modulus = UniPoly::cyclotomic(order);
    let mc = modulus.coeffs();
    debug_assert_eq!(mc.len(), phi + 1);
    for k in (phi..coords.len()).rev() {
        let c = std::mem::replace(&mut coords[k], Rational::zero());
        if c.is_zero() {
            continue;
        }
        // subtract c * t^(k-phi) * Phi_N; leading coefficient of Phi_N is 1
        for (i, m) in mc.iter().enumerate().take(phi) {
            let v = &coords[k - phi + i] - &(m * &c);
            coords[k - phi + i] = v;
        }
    }
    coords.truncate(phi);
    coords
}

/// Extended gcd over `Q[t]`: returns (g, u, v) with u*a + v*b = g.
fn xgcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (UniPoly::one(), UniPoly::zero());
    let (mut v0, mut v1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let u = u0 - q.clone() * u1.clone();
        let v = v0 - q * v1.clone();
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
        v0 = std::mem::replace(&mut v1, v);
    }
    (r0, u0, v0)
}

impl Add for CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: CycloElem) -> CycloElem {
        let (a, b) = CycloElem::unify(&self, &rhs);
        CycloElem {
            order: a.order,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: CycloElem) -> CycloElem {
        self + (-rhs)
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            order: self.order,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: CycloElem) -> CycloElem {
        let (a, b) = CycloElem::unify(&self, &rhs);
        if a.order == 0 {
            return CycloElem::rational(a.coords[0].clone() * b.coords[0].clone());
        }
        let mut conv = vec![Rational::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let v = &conv[i + j] + &(x * y);
                conv[i + j] = v;
            }
        }
        CycloElem::from_coords(a.order, conv)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyclo({}): {}", self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn fourth_roots() {
        // i^2 = -1 in Q(zeta_4)
        let i = CycloElem::root_power(4, 1);
        let m1 = i.clone() * i.clone();
        assert_eq!(m1, CycloElem::rational(Rational::from_int(-1)).lift(4));
        // i^3 = -i
        let i3 = CycloElem::root_power(4, 3);
        assert_eq!(i3, -CycloElem::root_power(4, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CycloElem::from_coords(
            12,
            vec![
                Rational::from_int(1),
                Rational::from_int(2),
                Rational::new(1, 3),
                Rational::from_int(0),
            ],
        );
        let prod = a.clone() * a.inv();
        assert_eq!(prod, CycloElem::one().lift(12));
    }

    #[test]
    fn mul_matches_modular_reduction_oracle() {
        // oracle: multiply as plain polynomials, then reduce with UniPoly::div_rem
        let n = 12;
        let phi = UniPoly::cyclotomic(n);
        let samples = [
            vec![1i64, 0, -2, 3],
            vec![0, 1, 1, 0],
            vec![5, -1, 0, 2],
            vec![2, 2, 2, 2],
        ];
        for a in &samples {
            for b in &samples {
                let ca =
                    CycloElem::from_coords(n, a.iter().map(|&v| Rational::from_int(v)).collect());
                let cb =
                    CycloElem::from_coords(n, b.iter().map(|&v| Rational::from_int(v)).collect());
                let got = ca.clone() * cb.clone();
                let pa = UniPoly::from_ints(a);
                let pb = UniPoly::from_ints(b);
                let (_, r) = (pa * pb).div_rem(&phi);
                let want = CycloElem::from_coords(n, r.coeffs().to_vec());
                assert_eq!(got, want);
            }
        }
    }
}
