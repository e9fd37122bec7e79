//! Sparse multivariate polynomials over a coefficient field.
//!
//! Exponent vectors are dense fixed-length sequences; the target instances
//! stay below eight variables, so simplicity beats sparse exponents. Terms
//! live in a BTreeMap keyed by plain lexicographic order of the exponent
//! vector, which fixes iteration order; the *monomial order* used for leading
//! terms and printing is always an explicit [`MonomialOrder`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Field;
use crate::weights::{MonomialOrder, Weights};

type Exps = SmallVec<[u16; 8]>;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(Exps::from_vec(exps))
    }

    pub fn unit(n_vars: usize) -> Self {
        Monomial(std::iter::repeat_n(0, n_vars).collect())
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut m = Monomial::unit(n_vars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self; caller guarantees divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent of variable i.
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<K> {
    n_vars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> MPoly<K> {
    pub fn zero(n_vars: usize) -> Self {
        MPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: K) -> Self {
        let mut p = MPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(n_vars), c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        MPoly::constant(n_vars, K::one())
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        MPoly::monomial_term(Monomial::var(n_vars, i), K::one())
    }

    pub fn monomial_term(m: Monomial, c: K) -> Self {
        let n_vars = m.n_vars();
        let mut p = MPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = MPoly::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        debug_assert_eq!(m.n_vars(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.n_vars);
        }
        MPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.n_vars);
        }
        MPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one(self.n_vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let factor = K::from_rational(&Rational::from_int(e as i64));
            out.add_term(m.with_exp(var, e - 1), c.clone() * factor);
        }
        out
    }

    /// Leading term with respect to the given order.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &K)> {
        self.terms.iter().max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    if v.is_zero() {
                        None
                    } else {
                        Some((m.clone(), v))
                    }
                })
                .collect(),
        }
    }

    /// Terms sorted descending by the monomial order.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &K)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        v
    }

    /// Canonical text form: terms descending by `ord`, variables named by `names`.
    pub fn display(&self, names: &[String], ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let cs = c.coeff_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !cs.starts_with("(-") => (true, rest.to_string()),
                _ => (false, cs),
            };
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mono = monomial_string(m, names);
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{mag}*{mono}");
            }
        }
        out
    }

    /// Default variable names x1..xn.
    pub fn display_default(&self, ord: &MonomialOrder) -> String {
        let names: Vec<String> = (1..=self.n_vars).map(|i| format!("x{i}")).collect();
        self.display(&names, ord)
    }

    pub fn check_arity(&self, expected: usize) -> Result<()> {
        if self.n_vars != expected {
            Err(Error::ArityMismatch {
                expected,
                got: self.n_vars,
            })
        } else {
            Ok(())
        }
    }
}

fn monomial_string(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Polynomials over Q get extra structure used by the reduction engine.
impl MPoly<Rational> {
    /// max over terms of alpha.beta; None for the zero polynomial.
    pub fn weighted_degree(&self, w: &Weights) -> Result<Option<u64>> {
        self.check_arity(w.n_vars())?;
        Ok(self.terms.keys().map(|m| w.monomial_degree(m)).max())
    }

    /// Split into weighted-homogeneous parts, indexed by degree.
    pub fn homogeneous_parts(&self, w: &Weights) -> Result<BTreeMap<u64, MPoly<Rational>>> {
        self.check_arity(w.n_vars())?;
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut parts: BTreeMap<u64, MPoly<Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = w.monomial_degree(m);
            parts
                .entry(d)
                .or_insert_with(|| MPoly::zero(self.n_vars))
                .add_term(m.clone(), c.clone());
        }
        Ok(parts)
    }

    pub fn is_homogeneous(&self, w: &Weights) -> bool {
        let mut degs = self.terms.keys().map(|m| w.monomial_degree(m));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Homogenization F = sum_j f_j x0^{d-j} with x0 appended as the last
    /// variable (weight 1); restricting to x0 = 1 recovers f.
    pub fn homogenize(&self, w: &Weights) -> Result<MPoly<Rational>> {
        self.check_arity(w.n_vars())?;
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = w.degree_d();
        let deg = self.weighted_degree(w)?.unwrap();
        if deg != d as u64 {
            return Err(Error::BadWeights(format!(
                "weighted degree of f is {deg}, but weights declare d = {d}"
            )));
        }
        let n = self.n_vars;
        let mut out = MPoly::zero(n + 1);
        for (m, c) in &self.terms {
            let j = w.monomial_degree(m);
            let mut exps = m.exponents().to_vec();
            exps.push((d as u64 - j) as u16);
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }
}

/// Free-function aliases for the grading operations.
pub fn weighted_degree(p: &MPoly<Rational>, w: &Weights) -> Result<Option<u64>> {
    p.weighted_degree(w)
}

pub fn homogeneous_parts(
    p: &MPoly<Rational>,
    w: &Weights,
) -> Result<BTreeMap<u64, MPoly<Rational>>> {
    p.homogeneous_parts(w)
}

pub fn homogenize(p: &MPoly<Rational>, w: &Weights) -> Result<MPoly<Rational>> {
    p.homogenize(w)
}
