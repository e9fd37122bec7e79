//! Weighted gradings and the weighted graded reverse lexicographic order.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::mpoly::Monomial;
use crate::rational::Rational;

/// A weight vector alpha_1..alpha_{n+1} together with the degree d of the
/// polynomial under study; w_i = alpha_i/d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weights {
    alphas: Vec<u32>,
    degree_d: u32,
}

impl Weights {
    pub fn new(alphas: Vec<u32>, degree_d: u32) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::BadWeights("need at least two variables".into()));
        }
        if alphas.contains(&0) {
            return Err(Error::BadWeights("weights must be positive".into()));
        }
        let gcd = alphas.iter().fold(0u32, |g, &a| g.gcd(&a));
        if gcd != 1 {
            return Err(Error::BadWeights(format!("gcd of weights is {gcd}, not 1")));
        }
        if degree_d < 2 {
            return Err(Error::BadWeights(format!("degree d = {degree_d} < 2")));
        }
        Ok(Weights { alphas, degree_d })
    }

    pub fn unit(n_vars: usize, degree_d: u32) -> Result<Self> {
        Weights::new(vec![1; n_vars], degree_d)
    }

    pub fn n_vars(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn degree_d(&self) -> u32 {
        self.degree_d
    }

    /// w_i = alpha_i / d.
    pub fn w(&self, i: usize) -> Rational {
        Rational::new(self.alphas[i] as i64, self.degree_d as i64)
    }

    /// Weighted degree of a monomial.
    pub fn monomial_degree(&self, m: &Monomial) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.alphas)
            .map(|(&e, &a)| e as u64 * a as u64)
            .sum()
    }

    /// A_beta = sum (beta_i + 1) w_i.
    pub fn a_beta(&self, m: &Monomial) -> Rational {
        let num: i64 = m
            .exponents()
            .iter()
            .zip(&self.alphas)
            .map(|(&e, &a)| (e as i64 + 1) * a as i64)
            .sum();
        Rational::new(num, self.degree_d as i64)
    }

    /// Weights for the homogenization ring: x_0 (weight 1) appended last.
    pub fn homogenized(&self) -> Weights {
        let mut alphas = self.alphas.clone();
        alphas.push(1);
        Weights {
            alphas,
            degree_d: self.degree_d,
        }
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::new(self.alphas.clone())
    }
}

/// Weighted graded reverse lexicographic order.
///
/// Compares total weighted degree first; ties go to reverse lex, where the
/// monomial whose last differing exponent is larger is the smaller one. This
/// refines the weighted grading, so homogeneous ideals get homogeneous
/// normal forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<u32>) -> Self {
        MonomialOrder { weights }
    }

    pub fn n_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &a)| e as u64 * a as u64)
            .sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exponents().len(), self.weights.len());
        debug_assert_eq!(b.exponents().len(), self.weights.len());
        let da = self.weighted_degree(a);
        let db = self.weighted_degree(b);
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (ea, eb) in a.exponents().iter().zip(b.exponents().iter()).rev() {
            match ea.cmp(eb) {
                Ordering::Equal => {}
                // larger exponent later in the variable list means smaller
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Monomial;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn invariants_enforced() {
        assert!(Weights::new(vec![2, 4], 4).is_err());
        assert!(Weights::new(vec![1, 0], 3).is_err());
        assert!(Weights::new(vec![1, 1], 1).is_err());
        assert!(Weights::new(vec![3], 3).is_err());
        assert!(Weights::new(vec![3, 2], 6).is_ok());
    }

    #[test]
    fn grevlex_ordering() {
        let ord = MonomialOrder::new(vec![1, 1, 1]);
        // degree dominates
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
        // ties: last differing exponent larger => smaller
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn weighted_grevlex() {
        // weights (3,2): x^2 has degree 6, y^3 has degree 6; x^2 vs y^3 tie
        // broken by reverse lex: y^3 has larger last exponent, so y^3 < x^2
        let ord = MonomialOrder::new(vec![3, 2]);
        assert_eq!(ord.weighted_degree(&m(&[2, 0])), 6);
        assert_eq!(ord.weighted_degree(&m(&[0, 3])), 6);
        assert_eq!(ord.cmp(&m(&[2, 0]), &m(&[0, 3])), Ordering::Greater);
    }

    #[test]
    fn a_beta_values() {
        let w = Weights::new(vec![3, 2], 6).unwrap();
        assert_eq!(w.a_beta(&m(&[0, 0])), Rational::new(5, 6));
        assert_eq!(w.a_beta(&m(&[0, 1])), Rational::new(7, 6));
    }
}
