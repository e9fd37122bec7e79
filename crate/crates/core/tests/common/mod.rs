#![allow(dead_code)]

//! Brute-force dense exterior algebra on small instances: the independent
//! oracle for every sign convention in the forms module. k-forms are maps
//! from sorted index subsets to coefficient polynomials; wedge signs come
//! from explicit inversion counting.

use std::collections::BTreeMap;

use gmcalc_core::forms::{FormN, FormTop, XiForm};
use gmcalc_core::{MPoly, Rational, Weights};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseForm {
    pub n_vars: usize,
    pub degree: usize,
    pub comps: BTreeMap<Vec<usize>, MPoly<Rational>>,
}

impl DenseForm {
    pub fn zero(n_vars: usize, degree: usize) -> Self {
        DenseForm {
            n_vars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn add_comp(&mut self, subset: Vec<usize>, p: MPoly<Rational>) {
        assert_eq!(subset.len(), self.degree);
        assert!(subset.windows(2).all(|w| w[0] < w[1]));
        if p.is_zero() {
            return;
        }
        let entry = self
            .comps
            .entry(subset)
            .or_insert_with(|| MPoly::zero(self.n_vars));
        *entry = entry.add(&p);
        if entry.is_zero() {
            let keys: Vec<_> = self
                .comps
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in keys {
                self.comps.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_comp(k.clone(), v.neg());
        }
        out
    }

    /// (one-form) ^ self, the one-form given by its dx_i coefficients.
    pub fn wedge_one_form(&self, one: &[MPoly<Rational>]) -> Self {
        let mut out = DenseForm::zero(self.n_vars, self.degree + 1);
        for (subset, coeff) in &self.comps {
            for (i, ci) in one.iter().enumerate() {
                if ci.is_zero() || subset.contains(&i) {
                    continue;
                }
                // insert i into the sorted subset; sign = (-1)^{position}
                let pos = subset.iter().filter(|&&j| j < i).count();
                let mut new_subset = subset.clone();
                new_subset.insert(pos, i);
                let mut term = ci.mul(coeff);
                if pos % 2 == 1 {
                    term = term.neg();
                }
                out.add_comp(new_subset, term);
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = DenseForm::zero(self.n_vars, self.degree + 1);
        for (subset, coeff) in &self.comps {
            for i in 0..self.n_vars {
                if subset.contains(&i) {
                    continue;
                }
                let di = coeff.derivative(i);
                if di.is_zero() {
                    continue;
                }
                let pos = subset.iter().filter(|&&j| j < i).count();
                let mut new_subset = subset.clone();
                new_subset.insert(pos, i);
                let mut term = di;
                if pos % 2 == 1 {
                    term = term.neg();
                }
                out.add_comp(new_subset, term);
            }
        }
        out
    }

    /// Contraction with the Euler field sum alpha_i x_i d/dx_i.
    pub fn contract_euler(&self, w: &Weights) -> Self {
        let mut out = DenseForm::zero(self.n_vars, self.degree - 1);
        for (subset, coeff) in &self.comps {
            for (pos, &i) in subset.iter().enumerate() {
                let field =
                    MPoly::var(self.n_vars, i).scale(&Rational::from_int(w.alphas()[i] as i64));
                let mut term = coeff.mul(&field);
                if pos % 2 == 1 {
                    term = term.neg();
                }
                let mut new_subset = subset.clone();
                new_subset.remove(pos);
                out.add_comp(new_subset, term);
            }
        }
        out
    }
}

pub fn from_top(top: &FormTop<Rational>) -> DenseForm {
    let n = top.n_vars();
    let mut out = DenseForm::zero(n, n);
    out.add_comp((0..n).collect(), top.coeff.clone());
    out
}

/// FormN stores sum (-1)^{i-1} a_i dxhat_i (1-indexed), i.e. component i
/// (0-indexed) contributes (-1)^i a_i on the subset omitting i.
pub fn from_form_n(psi: &FormN<Rational>) -> DenseForm {
    let n = psi.n_vars();
    let mut out = DenseForm::zero(n, n - 1);
    for (i, a) in psi.comps().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut term = a.clone();
        if i % 2 == 1 {
            term = term.neg();
        }
        out.add_comp(subset, term);
    }
    out
}

/// XiForm components carry no sign prefactor.
pub fn from_xi(xi: &XiForm<Rational>) -> DenseForm {
    let n = xi.n_vars();
    let mut out = DenseForm::zero(n, n.saturating_sub(2));
    for (&(u, v), c) in xi.comps() {
        let subset: Vec<usize> = (0..n).filter(|&j| j != u && j != v).collect();
        out.add_comp(subset, c.clone());
    }
    out
}

/// df as a 1-form.
pub fn one_form_df(f: &MPoly<Rational>) -> Vec<MPoly<Rational>> {
    (0..f.n_vars()).map(|i| f.derivative(i)).collect()
}
