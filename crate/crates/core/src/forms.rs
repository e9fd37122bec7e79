//! Polynomial differential forms in the three shapes the Brieskorn algebra
//! needs: top forms `P dx`, codimension-one forms, and the (n-1)-form
//! accumulator used by reduction certificates.
//!
//! A `FormN` stores components a_i for sum_i (-1)^{i-1} a_i dx-hat_i, signs
//! included, so wedge and derivative formulas are sign-free sums.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::mpoly::MPoly;
use crate::rational::Rational;
use crate::scalar::Field;
use crate::weights::Weights;

/// coeff * dx with dx = dx_1 ^ ... ^ dx_{n+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct FormTop<K> {
    pub coeff: MPoly<K>,
}

impl<K: Field> FormTop<K> {
    pub fn new(coeff: MPoly<K>) -> Self {
        FormTop { coeff }
    }

    pub fn n_vars(&self) -> usize {
        self.coeff.n_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// sum_i (-1)^{i-1} a_i dx-hat_i.
#[derive(Clone, PartialEq, Debug)]
pub struct FormN<K> {
    comps: Vec<MPoly<K>>,
}

impl<K: Field> FormN<K> {
    pub fn new(comps: Vec<MPoly<K>>) -> Self {
        assert!(!comps.is_empty());
        let n = comps[0].n_vars();
        assert!(comps.iter().all(|c| c.n_vars() == n));
        assert_eq!(comps.len(), n, "FormN needs one component per variable");
        FormN { comps }
    }

    pub fn zero(n_vars: usize) -> Self {
        FormN {
            comps: vec![MPoly::zero(n_vars); n_vars],
        }
    }

    pub fn comps(&self) -> &[MPoly<K>] {
        &self.comps
    }

    pub fn n_vars(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        FormN {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &MPoly<K>) -> Self {
        FormN {
            comps: self.comps.iter().map(|c| c.mul(p)).collect(),
        }
    }
}

/// The Euler form: components w_i x_i (eta of the defining equation), or with
/// integer weights alpha_i x_i when `integer` is set.
pub fn euler_form(w: &Weights) -> FormN<Rational> {
    let n = w.n_vars();
    let comps = (0..n).map(|i| MPoly::var(n, i).scale(&w.w(i))).collect();
    FormN::new(comps)
}

/// df ^ psi expanded under the FormN sign convention: (sum_i a_i df/dx_i) dx.
pub fn wedge_with_df<K: Field>(f: &MPoly<K>, psi: &FormN<K>) -> Result<FormTop<K>> {
    f.check_arity(psi.n_vars())?;
    let n = psi.n_vars();
    let mut acc = MPoly::zero(n);
    for (i, a) in psi.comps().iter().enumerate() {
        acc = acc.add(&a.mul(&f.derivative(i)));
    }
    Ok(FormTop::new(acc))
}

/// d(psi) = (sum_i da_i/dx_i) dx.
pub fn exterior_derivative<K: Field>(psi: &FormN<K>) -> FormTop<K> {
    let n = psi.n_vars();
    let mut acc = MPoly::zero(n);
    for (i, a) in psi.comps().iter().enumerate() {
        acc = acc.add(&a.derivative(i));
    }
    FormTop::new(acc)
}

/// Contraction of Q dx with the Euler field sum alpha_i x_i d/dx_i:
/// the FormN with components alpha_i x_i Q.
pub fn euler_contraction(omega: &FormTop<Rational>, w: &Weights) -> FormN<Rational> {
    let n = omega.n_vars();
    let comps = (0..n)
        .map(|i| {
            omega
                .coeff
                .mul(&MPoly::var(n, i))
                .scale(&Rational::from_int(w.alphas()[i] as i64))
        })
        .collect();
    FormN::new(comps)
}

/// An (n-1)-form sum_{i<j} c_{ij} e_{ij}, where e_{ij} is dx_1^..^dx_{n+1}
/// with dx_i and dx_j omitted (indices kept in increasing order, no sign
/// prefactor).
#[derive(Clone, PartialEq, Debug)]
pub struct XiForm<K> {
    n_vars: usize,
    comps: BTreeMap<(usize, usize), MPoly<K>>,
}

impl<K: Field> XiForm<K> {
    pub fn zero(n_vars: usize) -> Self {
        XiForm {
            n_vars,
            comps: BTreeMap::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> impl Iterator<Item = (&(usize, usize), &MPoly<K>)> {
        self.comps.iter()
    }

    pub fn add_comp(&mut self, i: usize, j: usize, p: MPoly<K>) {
        assert!(i < j && j < self.n_vars);
        if p.is_zero() {
            return;
        }
        match self.comps.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&p);
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
        for (&(i, j), p) in &other.comps {
            out.add_comp(i, j, p.clone());
        }
        out
    }

    pub fn scale_poly(&self, p: &MPoly<K>) -> Self {
        let mut out = XiForm::zero(self.n_vars);
        for (&(i, j), c) in &self.comps {
            out.add_comp(i, j, c.mul(p));
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = XiForm::zero(self.n_vars);
        for (&(i, j), p) in &self.comps {
            out.add_comp(i, j, p.scale(c));
        }
        out
    }

    /// d(Xi) as a FormN: from c e_{ij} the component a_j picks up
    /// (-1)^{i+j} dc/dx_i and a_i picks up -(-1)^{i+j} dc/dx_j
    /// (0-indexed; parity matches the 1-indexed convention).
    pub fn exterior_derivative(&self) -> FormN<K> {
        let mut comps = vec![MPoly::zero(self.n_vars); self.n_vars];
        for (&(i, j), c) in &self.comps {
            let di = c.derivative(i);
            let dj = c.derivative(j);
            if (i + j) % 2 == 0 {
                comps[j] = comps[j].add(&di);
                comps[i] = comps[i].sub(&dj);
            } else {
                comps[j] = comps[j].sub(&di);
                comps[i] = comps[i].add(&dj);
            }
        }
        FormN { comps }
    }
}

/// Contraction i_E(psi) of an n-form with the Euler field:
/// c_{uv} = (-1)^{u+v} (alpha_u x_u a_v - alpha_v x_v a_u), u < v.
pub fn euler_contract_n(psi: &FormN<Rational>, w: &Weights) -> XiForm<Rational> {
    let n = psi.n_vars();
    let mut out = XiForm::zero(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let au = &psi.comps()[u];
            let av = &psi.comps()[v];
            if au.is_zero() && av.is_zero() {
                continue;
            }
            let xu = MPoly::var(n, u).scale(&Rational::from_int(w.alphas()[u] as i64));
            let xv = MPoly::var(n, v).scale(&Rational::from_int(w.alphas()[v] as i64));
            let mut c = xu.mul(av).sub(&xv.mul(au));
            if (u + v) % 2 == 1 {
                c = c.neg();
            }
            out.add_comp(u, v, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Monomial;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn fermat(n: usize, m: u16) -> MPoly<Rational> {
        let mut g = MPoly::zero(n);
        for i in 0..n {
            let mut e = vec![0u16; n];
            e[i] = m;
            g.add_term(Monomial::new(e), q(1));
        }
        g
    }

    #[test]
    fn wedge_with_eta_is_euler_identity() {
        // g quasi-homogeneous, psi = eta: df ^ eta = g dx
        let w = Weights::unit(3, 3).unwrap();
        let g = fermat(3, 3);
        let eta = euler_form(&w);
        let top = wedge_with_df(&g, &eta).unwrap();
        assert_eq!(top.coeff, g);
    }

    #[test]
    fn wedge_zero_form() {
        let w = Weights::unit(3, 3).unwrap();
        let g = fermat(3, 3);
        let zero = FormN::zero(3);
        assert!(wedge_with_df(&g, &zero).unwrap().is_zero());
        let _ = w;
    }

    #[test]
    fn wedge_general_f_euler_identity() {
        // f = sum f_j, psi = eta: df ^ eta = sum (j/d) f_j dx
        let w = Weights::unit(5, 3).unwrap();
        let mut f = fermat(5, 3);
        f.add_term(Monomial::var(5, 0), q(-1));
        f.add_term(Monomial::var(5, 1), q(-1));
        let eta = euler_form(&w);
        let top = wedge_with_df(&f, &eta).unwrap();
        // expected: g + (1/3)*(-x1-x2)
        let mut expect = fermat(5, 3);
        expect.add_term(Monomial::var(5, 0), Rational::new(-1, 3));
        expect.add_term(Monomial::var(5, 1), Rational::new(-1, 3));
        assert_eq!(top.coeff, expect);
    }

    #[test]
    fn exterior_derivative_of_eta() {
        // d(eta) = (sum w_i) dx
        let w = Weights::new(vec![3, 2], 6).unwrap();
        let eta = euler_form(&w);
        let d = exterior_derivative(&eta);
        assert_eq!(d.coeff, MPoly::constant(2, Rational::new(5, 6)));
        // constant components differentiate to zero
        let c = FormN::new(vec![MPoly::one(2), MPoly::constant(2, q(7))]);
        assert!(exterior_derivative(&c).is_zero());
    }

    #[test]
    fn exterior_derivative_of_eta_beta() {
        // d(x^beta eta) = A_beta x^beta dx
        let w = Weights::unit(3, 3).unwrap();
        let beta = Monomial::new(vec![1, 0, 1]);
        let eta_b = euler_form(&w).scale_poly(&MPoly::monomial_term(beta.clone(), q(1)));
        let d = exterior_derivative(&eta_b);
        let expect = MPoly::monomial_term(beta.clone(), q(1)).scale(&w.a_beta(&beta));
        assert_eq!(d.coeff, expect);
    }

    #[test]
    fn euler_contraction_gives_eta_alpha() {
        let w = Weights::new(vec![3, 2], 6).unwrap();
        let dx = FormTop::new(MPoly::one(2));
        let c = euler_contraction(&dx, &w);
        // components alpha_i x_i
        assert_eq!(c.comps()[0], MPoly::var(2, 0).scale(&q(3)));
        assert_eq!(c.comps()[1], MPoly::var(2, 1).scale(&q(2)));
        let zero = FormTop::new(MPoly::zero(2));
        assert!(euler_contraction(&zero, &w).is_zero());
    }

    #[test]
    fn contraction_wedge_euler_identity() {
        // df ^ i_E(dx) = d * g * dx for homogeneous g
        let w = Weights::new(vec![3, 2], 6).unwrap();
        let g = MPoly::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), q(1)),
                (Monomial::new(vec![0, 3]), q(1)),
            ],
        );
        let contracted = euler_contraction(&FormTop::new(MPoly::one(2)), &w);
        let top = wedge_with_df(&g, &contracted).unwrap();
        assert_eq!(top.coeff, g.scale(&q(6)));
    }

    #[test]
    fn cartan_homotopy_on_forms() {
        // s * psi = d(i_E psi) + i_E(d psi) for homogeneous psi of form degree s
        let w = Weights::new(vec![1, 1, 1], 3).unwrap();
        // psi = x1 x2 dxhat_1 component (a_1 = x1 x2): form degree 2 + 2 = 4
        let mut comps = vec![MPoly::zero(3); 3];
        comps[0] = MPoly::from_terms(3, [(Monomial::new(vec![1, 1, 0]), q(1))]);
        let psi = FormN::new(comps);
        let s = 4i64;
        let lhs = psi.comps().to_vec();
        let d_ie = euler_contract_n(&psi, &w).exterior_derivative();
        let ie_d = euler_contraction(&exterior_derivative(&psi), &w);
        for i in 0..3 {
            let rhs = d_ie.comps()[i].add(&ie_d.comps()[i]);
            assert_eq!(lhs[i].scale(&q(s)), rhs, "component {i}");
        }
    }
}
