//! Buchberger-style Groebner engine with cofactor (lift) tracking.
//!
//! Every basis element remembers its expression in terms of the original
//! generators, so `normal_form` can return division quotients against the
//! input generators — the identities the Brieskorn reduction and the eta_f
//! lift depend on. Pairs are processed smallest-lcm first with the product
//! and chain criteria.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial};
use crate::scalar::Field;
use crate::weights::MonomialOrder;

/// Progress event for long-running basis computations.
#[derive(Debug, Clone)]
pub struct Progress {
    pub pairs_remaining: usize,
    pub basis_size: usize,
}

/// Cooperative cancellation and progress reporting.
pub trait ComputeControl: Sync {
    fn cancelled(&self) -> bool {
        false
    }
    fn on_progress(&self, _progress: &Progress) {}
}

/// Default control: never cancels, ignores progress.
pub struct NoControl;

impl ComputeControl for NoControl {}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<K> {
    order: MonomialOrder,
    originals: Vec<MPoly<K>>,
    gens: Vec<MPoly<K>>,
    lts: Vec<Monomial>,
    /// `gens[i] = sum_j cofactors[i][j] * originals[j]`
    cofactors: Vec<Vec<MPoly<K>>>,
}

/// Remainder plus one quotient per *original* generator;
/// input = remainder + sum `quotients[i]` * `originals[i]` exactly.
#[derive(Clone, Debug)]
pub struct DivisionResult<K> {
    pub remainder: MPoly<K>,
    pub quotients: Vec<MPoly<K>>,
}

pub fn groebner_basis<K: Field>(
    gens: &[MPoly<K>],
    order: MonomialOrder,
) -> Result<GroebnerBasis<K>> {
    groebner_basis_with(gens, order, &NoControl)
}

pub fn groebner_basis_with<K: Field>(
    gens: &[MPoly<K>],
    order: MonomialOrder,
    ctrl: &dyn ComputeControl,
) -> Result<GroebnerBasis<K>> {
    if gens.is_empty() || gens.iter().all(|g| g.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let n_vars = order.n_vars();
    for g in gens {
        g.check_arity(n_vars)?;
    }
    let n_orig = gens.len();

    // basis elements with cofactor rows
    let mut basis: Vec<(MPoly<K>, Vec<MPoly<K>>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut cof = vec![MPoly::zero(n_vars); n_orig];
        cof[i] = MPoly::one(n_vars);
        basis.push(canonical_scaled(g.clone(), cof, &order));
    }

    type PairKey = (u64, Reverse<Vec<u16>>, usize, usize);
    let pair_key = |order: &MonomialOrder, lcm: &Monomial, i: usize, j: usize| -> PairKey {
        let mut rev: Vec<u16> = lcm.exponents().to_vec();
        rev.reverse();
        (order.weighted_degree(lcm), Reverse(rev), i, j)
    };

    let lt = |p: &MPoly<K>| -> Monomial { p.leading_term(&order).unwrap().0.clone() };
    let mut lts: Vec<Monomial> = basis.iter().map(|(p, _)| lt(p)).collect();

    let mut pending: BTreeSet<PairKey> = BTreeSet::new();
    let mut handled: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pending.insert(pair_key(&order, &lts[i].lcm(&lts[j]), j, i));
        }
    }

    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        let (i, j) = (key.2, key.3);
        if ctrl.cancelled() {
            return Err(Error::Cancelled);
        }
        ctrl.on_progress(&Progress {
            pairs_remaining: pending.len(),
            basis_size: basis.len(),
        });
        handled.insert((i, j));

        // product criterion
        if lts[i].gcd_is_one(&lts[j]) {
            continue;
        }
        // chain criterion: some k with LT_k | lcm and both companion pairs done
        let lcm = lts[i].lcm(&lts[j]);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lts[k].divides(&lcm)
                && handled.contains(&(k.min(i), k.max(i)))
                && handled.contains(&(k.min(j), k.max(j)))
        });
        if chain {
            continue;
        }

        // S-polynomial with cofactor tracking
        let (pi, ci) = (&basis[i].0, &basis[i].1);
        let (pj, cj) = (&basis[j].0, &basis[j].1);
        let (lci, lcj) = (
            pi.leading_term(&order).unwrap().1.clone(),
            pj.leading_term(&order).unwrap().1.clone(),
        );
        let mi = lts[i].div_into(&lcm);
        let mj = lts[j].div_into(&lcm);
        let fi = lci.inv();
        let fj = -lcj.inv();
        let spoly = pi.mul_term(&mi, &fi).add(&pj.mul_term(&mj, &fj));
        let scof: Vec<MPoly<K>> = ci
            .iter()
            .zip(cj.iter())
            .map(|(a, b)| a.mul_term(&mi, &fi).add(&b.mul_term(&mj, &fj)))
            .collect();

        let polys: Vec<&MPoly<K>> = basis.iter().map(|(p, _)| p).collect();
        let (rem, qs) = divide(&spoly, &polys, &lts, &order);
        if rem.is_zero() {
            continue;
        }
        let mut rcof = scof;
        for (q, (_, ck)) in qs.iter().zip(basis.iter()) {
            if q.is_zero() {
                continue;
            }
            for (target, c) in rcof.iter_mut().zip(ck.iter()) {
                *target = target.sub(&q.mul(c));
            }
        }
        let new_idx = basis.len();
        let scaled = canonical_scaled(rem, rcof, &order);
        lts.push(lt(&scaled.0));
        basis.push(scaled);
        for k in 0..new_idx {
            pending.insert(pair_key(&order, &lts[k].lcm(&lts[new_idx]), k, new_idx));
        }
    }

    // drop redundant elements: keep those whose LT no retained LT divides
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| order.cmp(&lts[a], &lts[b]));
    let mut retained: Vec<usize> = Vec::new();
    for idx in order_idx {
        if !retained.iter().any(|&r| lts[r].divides(&lts[idx])) {
            retained.push(idx);
        }
    }

    // tail-reduce each retained element against the others
    let mut gens_out: Vec<MPoly<K>> = retained.iter().map(|&i| basis[i].0.clone()).collect();
    let mut cof_out: Vec<Vec<MPoly<K>>> = retained.iter().map(|&i| basis[i].1.clone()).collect();
    let lts_out: Vec<Monomial> = retained.iter().map(|&i| lts[i].clone()).collect();
    for i in 0..gens_out.len() {
        let others: Vec<&MPoly<K>> = gens_out
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p)
            .collect();
        let other_lts: Vec<Monomial> = (0..gens_out.len())
            .filter(|&k| k != i)
            .map(|k| lts_out[k].clone())
            .collect();
        let (rem, qs) = divide(&gens_out[i], &others, &other_lts, &order);
        debug_assert!(!rem.is_zero(), "retained basis element reduced to zero");
        let mut cof = cof_out[i].clone();
        for (q, k) in qs.iter().zip((0..gens_out.len()).filter(|&k| k != i)) {
            if q.is_zero() {
                continue;
            }
            let ck = cof_out[k].clone();
            for (target, c) in cof.iter_mut().zip(ck.iter()) {
                *target = target.sub(&q.mul(c));
            }
        }
        let (p, c) = canonical_scaled(rem, cof, &order);
        gens_out[i] = p;
        cof_out[i] = c;
    }

    let final_lts: Vec<Monomial> = gens_out
        .iter()
        .map(|p| p.leading_term(&order).unwrap().0.clone())
        .collect();
    let gb = GroebnerBasis {
        order,
        originals: gens.to_vec(),
        lts: final_lts,
        gens: gens_out,
        cofactors: cof_out,
    };
    debug_assert!(gb.verify_cofactors(), "cofactor identities must hold");
    debug_assert!(
        gb.verify_buchberger(),
        "all S-polynomials must reduce to zero"
    );
    Ok(gb)
}

fn canonical_scaled<K: Field>(
    p: MPoly<K>,
    cof: Vec<MPoly<K>>,
    order: &MonomialOrder,
) -> (MPoly<K>, Vec<MPoly<K>>) {
    let (_, lc) = p.leading_term(order).expect("nonzero polynomial");
    let rest: Vec<&K> = p.terms().map(|(_, c)| c).collect();
    let scale = K::canonical_scale(lc, rest.into_iter());
    (
        p.scale(&scale),
        cof.into_iter().map(|c| c.scale(&scale)).collect(),
    )
}

/// Multivariate division of `p` by `divisors` (leading terms pre-computed),
/// fully reducing every term. Returns (remainder, quotients per divisor).
fn divide<K: Field>(
    p: &MPoly<K>,
    divisors: &[&MPoly<K>],
    lts: &[Monomial],
    order: &MonomialOrder,
) -> (MPoly<K>, Vec<MPoly<K>>) {
    let n_vars = p.n_vars();
    let mut work = p.clone();
    let mut remainder = MPoly::zero(n_vars);
    let mut quotients = vec![MPoly::zero(n_vars); divisors.len()];
    while let Some((m, c)) = work
        .leading_term(order)
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        match (0..divisors.len()).find(|&k| lts[k].divides(&m)) {
            Some(k) => {
                let lc = divisors[k].leading_term(order).unwrap().1;
                let factor = c.div(lc);
                let shift = lts[k].div_into(&m);
                quotients[k].add_term(shift.clone(), factor.clone());
                work = work.sub(&divisors[k].mul_term(&shift, &factor));
            }
            None => {
                remainder.add_term(m.clone(), c.clone());
                work.add_term(m, -c);
            }
        }
    }
    (remainder, quotients)
}

impl<K: Field> GroebnerBasis<K> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[MPoly<K>] {
        &self.gens
    }

    pub fn originals(&self) -> &[MPoly<K>] {
        &self.originals
    }

    pub fn cofactors(&self) -> &[Vec<MPoly<K>>] {
        &self.cofactors
    }

    pub fn leading_terms(&self) -> &[Monomial] {
        &self.lts
    }

    pub fn n_vars(&self) -> usize {
        self.order.n_vars()
    }

    /// Remainder of p modulo the basis, without cofactor expansion.
    pub fn reduce(&self, p: &MPoly<K>) -> MPoly<K> {
        let polys: Vec<&MPoly<K>> = self.gens.iter().collect();
        divide(p, &polys, &self.lts, &self.order).0
    }

    /// Exact division identity against the *original* generators.
    pub fn normal_form(&self, p: &MPoly<K>) -> DivisionResult<K> {
        let polys: Vec<&MPoly<K>> = self.gens.iter().collect();
        let (remainder, qs) = divide(p, &polys, &self.lts, &self.order);
        let n_orig = self.originals.len();
        let mut quotients = vec![MPoly::zero(self.n_vars()); n_orig];
        for (q, cof) in qs.iter().zip(&self.cofactors) {
            if q.is_zero() {
                continue;
            }
            for (target, c) in quotients.iter_mut().zip(cof) {
                *target = target.add(&q.mul(c));
            }
        }
        let result = DivisionResult {
            remainder,
            quotients,
        };
        debug_assert!(
            self.verify_division(p, &result),
            "division identity must hold"
        );
        result
    }

    pub fn contains(&self, p: &MPoly<K>) -> bool {
        self.reduce(p).is_zero()
    }

    /// True iff every variable has a pure power among the leading terms.
    pub fn is_zero_dimensional(&self) -> bool {
        self.missing_pure_power().is_none()
    }

    /// First variable with no pure-power leading term, if any.
    pub fn missing_pure_power(&self) -> Option<usize> {
        let n = self.n_vars();
        (0..n).find(|&v| {
            !self.lts.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| i == v || e == 0)
            })
        })
    }

    /// The staircase: monomials not divisible by any leading term, sorted
    /// ascending in the monomial order.
    pub fn quotient_basis(&self) -> Result<Vec<Monomial>> {
        if let Some(var) = self.missing_pure_power() {
            return Err(Error::NonZeroDimensional { var });
        }
        let n = self.n_vars();
        let mut bounds = vec![0u16; n];
        for v in 0..n {
            bounds[v] = self
                .lts
                .iter()
                .filter(|m| {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| i == v || e == 0)
                })
                .map(|m| m.exp(v))
                .min()
                .expect("pure power exists");
        }
        let mut out = Vec::new();
        let mut current = vec![0u16; n];
        loop {
            let m = Monomial::new(current.clone());
            if !self.lts.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box [0, bounds)
            let mut v = 0;
            loop {
                if v == n {
                    out.sort_by(|a, b| self.order.cmp(a, b));
                    return Ok(out);
                }
                current[v] += 1;
                if current[v] < bounds[v] {
                    break;
                }
                current[v] = 0;
                v += 1;
            }
        }
    }

    fn verify_division(&self, p: &MPoly<K>, r: &DivisionResult<K>) -> bool {
        let mut acc = r.remainder.clone();
        for (q, g) in r.quotients.iter().zip(&self.originals) {
            acc = acc.add(&q.mul(g));
        }
        acc == *p
    }

    fn verify_cofactors(&self) -> bool {
        self.gens.iter().zip(&self.cofactors).all(|(g, cof)| {
            let mut acc = MPoly::zero(self.n_vars());
            for (c, o) in cof.iter().zip(&self.originals) {
                acc = acc.add(&c.mul(o));
            }
            acc == *g
        })
    }

    fn verify_buchberger(&self) -> bool {
        for i in 0..self.gens.len() {
            for j in 0..i {
                let lcm = self.lts[i].lcm(&self.lts[j]);
                let fi = self.gens[i].leading_term(&self.order).unwrap().1.inv();
                let fj = -self.gens[j].leading_term(&self.order).unwrap().1.inv();
                let s = self.gens[i]
                    .mul_term(&self.lts[i].div_into(&lcm), &fi)
                    .add(&self.gens[j].mul_term(&self.lts[j].div_into(&lcm), &fj));
                if !self.reduce(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn unit_order(n: usize) -> MonomialOrder {
        MonomialOrder::new(vec![1; n])
    }

    #[test]
    fn single_generator() {
        let x = MPoly::<Rational>::var(2, 0);
        let gb = groebner_basis(std::slice::from_ref(&x), unit_order(2)).unwrap();
        assert_eq!(gb.generators(), &[x]);
    }

    #[test]
    fn monomial_ideal_normalizes() {
        let gens = vec![
            MPoly::<Rational>::var(2, 0).scale(&q(2)),
            MPoly::<Rational>::var(2, 1)
                .mul(&MPoly::var(2, 1))
                .scale(&q(3)),
        ];
        let gb = groebner_basis(&gens, unit_order(2)).unwrap();
        let expect_x = MPoly::<Rational>::var(2, 0);
        let expect_y2 = MPoly::<Rational>::var(2, 1).mul(&MPoly::var(2, 1));
        assert_eq!(gb.generators(), &[expect_x, expect_y2]);
    }

    #[test]
    fn normal_form_examples() {
        // (x^2 + y) mod <x>: remainder y, quotient x
        let x = MPoly::<Rational>::var(2, 0);
        let y = MPoly::<Rational>::var(2, 1);
        let gb = groebner_basis(std::slice::from_ref(&x), unit_order(2)).unwrap();
        let p = x.mul(&x).add(&y);
        let r = gb.normal_form(&p);
        assert_eq!(r.remainder, y);
        assert_eq!(r.quotients, vec![x]);
    }

    #[test]
    fn quotient_basis_examples() {
        // Jacob(x^2+y^2) = <2x, 2y>: staircase {1}
        let gens = vec![
            MPoly::<Rational>::var(2, 0).scale(&q(2)),
            MPoly::<Rational>::var(2, 1).scale(&q(2)),
        ];
        let gb = groebner_basis(&gens, unit_order(2)).unwrap();
        assert!(gb.is_zero_dimensional());
        assert_eq!(gb.quotient_basis().unwrap(), vec![Monomial::unit(2)]);

        // Jacob(x^2+y^3) = <2x, 3y^2>: staircase {1, y}
        let gens = vec![
            MPoly::<Rational>::var(2, 0).scale(&q(2)),
            MPoly::<Rational>::var(2, 1)
                .mul(&MPoly::var(2, 1))
                .scale(&q(3)),
        ];
        let gb = groebner_basis(&gens, MonomialOrder::new(vec![3, 2])).unwrap();
        assert_eq!(
            gb.quotient_basis().unwrap(),
            vec![Monomial::unit(2), Monomial::var(2, 1)]
        );
    }

    #[test]
    fn non_zero_dimensional_detected() {
        let xy = MPoly::<Rational>::var(2, 0).mul(&MPoly::var(2, 1));
        let gb = groebner_basis(&[xy], unit_order(2)).unwrap();
        assert!(!gb.is_zero_dimensional());
        assert_eq!(
            gb.quotient_basis(),
            Err(Error::NonZeroDimensional { var: 0 })
        );
    }

    #[test]
    fn cyclic_like_ideal_membership() {
        // <x+y, xy-1>: x^2+1 should be in the ideal (y = -x => -x^2=1)
        let x = MPoly::<Rational>::var(2, 0);
        let y = MPoly::<Rational>::var(2, 1);
        let gens = vec![x.add(&y), x.mul(&y).sub(&MPoly::one(2))];
        let gb = groebner_basis(&gens, unit_order(2)).unwrap();
        let p = x.mul(&x).add(&MPoly::one(2));
        assert!(gb.contains(&p));
        assert!(!gb.contains(&x));
    }

    #[test]
    fn idempotence_and_membership_soundness() {
        let x = MPoly::<Rational>::var(3, 0);
        let y = MPoly::<Rational>::var(3, 1);
        let z = MPoly::<Rational>::var(3, 2);
        let gens = vec![
            x.mul(&x).sub(&y),
            y.mul(&y).sub(&z),
            x.mul(&y).mul(&z).sub(&MPoly::one(3)),
        ];
        let gb = groebner_basis(&gens, unit_order(3)).unwrap();
        let p = x.mul(&y).add(&z.mul(&z)).add(&x);
        let r = gb.normal_form(&p);
        // idempotence
        let r2 = gb.normal_form(&r.remainder);
        assert_eq!(r2.remainder, r.remainder);
        assert!(r2.quotients.iter().all(|qq| qq.is_zero()));
        // membership soundness: p - remainder is in the ideal
        assert!(gb.contains(&p.sub(&r.remainder)));
    }

    #[test]
    fn cancellation() {
        struct CancelNow;
        impl ComputeControl for CancelNow {
            fn cancelled(&self) -> bool {
                true
            }
        }
        let x = MPoly::<Rational>::var(2, 0);
        let y = MPoly::<Rational>::var(2, 1);
        let gens = vec![x.mul(&x).sub(&y), x.mul(&y).sub(&MPoly::one(2))];
        assert_eq!(
            groebner_basis_with(&gens, unit_order(2), &CancelNow)
                .err()
                .unwrap(),
            Error::Cancelled
        );
    }

    #[test]
    fn progress_reported() {
        use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
        struct Count(AtomicUsize);
        impl ComputeControl for Count {
            fn on_progress(&self, _p: &Progress) {
                self.0.fetch_add(1, AtomicOrdering::Relaxed);
            }
        }
        let x = MPoly::<Rational>::var(2, 0);
        let y = MPoly::<Rational>::var(2, 1);
        let gens = vec![x.mul(&x).sub(&y), x.mul(&y).sub(&MPoly::one(2))];
        let counter = Count(AtomicUsize::new(0));
        groebner_basis_with(&gens, unit_order(2), &counter).unwrap();
        assert!(counter.0.load(AtomicOrdering::Relaxed) > 0);
    }

    #[test]
    fn homogeneous_quotients_stay_homogeneous() {
        use crate::weights::Weights;
        // weighted-homogeneous generators, homogeneous input
        let w = Weights::new(vec![3, 2], 6).unwrap();
        let x = MPoly::<Rational>::var(2, 0);
        let y = MPoly::<Rational>::var(2, 1);
        let gens = vec![x.scale(&q(2)), y.mul(&y).scale(&q(3))];
        let gb = groebner_basis(&gens, w.order()).unwrap();
        // p = x^2 + x y^2, homogeneous? deg(x^2)=6, deg(xy^2)=7 -> use one part
        let p = x.mul(&x).add(&x.mul(&y).mul(&y));
        for (_, part) in p.homogeneous_parts(&w).unwrap() {
            let r = gb.normal_form(&part);
            assert!(r.remainder.is_homogeneous(&w));
            for (quot, orig) in r.quotients.iter().zip(gb.originals()) {
                if !quot.is_zero() {
                    assert!(quot.is_homogeneous(&w));
                    let _ = orig;
                }
            }
        }
    }
}
