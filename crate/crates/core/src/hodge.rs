//! Hodge-theoretic outputs: the d_beta search over the homogenized Jacobian,
//! the mixed-Hodge basis report, dimension tables, the Hodge-cycle criterion,
//! Griffiths-Steenbrink basis labels, and the Fermat Hodge-cycle lattice.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::brieskorn::{nabla_power_eta, ConnectionData, EtaCoords};
use crate::cyclotomic::{euler_phi, CycloElem};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::matrix::{EchelonSpan, Mat};
use crate::milnor::MilnorData;
use crate::mpoly::{MPoly, Monomial};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::scalar::Field;
use crate::unipoly::UniPoly;
use crate::weights::Weights;

/// How a d_beta family was computed.
#[derive(Clone, Debug, PartialEq)]
pub enum DBetaMode {
    /// Greedy search in the specialization at a rational regular value b.
    Specialized { b: Rational },
    /// Greedy search over Q(t); valid away from the roots of the recorded
    /// exceptional polynomial.
    Symbolic,
}

/// Per-basis-element extension depths for the homogenized Milnor algebra,
/// together with the witness family they index.
#[derive(Clone, Debug)]
pub struct DBetaMap {
    pub mode: DBetaMode,
    /// d_beta per basis element, aligned with the canonical basis order.
    pub d_beta: Vec<usize>,
    /// dim of the homogenized Milnor algebra, (d-1)*mu on success.
    pub dim_vtilde: usize,
    /// Squarefree polynomial whose roots contain the candidate exceptional
    /// values; only produced by the symbolic route (superset behavior).
    pub exceptional_poly: Option<UniPoly>,
}

impl DBetaMap {
    /// The ordered witness family {x0^{b0} x^beta : 0 <= b0 < d_beta}.
    pub fn witness(&self) -> Vec<(usize, u16)> {
        let mut out = Vec::new();
        for (idx, &db) in self.d_beta.iter().enumerate() {
            for b0 in 0..db {
                out.push((idx, b0 as u16));
            }
        }
        out
    }

    pub fn sum(&self) -> usize {
        self.d_beta.iter().sum()
    }
}

/// The homogenized Jacobian system over a coefficient field.
pub struct HomogenizedSystem<K> {
    pub gb: GroebnerBasis<K>,
    pub staircase: Vec<Monomial>,
    pub weights: Weights,
}

/// Monomial x0^{b0} x^beta in the homogenization ring (x0 last).
fn extended_monomial(beta: &Monomial, b0: u16) -> Monomial {
    let mut e = beta.exponents().to_vec();
    e.push(b0);
    Monomial::new(e)
}

/// Partials of F - b x0^d over Q, b rational.
pub fn homogenized_system_at(
    data: &MilnorData,
    b: &Rational,
) -> Result<HomogenizedSystem<Rational>> {
    let w = data.weights();
    let hw = w.homogenized();
    let n1 = hw.n_vars();
    let mut f_b = data.f().homogenize(w)?;
    let x0_d = Monomial::unit(n1).with_exp(n1 - 1, w.degree_d() as u16);
    f_b.add_term(x0_d, -b.clone());
    let gens: Vec<MPoly<Rational>> = (0..n1).map(|i| f_b.derivative(i)).collect();
    let gb = groebner_basis(&gens, hw.order())?;
    let staircase = gb.quotient_basis().map_err(|_| exceptional(data, b, 0))?;
    Ok(HomogenizedSystem {
        gb,
        staircase,
        weights: hw,
    })
}

/// Partials of F - t x0^d over Q(t).
pub fn homogenized_system_qt(data: &MilnorData) -> Result<HomogenizedSystem<RatFunc>> {
    let w = data.weights();
    let hw = w.homogenized();
    let n1 = hw.n_vars();
    let f_hom = data.f().homogenize(w)?;
    let mut f_t: MPoly<RatFunc> = f_hom.map_coeffs(|c| RatFunc::from_rational(c.clone()));
    let x0_d = Monomial::unit(n1).with_exp(n1 - 1, w.degree_d() as u16);
    f_t.add_term(x0_d, -RatFunc::var());
    let gens: Vec<MPoly<RatFunc>> = (0..n1).map(|i| f_t.derivative(i)).collect();
    let gb = groebner_basis(&gens, hw.order())?;
    let staircase = gb.quotient_basis()?;
    Ok(HomogenizedSystem {
        gb,
        staircase,
        weights: hw,
    })
}

fn exceptional(data: &MilnorData, b: &Rational, got: usize) -> Error {
    Error::ExceptionalValue {
        b: b.to_string(),
        got,
        expected: (data.weights().degree_d() as usize - 1) * data.mu,
    }
}

fn staircase_coords<K: Field>(sys: &HomogenizedSystem<K>, m: &Monomial) -> Result<Vec<K>> {
    let nf = sys.gb.reduce(&MPoly::monomial_term(m.clone(), K::one()));
    let mut v = vec![K::zero(); sys.staircase.len()];
    for (mono, c) in nf.terms() {
        let idx = sys
            .staircase
            .iter()
            .position(|s| s == mono)
            .ok_or_else(|| Error::Internal(format!("normal form off the staircase at {mono:?}")))?;
        v[idx] = c.clone();
    }
    Ok(v)
}

/// Round-robin greedy extension in canonical basis order: in each round try
/// to extend each d_beta by one, testing independence of the normal form of
/// x0^{d_beta} x^beta against the echelon span; stop when a full round adds
/// nothing.
fn greedy_d_beta<K: Field>(
    data: &MilnorData,
    sys: &HomogenizedSystem<K>,
    mut on_pivot: impl FnMut(&K),
) -> Result<Vec<usize>> {
    let dim = sys.staircase.len();
    let mut span = EchelonSpan::new(dim);
    let mut d_beta = vec![0usize; data.mu];
    loop {
        let mut extended = false;
        for (idx, beta) in data.basis.iter().enumerate() {
            let cand = extended_monomial(beta, d_beta[idx] as u16);
            let coords = staircase_coords(sys, &cand)?;
            if span.insert_with(coords, |p| on_pivot(p)) {
                d_beta[idx] += 1;
                extended = true;
            }
        }
        if !extended {
            return Ok(d_beta);
        }
    }
}

/// Extension-depth search at a rational regular value b.
pub fn compute_d_beta(data: &MilnorData, b: &Rational) -> Result<DBetaMap> {
    if data.s_poly.eval(b).is_zero() {
        return Err(Error::CriticalValue(b.to_string()));
    }
    let expected = (data.weights().degree_d() as usize - 1) * data.mu;
    let sys = homogenized_system_at(data, b)?;
    if sys.staircase.len() != expected {
        return Err(exceptional(data, b, sys.staircase.len()));
    }
    let d_beta = greedy_d_beta(data, &sys, |_| {})?;
    let total: usize = d_beta.iter().sum();
    if total != expected {
        return Err(exceptional(data, b, total));
    }
    check_d_beta_bound(data, &d_beta)?;
    Ok(DBetaMap {
        mode: DBetaMode::Specialized { b: b.clone() },
        d_beta,
        dim_vtilde: expected,
        exceptional_poly: None,
    })
}

/// Retry policy used by default runs: b, b+1, b+2 on exceptional or critical
/// values.
pub fn compute_d_beta_with_retry(data: &MilnorData, b0: &Rational) -> Result<DBetaMap> {
    let mut b = b0.clone();
    let mut last = None;
    for _ in 0..3 {
        match compute_d_beta(data, &b) {
            Ok(map) => return Ok(map),
            Err(e @ (Error::ExceptionalValue { .. } | Error::CriticalValue(_))) => {
                last = Some(e);
                b = b + Rational::from_int(1);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Fully symbolic route over Q(t); records the pivot factors whose roots
/// contain the candidate exceptional values.
pub fn compute_d_beta_symbolic(data: &MilnorData) -> Result<DBetaMap> {
    let expected = (data.weights().degree_d() as usize - 1) * data.mu;
    let sys = homogenized_system_qt(data)?;
    if sys.staircase.len() != expected {
        return Err(Error::Internal(format!(
            "symbolic homogenized dimension {} != (d-1)mu = {expected}",
            sys.staircase.len()
        )));
    }
    let mut pivot_product = UniPoly::one();
    let d_beta = greedy_d_beta(data, &sys, |p: &RatFunc| {
        if !p.num().is_zero() {
            pivot_product = &pivot_product * p.num();
        }
        if p.den().degree().unwrap_or(0) > 0 {
            pivot_product = &pivot_product * p.den();
        }
    })?;
    let total: usize = d_beta.iter().sum();
    if total != expected {
        return Err(Error::Internal(format!(
            "symbolic d_beta sum {total} != (d-1)mu = {expected}"
        )));
    }
    check_d_beta_bound(data, &d_beta)?;
    let exceptional_poly = Some(pivot_product.squarefree_part()?.integer_normal_form());
    Ok(DBetaMap {
        mode: DBetaMode::Symbolic,
        d_beta,
        dim_vtilde: expected,
        exceptional_poly,
    })
}

fn check_d_beta_bound(data: &MilnorData, d_beta: &[usize]) -> Result<()> {
    let d = Rational::from_int(data.weights().degree_d() as i64);
    let n2 = Rational::from_int(data.n_vars() as i64 + 1);
    for (idx, &db) in d_beta.iter().enumerate() {
        let bound = d.clone() * (n2.clone() - data.degrees[idx].clone());
        if !(Rational::from_int(db as i64) < bound) {
            return Err(Error::Internal(format!(
                "d_beta bound violated at index {idx}: {db} >= {bound}"
            )));
        }
    }
    Ok(())
}

/// Test a user-supplied d_beta table for linear independence of its witness
/// family in the specialization at b.
pub fn check_family_independent(data: &MilnorData, b: &Rational, d_beta: &[usize]) -> Result<bool> {
    if d_beta.len() != data.mu {
        return Err(Error::ArityMismatch {
            expected: data.mu,
            got: d_beta.len(),
        });
    }
    let sys = homogenized_system_at(data, b)?;
    let mut span = EchelonSpan::new(sys.staircase.len());
    for (idx, &db) in d_beta.iter().enumerate() {
        for b0 in 0..db {
            let cand = extended_monomial(&data.basis[idx], b0 as u16);
            if !span.insert(staircase_coords(&sys, &cand)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimensions of the graded Hodge pieces, from the A_beta statistics alone.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionTable {
    pub fiber_dim: usize,
    pub mu: usize,
    /// k -> #{beta : A_beta = k} (weight n+1).
    pub weight_np1: BTreeMap<u32, usize>,
    /// k -> #{beta : k-1 < A_beta < k} (weight n).
    pub weight_n: BTreeMap<u32, usize>,
}

pub fn hodge_dimensions(data: &MilnorData) -> DimensionTable {
    let mut weight_np1 = BTreeMap::new();
    let mut weight_n = BTreeMap::new();
    for a in &data.degrees {
        if a.is_integer() {
            let k = u32::try_from(i64::try_from(a.numer().clone()).unwrap()).unwrap();
            *weight_np1.entry(k).or_insert(0) += 1;
        } else {
            let k = u32::try_from(i64::try_from(a.ceil_int()).unwrap()).unwrap();
            *weight_n.entry(k).or_insert(0) += 1;
        }
    }
    DimensionTable {
        fiber_dim: data.fiber_dim(),
        mu: data.mu,
        weight_np1,
        weight_n,
    }
}

/// One basis element of a graded piece: nabla^k eta_beta with coordinates.
#[derive(Clone, Debug)]
pub struct HodgeEntry {
    pub beta: usize,
    pub k: u32,
    pub coords: EtaCoords,
}

/// The mixed-Hodge-compatible basis organized by (weight, k).
#[derive(Clone, Debug)]
pub struct HodgeReport {
    pub dims: DimensionTable,
    pub weight_np1: BTreeMap<u32, Vec<HodgeEntry>>,
    pub weight_n: BTreeMap<u32, Vec<HodgeEntry>>,
}

/// Integers k with A_beta + 1/d <= k <= A_beta + d_beta/d.
fn weight_n_window(a: &Rational, d: u32, d_beta: usize) -> Vec<u32> {
    let lo = a.clone() + Rational::new(1, d as i64);
    let hi = a.clone() + Rational::new(d_beta as i64, d as i64);
    let lo_int = lo.ceil_int();
    let hi_int = hi.floor_int();
    let mut out = Vec::new();
    let mut k = lo_int;
    while k <= hi_int {
        out.push(u32::try_from(i64::try_from(k.clone()).unwrap()).unwrap());
        k += 1;
    }
    out
}

pub fn hodge_basis(
    data: &MilnorData,
    conn: &ConnectionData,
    dmap: &DBetaMap,
) -> Result<HodgeReport> {
    let dims = hodge_dimensions(data);
    let d = data.weights().degree_d();
    let mut weight_np1: BTreeMap<u32, Vec<HodgeEntry>> = BTreeMap::new();
    let mut weight_n: BTreeMap<u32, Vec<HodgeEntry>> = BTreeMap::new();
    for (idx, a) in data.degrees.iter().enumerate() {
        if a.is_integer() {
            let k = u32::try_from(i64::try_from(a.numer().clone()).unwrap()).unwrap();
            weight_np1.entry(k).or_default().push(HodgeEntry {
                beta: idx,
                k,
                coords: nabla_power_eta(idx, k, data, conn),
            });
        }
        for k in weight_n_window(a, d, dmap.d_beta[idx]) {
            weight_n.entry(k).or_default().push(HodgeEntry {
                beta: idx,
                k,
                coords: nabla_power_eta(idx, k, data, conn),
            });
        }
    }
    // bookkeeping: entry counts must reproduce the dimension table
    for (map, dims_map, weight) in [
        (&weight_np1, &dims.weight_np1, data.fiber_dim() + 1),
        (&weight_n, &dims.weight_n, data.fiber_dim()),
    ] {
        for (k, entries) in map.iter() {
            let expected = dims_map.get(k).copied().unwrap_or(0);
            if entries.len() != expected {
                return Err(Error::DimensionMismatch {
                    weight,
                    k: *k,
                    got: entries.len(),
                    expected,
                });
            }
        }
        for (k, &expected) in dims_map.iter() {
            if expected > 0 && !map.contains_key(k) {
                return Err(Error::DimensionMismatch {
                    weight,
                    k: *k,
                    got: 0,
                    expected,
                });
            }
        }
    }
    let total: usize = weight_np1.values().map(Vec::len).sum::<usize>()
        + weight_n.values().map(Vec::len).sum::<usize>();
    if total != data.mu {
        return Err(Error::Internal(format!(
            "Hodge basis has {total} elements, mu = {}",
            data.mu
        )));
    }
    Ok(HodgeReport {
        dims,
        weight_np1,
        weight_n,
    })
}

/// The index set and functionals of the Hodge-cycle criterion.
#[derive(Clone, Debug)]
pub struct HodgeCriterion {
    /// Pairs (basis index, k).
    pub pairs: Vec<(usize, u32)>,
    pub functionals: Vec<EtaCoords>,
}

impl HodgeCriterion {
    /// Denominator-cleared, content-free functional with the first nonzero
    /// coordinate carrying a positive leading coefficient.
    pub fn cleared_functional(&self, i: usize) -> Vec<UniPoly> {
        let coords = &self.functionals[i].0;
        let mut den = UniPoly::one();
        for c in coords {
            den = den.lcm(c.den());
        }
        let cleared: Vec<UniPoly> = coords
            .iter()
            .map(|c| c.num() * &den.exact_div(c.den()).expect("lcm divides"))
            .collect();
        crate::unipoly::normalize_family(cleared, None)
    }
}

pub fn hodge_cycle_criterion(
    data: &MilnorData,
    conn: &ConnectionData,
    dmap: &DBetaMap,
) -> Result<HodgeCriterion> {
    let n = data.fiber_dim();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let d = data.weights().degree_d();
    let half_n = Rational::new(n as i64, 2);
    let mut pairs = Vec::new();
    for (idx, a) in data.degrees.iter().enumerate() {
        if a.is_integer() {
            continue;
        }
        for k in weight_n_window(a, d, dmap.d_beta[idx]) {
            if Rational::from_int(k as i64) <= half_n {
                pairs.push((idx, k));
            }
        }
    }
    let functionals: Vec<EtaCoords> = pairs
        .iter()
        .map(|&(idx, k)| nabla_power_eta(idx, k, data, conn))
        .collect();
    // the stacked functionals must have full row rank
    if !functionals.is_empty() {
        let mat = Mat::from_rows(functionals.iter().map(|f| f.0.clone()).collect());
        if mat.rank() != pairs.len() {
            return Err(Error::Internal(
                "Hodge-criterion functionals are not of full row rank".into(),
            ));
        }
    }
    Ok(HodgeCriterion { pairs, functionals })
}

/// Griffiths-Steenbrink labels X^beta eta_alpha / g^k for A_beta = k.
#[derive(Clone, Debug, PartialEq)]
pub struct GsBasis {
    /// k -> basis monomials with A_beta = k.
    pub labels: BTreeMap<u32, Vec<Monomial>>,
}

pub fn gs_basis(data: &MilnorData) -> Result<GsBasis> {
    if !data.is_quasi_homogeneous() {
        return Err(Error::BadWeights(
            "Griffiths-Steenbrink labels need a quasi-homogeneous polynomial".into(),
        ));
    }
    let mut labels: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for (idx, a) in data.degrees.iter().enumerate() {
        if a.is_integer() {
            let k = u32::try_from(i64::try_from(a.numer().clone()).unwrap()).unwrap();
            labels.entry(k).or_default().push(data.basis[idx].clone());
        }
    }
    Ok(GsBasis { labels })
}

/// The Fermat Hodge-cycle lattice: kernel of B -> B . [eps^{(alpha+1)(beta+1)}].
#[derive(Clone, Debug)]
pub struct FermatProblem {
    pub m: Vec<u32>,
    /// N = lcm(m_i).
    pub root_order: u32,
    /// I, ascending canonical order.
    pub index_set: Vec<Monomial>,
    pub degrees: Vec<Rational>,
    /// Indices into index_set with A_beta not integral and A_beta < n/2.
    pub i_h: Vec<usize>,
    /// mu x |I_h| matrix over Q(zeta_N).
    pub entries: Vec<Vec<CycloElem>>,
    /// Integer-primitive basis of {B : B . E = 0}.
    pub kernel: Vec<Vec<Rational>>,
}

pub fn fermat_hodge_lattice(m: &[u32]) -> Result<FermatProblem> {
    if m.len() < 2 {
        return Err(Error::BadWeights("need at least two exponents".into()));
    }
    if m.iter().any(|&x| x < 2) {
        return Err(Error::BadWeights("exponents must be >= 2".into()));
    }
    let n = m.len() - 1;
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let order_n = m.iter().fold(1u32, |acc, &x| acc.lcm(&x));
    // enumerate I = prod {0..m_i-2}, canonical (weighted-grevlex) order
    let weights = Weights::new(m.iter().map(|&x| order_n / x).collect(), order_n)?;
    let mut index_set = vec![Monomial::unit(m.len())];
    for (i, &mi) in m.iter().enumerate() {
        let mut next = Vec::new();
        for base in &index_set {
            for e in 0..(mi - 1) as u16 {
                next.push(base.with_exp(i, e));
            }
        }
        index_set = next;
    }
    let ord = weights.order();
    index_set.sort_by(|a, b| ord.cmp(a, b));
    let degrees: Vec<Rational> = index_set.iter().map(|b| weights.a_beta(b)).collect();
    let half_n = Rational::new(n as i64, 2);
    let i_h: Vec<usize> = degrees
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_integer() && *a < &half_n)
        .map(|(i, _)| i)
        .collect();

    let mu = index_set.len();
    let phi = euler_phi(order_n) as usize;
    let mut entries: Vec<Vec<CycloElem>> = Vec::with_capacity(mu);
    for alpha in &index_set {
        let mut row = Vec::with_capacity(i_h.len());
        for &bi in &i_h {
            let beta = &index_set[bi];
            let mut exp: u64 = 0;
            for i in 0..m.len() {
                let scale = (order_n / m[i]) as u64;
                exp += scale * (alpha.exp(i) as u64 + 1) * (beta.exp(i) as u64 + 1);
            }
            row.push(CycloElem::root_power(
                order_n,
                (exp % order_n as u64) as u32,
            ));
        }
        entries.push(row);
    }

    // rational expansion: one row per (column of E, cyclotomic coordinate)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for c in 0..i_h.len() {
        for r in 0..phi {
            rows.push(
                (0..mu)
                    .map(|alpha| entries[alpha][c].coords()[r].clone())
                    .collect(),
            );
        }
    }
    let kernel_raw = if rows.is_empty() {
        Mat::<Rational>::zero(0, mu).kernel_basis()
    } else {
        Mat::from_rows(rows).kernel_basis()
    };
    let kernel: Vec<Vec<Rational>> = kernel_raw.into_iter().map(integer_primitive).collect();

    // re-verify each kernel vector by exact cyclotomic multiplication
    for b in &kernel {
        for c in 0..i_h.len() {
            let mut acc = CycloElem::zero();
            for alpha in 0..mu {
                if b[alpha].is_zero() {
                    continue;
                }
                acc = acc + entries[alpha][c].scale(&b[alpha]);
            }
            if !acc.is_zero() {
                return Err(Error::Internal(
                    "kernel vector fails cyclotomic re-verification".into(),
                ));
            }
        }
    }

    Ok(FermatProblem {
        m: m.to_vec(),
        root_order: order_n,
        index_set,
        degrees,
        i_h,
        entries,
        kernel,
    })
}

fn integer_primitive(v: Vec<Rational>) -> Vec<Rational> {
    use num_bigint::BigInt;
    let mut den = BigInt::from(1);
    for c in &v {
        den = den.lcm(c.denom());
    }
    let mut content = BigInt::from(0);
    for c in &v {
        content = content.gcd(&(c.numer() * &den / c.denom()));
    }
    if content == BigInt::from(0) {
        return v;
    }
    let mut scale = Rational::new(den, content);
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if (first.clone() * scale.clone()).is_negative() {
            scale = -scale;
        }
    }
    v.into_iter().map(|c| c * scale.clone()).collect()
}
