//! Strong-tameness verification and the algebraic backbone: the monomial
//! basis of the Milnor algebra with its degrees A_beta, the multiplication
//! matrix of f, its minimal polynomial S(t), and the lift eta_f with
//! S(f) dx = df ^ eta_f.

use crate::error::{Error, Result};
use crate::forms::{wedge_with_df, FormN};
use crate::groebner::{groebner_basis_with, ComputeControl, GroebnerBasis, NoControl};
use crate::matrix::{EchelonSpan, Mat};
use crate::mpoly::{MPoly, Monomial};
use crate::rational::Rational;
use crate::unipoly::UniPoly;
use crate::weights::Weights;

#[derive(Clone, Debug)]
pub struct TameInput {
    f: MPoly<Rational>,
    weights: Weights,
}

impl TameInput {
    pub fn new(f: MPoly<Rational>, weights: Weights) -> Result<Self> {
        f.check_arity(weights.n_vars())?;
        match f.weighted_degree(&weights)? {
            None => Err(Error::ZeroInput),
            Some(d) if d == weights.degree_d() as u64 => Ok(TameInput { f, weights }),
            Some(d) => Err(Error::BadWeights(format!(
                "weighted degree of f is {d}, but weights declare d = {}",
                weights.degree_d()
            ))),
        }
    }

    /// Derive d from f itself.
    pub fn with_auto_degree(f: MPoly<Rational>, alphas: Vec<u32>) -> Result<Self> {
        let probe = Weights::new(alphas.clone(), 2)?;
        f.check_arity(probe.n_vars())?;
        let d = f.weighted_degree(&probe)?.ok_or(Error::ZeroInput)?;
        let weights = Weights::new(
            alphas,
            u32::try_from(d)
                .map_err(|_| Error::BadWeights("weighted degree exceeds u32".into()))?,
        )?;
        TameInput::new(f, weights)
    }

    pub fn f(&self) -> &MPoly<Rational> {
        &self.f
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }
}

/// Everything the Brieskorn and Hodge layers consume.
#[derive(Clone, Debug)]
pub struct MilnorData {
    pub input: TameInput,
    /// Last quasi-homogeneous piece g = f_d.
    pub g: MPoly<Rational>,
    /// Monomial basis I of the Milnor algebra, ascending in the order.
    pub basis: Vec<Monomial>,
    pub mu: usize,
    /// A_beta per basis element.
    pub degrees: Vec<Rational>,
    /// Multiplication by f on V_f in the x^I basis.
    pub mult_matrix: Mat<Rational>,
    /// Minimal polynomial of the multiplication matrix, content-free integer
    /// coefficients with positive leading coefficient.
    pub s_poly: UniPoly,
    /// Components p_i of eta_f, with S(f) = sum p_i df/dx_i.
    pub eta_f: FormN<Rational>,
    pub gb_g: GroebnerBasis<Rational>,
    pub gb_f: GroebnerBasis<Rational>,
}

impl MilnorData {
    pub fn f(&self) -> &MPoly<Rational> {
        self.input.f()
    }

    pub fn weights(&self) -> &Weights {
        self.input.weights()
    }

    pub fn n_vars(&self) -> usize {
        self.weights().n_vars()
    }

    /// Fiber dimension n (the polynomial has n+1 variables).
    pub fn fiber_dim(&self) -> usize {
        self.n_vars() - 1
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.f() == &self.g
    }

    /// S'(t).
    pub fn s_derivative(&self) -> UniPoly {
        self.s_poly.derivative()
    }
}

pub fn check_strong_tameness(input: TameInput) -> Result<MilnorData> {
    check_strong_tameness_with(input, &NoControl)
}

pub fn check_strong_tameness_with(
    input: TameInput,
    ctrl: &dyn ComputeControl,
) -> Result<MilnorData> {
    let w = input.weights().clone();
    let f = input.f().clone();
    let n = w.n_vars();
    let order = w.order();

    let parts = f.homogeneous_parts(&w)?;
    let g = parts[&(w.degree_d() as u64)].clone();

    let jac_g: Vec<MPoly<Rational>> = (0..n).map(|i| g.derivative(i)).collect();
    let gb_g = groebner_basis_with(&jac_g, order.clone(), ctrl)?;
    if let Some(var) = gb_g.missing_pure_power() {
        return Err(Error::NotTame { var });
    }
    let basis = gb_g.quotient_basis()?;
    let mu = basis.len();
    let degrees: Vec<Rational> = basis.iter().map(|b| w.a_beta(b)).collect();
    for a in &degrees {
        let upper = Rational::from_int(n as i64 + 1);
        if !(Rational::zero() < a.clone() && a < &upper) {
            return Err(Error::Internal(format!(
                "A_beta = {a} escapes the open interval (0, n+2)"
            )));
        }
    }

    let jac_f: Vec<MPoly<Rational>> = (0..n).map(|i| f.derivative(i)).collect();
    let gb_f = groebner_basis_with(&jac_f, order.clone(), ctrl)?;

    let mult_matrix = multiplication_matrix(&gb_f, &basis, &f)?;
    let s_poly = minimal_polynomial_s(&mult_matrix);
    let eta_f = eta_f_lift(&f, &s_poly, &gb_f)?;

    let data = MilnorData {
        input,
        g,
        basis,
        mu,
        degrees,
        mult_matrix,
        s_poly,
        eta_f,
        gb_g,
        gb_f,
    };
    // identity check on every constructed MilnorData: S(f) dx = df ^ eta_f
    let sf = eval_unipoly_at_poly(&data.s_poly, data.f());
    let wedge = wedge_with_df(data.f(), &data.eta_f)?;
    if wedge.coeff != sf {
        return Err(Error::Internal(
            "S(f) dx != df ^ eta_f after lift construction".into(),
        ));
    }
    Ok(data)
}

/// Column beta = coordinates of f * x^beta in the x^I basis of V_f.
pub fn multiplication_matrix(
    gb_f: &GroebnerBasis<Rational>,
    basis: &[Monomial],
    f: &MPoly<Rational>,
) -> Result<Mat<Rational>> {
    let mu = basis.len();
    let mut m = Mat::zero(mu, mu);
    for (j, beta) in basis.iter().enumerate() {
        let prod = f.mul_term(beta, &Rational::from_int(1));
        let nf = gb_f.reduce(&prod);
        for (mono, c) in nf.terms() {
            let Some(i) = basis.iter().position(|b| b == mono) else {
                return Err(Error::Internal(format!(
                    "normal form of f*x^beta left the staircase span at {mono:?}"
                )));
            };
            *m.at_mut(i, j) = c.clone();
        }
    }
    Ok(m)
}

/// Minimal polynomial by iterated Krylov subspaces: the lcm of the minimal
/// annihilators of the start vectors, accumulated until the Krylov vectors
/// span the whole space. Content-free integer form, positive leading term.
pub fn minimal_polynomial_s(m: &Mat<Rational>) -> UniPoly {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut global = EchelonSpan::new(n);
    let mut s = UniPoly::one();
    for start in 0..n {
        if global.rank() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[start] = Rational::from_int(1);
        // local echelon rows remember their expression in powers of the matrix
        let mut rows: Vec<(usize, Vec<Rational>, UniPoly)> = Vec::new();
        let mut v = e;
        let mut power = 0usize;
        let local = loop {
            let mut reduced = v.clone();
            let mut expr = UniPoly::monomial(Rational::from_int(1), power);
            for (piv, row, row_expr) in &rows {
                if reduced[*piv].is_zero() {
                    continue;
                }
                let c = reduced[*piv].clone();
                for (a, b) in reduced.iter_mut().zip(row.iter()) {
                    *a = &*a - &(&c * b);
                }
                expr = expr - row_expr.scale(&c);
            }
            match reduced.iter().position(|a| !a.is_zero()) {
                None => break expr, // the local minimal annihilator of e
                Some(p) => {
                    let inv = reduced[p].inv();
                    let nr: Vec<Rational> = reduced.iter().map(|a| a * &inv).collect();
                    rows.push((p, nr, expr.scale(&inv)));
                }
            }
            v = m.mul_vec(&v);
            power += 1;
        };
        for (_, row, _) in rows {
            global.insert(row);
        }
        s = s.lcm(&local);
    }
    debug_assert!(eval_unipoly_at_matrix(&s, m).is_zero(), "S(A) must vanish");
    s.integer_normal_form()
}

/// Quotients of S(f) against the partials of f: the components of eta_f.
pub fn eta_f_lift(
    f: &MPoly<Rational>,
    s: &UniPoly,
    gb_f: &GroebnerBasis<Rational>,
) -> Result<FormN<Rational>> {
    let sf = eval_unipoly_at_poly(s, f);
    let nf = gb_f.normal_form(&sf);
    if !nf.remainder.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    Ok(FormN::new(nf.quotients))
}

/// Horner evaluation of a univariate polynomial at a multivariate one.
pub fn eval_unipoly_at_poly(p: &UniPoly, x: &MPoly<Rational>) -> MPoly<Rational> {
    let n = x.n_vars();
    let mut acc = MPoly::zero(n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x);
        acc.add_term(Monomial::unit(n), c.clone());
    }
    acc
}

fn eval_unipoly_at_matrix(p: &UniPoly, m: &Mat<Rational>) -> Mat<Rational> {
    let n = m.rows();
    let mut acc = Mat::<Rational>::zero(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let v = acc.at(i, i).clone() + c.clone();
            *acc.at_mut(i, i) = v;
        }
    }
    acc
}

/// Critical-value bookkeeping for separable polynomials f = sum f_i(x_i).
#[derive(Clone, Debug)]
pub struct SeparableCriticalValues {
    /// Per variable: resultant of (f_i - c, f_i') in c, integer normal form.
    pub per_variable: Vec<UniPoly>,
    /// Squarefree polynomial whose roots are the sums of per-variable
    /// critical values (the critical values of f).
    pub sumset: UniPoly,
    pub mu: usize,
}

/// Split a separable polynomial into univariate pieces; constants go to the
/// first piece. Errors when any monomial mixes variables.
pub fn split_separable(f: &MPoly<Rational>) -> Result<Vec<UniPoly>> {
    let n = f.n_vars();
    let mut parts: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for (m, c) in f.terms() {
        let support: Vec<usize> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        let (var, exp) = match support.as_slice() {
            [] => (0, 0usize),
            [v] => (*v, m.exp(*v) as usize),
            _ => return Err(Error::NonSeparable),
        };
        if parts[var].len() <= exp {
            parts[var].resize(exp + 1, Rational::zero());
        }
        parts[var][exp] = parts[var][exp].clone() + c.clone();
    }
    Ok(parts.into_iter().map(UniPoly::from_coeffs).collect())
}

pub fn separable_critical_values(parts: &[UniPoly]) -> Result<SeparableCriticalValues> {
    if parts.is_empty() {
        return Err(Error::ZeroInput);
    }
    let mut mu = 1usize;
    let mut per_variable = Vec::with_capacity(parts.len());
    for p in parts {
        let deg = p.degree().ok_or(Error::NonSeparable)?;
        if deg < 2 {
            return Err(Error::NonSeparable);
        }
        mu *= deg - 1;
        // rows of (f_i - c) as a polynomial in x over Q[c]
        let fx: Vec<UniPoly> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, coeff)| {
                if k == 0 {
                    UniPoly::constant(coeff.clone()) - UniPoly::var()
                } else {
                    UniPoly::constant(coeff.clone())
                }
            })
            .collect();
        let dfx: Vec<UniPoly> = p
            .derivative()
            .coeffs()
            .iter()
            .map(|c| UniPoly::constant(c.clone()))
            .collect();
        let res = sylvester_resultant(&fx, &dfx);
        per_variable.push(res.integer_normal_form());
    }
    let mut sum = per_variable[0].clone();
    for r in &per_variable[1..] {
        sum = resultant_sum_roots(&sum, r);
    }
    let sumset = sum.squarefree_part()?.integer_normal_form();
    Ok(SeparableCriticalValues {
        per_variable,
        sumset,
        mu,
    })
}

/// Resultant of two polynomials given as coefficient vectors over `Q[c]`
/// (index = power of the eliminated variable), via the Sylvester matrix.
fn sylvester_resultant(p: &[UniPoly], q: &[UniPoly]) -> UniPoly {
    let trim = |v: &[UniPoly]| -> Vec<UniPoly> {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let p = trim(p);
    let q = trim(q);
    assert!(
        !p.is_empty() && !q.is_empty(),
        "resultant of zero polynomial"
    );
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m == 0 && n == 0 {
        return UniPoly::one();
    }
    let size = m + n;
    let mut mat = Mat::<UniPoly>::zero(size, size);
    for row in 0..n {
        for (k, c) in p.iter().enumerate() {
            *mat.at_mut(row, row + (m - k)) = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.iter().enumerate() {
            *mat.at_mut(n + row, row + (n - k)) = c.clone();
        }
    }
    crate::matrix::bareiss_det(&mat)
}

/// Polynomial (up to scalar) whose roots are {a + b : p(a) = 0, q(b) = 0},
/// with multiplicity: Res_y(p(y), q(c - y)).
fn resultant_sum_roots(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let py: Vec<UniPoly> = p
        .coeffs()
        .iter()
        .map(|c| UniPoly::constant(c.clone()))
        .collect();
    // q(c - y) as a polynomial in y with Q[c] coefficients
    let dq = q.degree().expect("nonzero");
    let mut qy: Vec<UniPoly> = vec![UniPoly::zero(); dq + 1];
    for (k, coeff) in q.coeffs().iter().enumerate() {
        // (c - y)^k = sum_j C(k,j) c^{k-j} (-1)^j y^j
        let mut binom = Rational::from_int(1);
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let term = UniPoly::monomial(
                coeff.clone() * binom.clone() * Rational::from_int(sign),
                k - j,
            );
            qy[j] = qy[j].clone() + term;
            binom = binom * Rational::new((k - j) as i64, j as i64 + 1);
        }
    }
    sylvester_resultant(&py, &qy).integer_normal_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{elliptic, example2, fermat, q};

    #[test]
    fn example2_is_tame_with_mu_32() {
        let data = check_strong_tameness(example2()).unwrap();
        assert_eq!(data.mu, 32);
        // I = {0,1}^5
        assert!(data
            .basis
            .iter()
            .all(|m| m.exponents().iter().all(|&e| e <= 1)));
        assert_eq!(data.s_poly, UniPoly::from_ints(&[0, -16, 0, 27]));
    }

    #[test]
    fn axis_singular_locus_is_not_tame() {
        // g = x1^2 x2^2: Jacob(g) vanishes on both axes, not zero-dimensional
        let f = MPoly::from_terms(2, [(Monomial::new(vec![2, 2]), q(1))]);
        let input = TameInput::new(f, Weights::unit(2, 4).unwrap()).unwrap();
        match check_strong_tameness(input) {
            Err(Error::NotTame { .. }) => {}
            other => panic!("expected NotTame, got {other:?}"),
        }
    }

    #[test]
    fn degree_mismatch_rejected() {
        // weights declare d = 4 but f has weighted degree 3
        let f = fermat(2, 3);
        assert!(matches!(
            TameInput::new(f, Weights::unit(2, 4).unwrap()),
            Err(Error::BadWeights(_))
        ));
    }

    #[test]
    fn morse_product_is_tame_with_mu_one() {
        // Sing(x1 x2) = {0} in the critical-set sense: a single Morse point
        let f = MPoly::from_terms(2, [(Monomial::new(vec![1, 1]), q(1))]);
        let input = TameInput::new(f, Weights::unit(2, 2).unwrap()).unwrap();
        let data = check_strong_tameness(input).unwrap();
        assert_eq!(data.mu, 1);
        assert_eq!(data.s_poly, UniPoly::var());
    }

    #[test]
    fn elliptic_tame_data() {
        let data = check_strong_tameness(elliptic()).unwrap();
        assert_eq!(data.mu, 2);
        assert_eq!(data.basis, vec![Monomial::unit(2), Monomial::var(2, 1)]);
        assert_eq!(data.degrees, vec![Rational::new(5, 6), Rational::new(7, 6)]);
        // mult matrix [[0, -2/9], [-2/3, 0]]
        assert_eq!(data.mult_matrix.at(0, 0), &q(0));
        assert_eq!(data.mult_matrix.at(0, 1), &Rational::new(-2, 9));
        assert_eq!(data.mult_matrix.at(1, 0), &Rational::new(-2, 3));
        assert_eq!(data.mult_matrix.at(1, 1), &q(0));
        // S = 27t^2 - 4 (content-free form of t^2 - 4/27)
        assert_eq!(data.s_poly, UniPoly::from_ints(&[-4, 0, 27]));
    }

    #[test]
    fn quasi_homogeneous_s_is_t() {
        let g = fermat(3, 3);
        let input = TameInput::new(g.clone(), Weights::unit(3, 3).unwrap()).unwrap();
        let data = check_strong_tameness(input).unwrap();
        assert!(data.mult_matrix.is_zero());
        assert_eq!(data.s_poly, UniPoly::var());
        // eta_f = eta: components w_i x_i
        for (i, c) in data.eta_f.comps().iter().enumerate() {
            assert_eq!(c, &MPoly::var(3, i).scale(&Rational::new(1, 3)));
        }
    }

    #[test]
    fn min_poly_examples() {
        // zero matrix -> t
        assert_eq!(minimal_polynomial_s(&Mat::zero(3, 3)), UniPoly::var());
        // identity -> t - 1
        assert_eq!(
            minimal_polynomial_s(&Mat::identity(4)),
            UniPoly::from_ints(&[-1, 1])
        );
    }

    #[test]
    fn no_proper_divisor_of_s_annihilates() {
        // S = 27t^3 - 16t = t (27t^2 - 16): neither factor kills the matrix
        let data = check_strong_tameness(example2()).unwrap();
        let a = &data.mult_matrix;
        assert!(!a.is_zero(), "t does not annihilate");
        let t2 = eval_unipoly_at_matrix(&UniPoly::from_ints(&[-16, 0, 27]), a);
        assert!(!t2.is_zero(), "27t^2 - 16 does not annihilate");
        let s = eval_unipoly_at_matrix(&data.s_poly, a);
        assert!(s.is_zero());
    }

    #[test]
    fn s_divides_char_poly_and_same_squarefree_part() {
        let data = check_strong_tameness(example2()).unwrap();
        let cp = crate::matrix::char_poly(&data.mult_matrix);
        let s_monic = data.s_poly.monic();
        assert!(cp.exact_div(&s_monic).is_ok());
        assert_eq!(
            cp.squarefree_part().unwrap(),
            data.s_poly.squarefree_part().unwrap()
        );
    }

    #[test]
    fn eta_lift_euler_for_pure_squares() {
        // f = x1^2 + x2^2: p = (x1/2, x2/2)
        let f = fermat(2, 2);
        let input = TameInput::new(f, Weights::unit(2, 2).unwrap()).unwrap();
        let data = check_strong_tameness(input).unwrap();
        assert_eq!(data.s_poly, UniPoly::var());
        assert_eq!(
            data.eta_f.comps()[0],
            MPoly::var(2, 0).scale(&Rational::new(1, 2))
        );
        assert_eq!(
            data.eta_f.comps()[1],
            MPoly::var(2, 1).scale(&Rational::new(1, 2))
        );
    }

    #[test]
    fn eta_lift_identity_for_elliptic() {
        let data = check_strong_tameness(elliptic()).unwrap();
        // S(f) = sum p_i df/dx_i, checked by expansion
        let sf = eval_unipoly_at_poly(&data.s_poly, data.f());
        let mut acc = MPoly::zero(2);
        for (i, p) in data.eta_f.comps().iter().enumerate() {
            acc = acc.add(&p.mul(&data.f().derivative(i)));
        }
        assert_eq!(acc, sf);
    }

    #[test]
    fn separable_example2() {
        let data = example2();
        let parts = split_separable(data.f()).unwrap();
        let cv = separable_critical_values(&parts).unwrap();
        assert_eq!(cv.mu, 32);
        assert_eq!(cv.sumset, UniPoly::from_ints(&[0, -16, 0, 27]));
        // x1-part has critical values +-2/(3 sqrt 3): 27c^2 - 4
        assert_eq!(cv.per_variable[0], UniPoly::from_ints(&[-4, 0, 27]));
    }

    #[test]
    fn separable_conic() {
        // f = x^2 + y^2 -> C = {0}
        let parts = vec![
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::from_ints(&[0, 0, 1]),
        ];
        let cv = separable_critical_values(&parts).unwrap();
        assert_eq!(cv.mu, 1);
        assert_eq!(cv.sumset, UniPoly::var());
    }

    #[test]
    fn separable_rejects_mixed_terms() {
        let f = MPoly::from_terms(2, [(Monomial::new(vec![1, 1]), q(1))]);
        assert_eq!(split_separable(&f), Err(Error::NonSeparable));
    }

    #[test]
    fn mu_product_formula() {
        // m = (3,3,3,3,3) -> mu = 32
        let parts: Vec<UniPoly> = (0..5).map(|_| UniPoly::from_ints(&[0, 0, 0, 1])).collect();
        let cv = separable_critical_values(&parts).unwrap();
        assert_eq!(cv.mu, 32);
    }
}
