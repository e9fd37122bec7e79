//! Reduction of top forms to the omega basis with an exact certificate, the
//! change of basis between the two Brieskorn modules, and the Gauss-Manin
//! connection with its denominator-free iterates.
//!
//! The quasi-homogeneous kernel rewrites Jacobian parts through the Euler
//! field: for homogeneous q_i of part degree m,
//!     dg ^ psi_q = (1/s) dg ^ d(i_E psi_q) + (d/s) g (div psi_q) dx,
//! with s = m - d + sum(alpha) > 0; the g-multiplied certificates fold via
//! g dg ^ d(xi) = dg ^ d(g xi). The outer loop substitutes f for g and
//! recurses on the strictly smaller defect.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::forms::{
    euler_contract_n, euler_form, exterior_derivative, wedge_with_df, FormN, FormTop, XiForm,
};
use crate::matrix::{bareiss_det, bareiss_solve, Mat};
use crate::milnor::{eval_unipoly_at_poly, MilnorData};
use crate::mpoly::MPoly;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// Coordinates w.r.t. omega_beta = x^beta dx over `Q[t]`.
#[derive(Clone, PartialEq, Debug)]
pub struct OmegaCoords(pub Vec<UniPoly>);

/// Coordinates w.r.t. eta_beta = x^beta eta over Q(t).
#[derive(Clone, PartialEq, Debug)]
pub struct EtaCoords(pub Vec<RatFunc>);

impl EtaCoords {
    pub fn unit(mu: usize, beta: usize) -> Self {
        let mut v = vec![RatFunc::zero(); mu];
        v[beta] = RatFunc::one();
        EtaCoords(v)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|c| c.is_polynomial())
    }
}

/// Basis tag for serialized Brieskorn elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisTag {
    Omega,
    Eta,
}

impl BasisTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisTag::Omega => "omega-basis",
            BasisTag::Eta => "eta-basis",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BrieskornElement {
    pub basis: BasisTag,
    pub coords: Vec<RatFunc>,
}

/// Exact witness for a reduction: input - sum p_beta(f) omega_beta = df ^ d(xi).
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub xi: XiForm<Rational>,
}

impl ReductionCertificate {
    /// Expand the certificate identity exactly.
    pub fn verify(
        &self,
        input: &FormTop<Rational>,
        coords: &OmegaCoords,
        data: &MilnorData,
    ) -> bool {
        if self.xi.n_vars() != data.n_vars() {
            return false;
        }
        let mut acc = input.coeff.clone();
        for (c, beta) in coords.0.iter().zip(&data.basis) {
            if c.is_zero() {
                continue;
            }
            let cf = eval_unipoly_at_poly(c, data.f());
            acc = acc.sub(&cf.mul_term(beta, &Rational::from_int(1)));
        }
        let d_xi = self.xi.exterior_derivative();
        match wedge_with_df(data.f(), &d_xi) {
            Ok(w) => acc.sub(&w.coeff).is_zero(),
            Err(_) => false,
        }
    }
}

static REDUCTION_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Inner loop: write `p dx` over the quasi-homogeneous part g as
/// sum c_beta(T) x^beta dx + dg ^ d(xi), T standing for multiplication by g.
fn reduce_quasi_homogeneous(
    p: &MPoly<Rational>,
    data: &MilnorData,
) -> Result<(Vec<UniPoly>, XiForm<Rational>)> {
    let w = data.weights();
    let n = w.n_vars();
    let d = w.degree_d() as i64;
    let sum_alpha: i64 = w.alphas().iter().map(|&a| a as i64).sum();
    let mut out = vec![UniPoly::zero(); data.mu];
    let mut xi = XiForm::zero(n);
    if p.is_zero() {
        return Ok((out, xi));
    }
    for (m, part) in p.homogeneous_parts(w)? {
        let nf = data.gb_g.normal_form(&part);
        for (mono, c) in nf.remainder.terms() {
            let idx = data.basis_index(mono).ok_or_else(|| {
                Error::Internal(format!("normal form left the staircase at {mono:?}"))
            })?;
            out[idx] = out[idx].clone() + UniPoly::constant(c.clone());
        }
        if nf.quotients.iter().all(|q| q.is_zero()) {
            continue;
        }
        debug_assert!(nf.quotients.iter().all(|q| q.is_homogeneous(w)));
        let psi_q = FormN::new(nf.quotients);
        let s = m as i64 - d + sum_alpha;
        if s <= 0 {
            return Err(Error::Internal(format!(
                "Euler rewrite weight s = {s} <= 0 at part degree {m}"
            )));
        }
        let s_inv = Rational::new(1, s);
        xi = xi.add(&euler_contract_n(&psi_q, w).scale(&s_inv));
        let div_psi = exterior_derivative(&psi_q).coeff;
        let scaled = div_psi.scale(&Rational::new(d, s));
        let (sub, xi_rec) = reduce_quasi_homogeneous(&scaled, data)?;
        for (target, c) in out.iter_mut().zip(sub) {
            // recursion result is multiplied by T (the class of g)
            *target = target.clone() + c.shift(1);
        }
        xi = xi.add(&xi_rec.scale_poly(&data.g));
    }
    Ok((out, xi))
}

/// Write omega = sum p_beta(t) omega_beta + df ^ d(Xi) exactly.
pub fn reduce_top_form(
    omega: &FormTop<Rational>,
    data: &MilnorData,
) -> Result<(OmegaCoords, ReductionCertificate)> {
    omega.coeff.check_arity(data.n_vars())?;
    let w = data.weights();
    let f = data.f();
    let mut total = vec![UniPoly::zero(); data.mu];
    let mut xi_total = XiForm::zero(data.n_vars());
    let mut cur = omega.coeff.clone();
    let mut last_deg = cur.weighted_degree(w)?;
    while !cur.is_zero() {
        let (coeffs, xi) = reduce_quasi_homogeneous(&cur, data)?;
        // defect: cur - sum c_beta(f) x^beta - df ^ d(xi)
        let mut next = cur.clone();
        for (c, beta) in coeffs.iter().zip(&data.basis) {
            if c.is_zero() {
                continue;
            }
            let cf = eval_unipoly_at_poly(c, f);
            next = next.sub(&cf.mul_term(beta, &Rational::from_int(1)));
        }
        let d_xi = xi.exterior_derivative();
        next = next.sub(&wedge_with_df(f, &d_xi)?.coeff);
        for (target, c) in total.iter_mut().zip(coeffs) {
            *target = target.clone() + c;
        }
        xi_total = xi_total.add(&xi);
        let next_deg = next.weighted_degree(w)?;
        if !next.is_zero() && next_deg >= last_deg {
            return Err(Error::Internal(format!(
                "reduction defect degree did not drop: {last_deg:?} -> {next_deg:?}"
            )));
        }
        cur = next;
        last_deg = next_deg;
    }
    let coords = OmegaCoords(total);
    let cert = ReductionCertificate { xi: xi_total };
    let count = REDUCTION_COUNTER.fetch_add(1, AtomicOrdering::Relaxed);
    if (cfg!(debug_assertions) || count.is_multiple_of(64)) && !cert.verify(omega, &coords, data) {
        return Err(Error::Internal(
            "reduction certificate failed to verify".into(),
        ));
    }
    Ok((coords, cert))
}

/// df ^ eta as a top form: sum_j (j/d) f_j dx.
pub fn df_wedge_eta(data: &MilnorData) -> MPoly<Rational> {
    wedge_with_df(data.f(), &euler_form(data.weights()))
        .expect("arities agree")
        .coeff
}

/// Column beta = omega-coordinates of df ^ eta_beta.
pub fn basis_change_matrix(data: &MilnorData) -> Result<Mat<UniPoly>> {
    let dfeta = df_wedge_eta(data);
    let mut m = Mat::zero(data.mu, data.mu);
    for (j, beta) in data.basis.iter().enumerate() {
        let top = FormTop::new(dfeta.mul_term(beta, &Rational::from_int(1)));
        let (coords, _) = reduce_top_form(&top, data)?;
        for (i, c) in coords.0.into_iter().enumerate() {
            *m.at_mut(i, j) = c;
        }
    }
    Ok(m)
}

/// The connection machinery: basis change M(t), the polynomial numerator
/// P_omega of S * nabla on the omega side, and the eta-side matrix
/// Nabla_eta with nabla(eta_beta) in its columns.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    pub m: Mat<UniPoly>,
    pub det_m: UniPoly,
    /// Column beta = omega-coordinates of (Q_{x^beta} - x^beta S'(f)) dx,
    /// i.e. S(t) * nabla(omega_beta).
    pub nabla_omega_num: Mat<UniPoly>,
    pub nabla_eta: Mat<RatFunc>,
}

impl ConnectionData {
    pub fn new(data: &MilnorData) -> Result<Self> {
        let mu = data.mu;
        let n = data.n_vars();
        let f = data.f();
        let m = basis_change_matrix(data)?;
        let det_m = bareiss_det(&m);
        if det_m.is_zero() {
            return Err(Error::Internal("basis change matrix is singular".into()));
        }

        // connection numerators: Q_P = sum dP/dx_i p_i + P div(eta_f)
        let div_eta = exterior_derivative(&data.eta_f).coeff;
        let s_prime_f = eval_unipoly_at_poly(&data.s_derivative(), f);
        let mut nabla_omega_num = Mat::zero(mu, mu);
        for (j, beta) in data.basis.iter().enumerate() {
            let xb = MPoly::monomial_term(beta.clone(), Rational::from_int(1));
            let mut q_p = xb.mul(&div_eta);
            for i in 0..n {
                q_p = q_p.add(&xb.derivative(i).mul(&data.eta_f.comps()[i]));
            }
            let numerator = q_p.sub(&xb.mul(&s_prime_f));
            let (coords, _) = reduce_top_form(&FormTop::new(numerator), data)?;
            for (i, c) in coords.0.into_iter().enumerate() {
                *nabla_omega_num.at_mut(i, j) = c;
            }
        }

        // Nabla_eta = M^{-1} (P_omega M / S + M'):
        // solve M X = P_omega M + S M', then divide by S
        let s = &data.s_poly;
        let m_prime = m.map(|p| p.derivative());
        let mut rhs = nabla_omega_num.mul(&m);
        for i in 0..mu {
            for j in 0..mu {
                let v = rhs.at(i, j).clone() + s * m_prime.at(i, j);
                *rhs.at_mut(i, j) = v;
            }
        }
        let x = bareiss_solve(&m, &rhs)?;
        let s_inv = RatFunc::from_poly(s.clone()).inv();
        let nabla_eta = x.map(|c| c.clone() * s_inv.clone());

        Ok(ConnectionData {
            m,
            det_m,
            nabla_omega_num,
            nabla_eta,
        })
    }
}

/// Gauss-Manin image of a polynomial omega-coordinate vector:
/// nabla(v) = P_omega v / S + v'. Denominators divide S.
pub fn nabla_top(v: &OmegaCoords, data: &MilnorData, conn: &ConnectionData) -> Vec<RatFunc> {
    let s = RatFunc::from_poly(data.s_poly.clone());
    let pv = conn.nabla_omega_num.mul_vec(&v.0);
    pv.into_iter()
        .zip(&v.0)
        .map(|(p, orig)| {
            RatFunc::from_poly(p) * s.clone().inv() + RatFunc::from_poly(orig.derivative())
        })
        .collect()
}

/// nabla on omega-coordinates over Q(t), with the quotient rule on entries.
pub fn nabla_omega_rat(v: &[RatFunc], data: &MilnorData, conn: &ConnectionData) -> Vec<RatFunc> {
    let s = RatFunc::from_poly(data.s_poly.clone());
    let mu = v.len();
    (0..mu)
        .map(|i| {
            let mut acc = RatFunc::zero();
            for j in 0..mu {
                let p = conn.nabla_omega_num.at(i, j);
                if p.is_zero() || v[j].is_zero() {
                    continue;
                }
                acc = acc + RatFunc::from_poly(p.clone()) * v[j].clone();
            }
            acc * s.clone().inv() + v[i].derivative()
        })
        .collect()
}

/// The denominator-free operator nabla_k(v) = P_omega v + S v' - k S' v.
pub fn nabla_k_op(
    v: &OmegaCoords,
    k: u32,
    data: &MilnorData,
    conn: &ConnectionData,
) -> OmegaCoords {
    let s = &data.s_poly;
    let s_prime = data.s_derivative();
    let k_sp = s_prime.scale(&Rational::from_int(k as i64));
    let pv = conn.nabla_omega_num.mul_vec(&v.0);
    OmegaCoords(
        pv.into_iter()
            .zip(&v.0)
            .map(|(p, orig)| p + s * &orig.derivative() - &k_sp * orig)
            .collect(),
    )
}

/// nabla on eta-coordinates: Nabla_eta c + c'.
pub fn nabla_eta_vec(c: &EtaCoords, conn: &ConnectionData) -> EtaCoords {
    let mu = c.0.len();
    EtaCoords(
        (0..mu)
            .map(|i| {
                let mut acc = c.0[i].derivative();
                for j in 0..mu {
                    let e = conn.nabla_eta.at(i, j);
                    if e.is_zero() || c.0[j].is_zero() {
                        continue;
                    }
                    acc = acc + e.clone() * c.0[j].clone();
                }
                acc
            })
            .collect(),
    )
}

/// Coordinates of a polynomial n-form in the eta basis, through the df^
/// embedding and M(t)^{-1}. Denominators must cancel for polynomial inputs
/// (freeness of H').
pub fn reduce_n_form(
    psi: &FormN<Rational>,
    data: &MilnorData,
    conn: &ConnectionData,
) -> Result<EtaCoords> {
    let top = wedge_with_df(data.f(), psi)?;
    let (coords, _) = reduce_top_form(&top, data)?;
    let rhs = Mat::from_rows(coords.0.iter().map(|c| vec![c.clone()]).collect());
    let x = bareiss_solve(&conn.m, &rhs)?;
    let out: Vec<RatFunc> = (0..data.mu).map(|i| x.at(i, 0).clone()).collect();
    for (i, c) in out.iter().enumerate() {
        if !c.is_polynomial() {
            return Err(Error::DenominatorSurvived {
                index: i,
                value: c.to_string(),
            });
        }
    }
    Ok(EtaCoords(out))
}

/// nabla^k eta_beta in eta coordinates, iterated through the cached
/// Nabla_eta matrix.
pub fn nabla_power_eta(beta: usize, k: u32, data: &MilnorData, conn: &ConnectionData) -> EtaCoords {
    let mut c = EtaCoords::unit(data.mu, beta);
    for _ in 0..k {
        c = nabla_eta_vec(&c, conn);
    }
    c
}

/// Independent route for nabla^k eta_beta: push through M, apply the
/// composition nabla_{k-1} o ... o nabla_0 of denominator-free operators,
/// divide by S^k, pull back through M^{-1}.
pub fn nabla_power_eta_operator_path(
    beta: usize,
    k: u32,
    data: &MilnorData,
    conn: &ConnectionData,
) -> Result<EtaCoords> {
    let mut v = OmegaCoords(conn.m.col(beta));
    for j in 0..k {
        v = nabla_k_op(&v, j, data, conn);
    }
    let rhs = Mat::from_rows(v.0.iter().map(|c| vec![c.clone()]).collect());
    let x = bareiss_solve(&conn.m, &rhs)?;
    let mut s_pow = RatFunc::one();
    for _ in 0..k {
        s_pow = s_pow * RatFunc::from_poly(data.s_poly.clone());
    }
    Ok(EtaCoords(
        (0..data.mu)
            .map(|i| x.at(i, 0).clone() * s_pow.clone().inv())
            .collect(),
    ))
}
