//! Minimal-order Picard-Fuchs annihilators, by exact kernel computation
//! over Q(t) with fraction-free Gaussian elimination on the cleared rows.

use crate::brieskorn::{nabla_eta_vec, ConnectionData, EtaCoords};
use crate::error::{Error, Result};
use crate::milnor::MilnorData;
use crate::ratfunc::RatFunc;
use crate::unipoly::{normalize_family, UniPoly};

/// sum_i `coeffs[i]` * nabla^i annihilates the element; coeffs are content-free
/// integer form with polynomial gcd one and positive leading term on the top
/// coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct PFEquation {
    pub coeffs: Vec<UniPoly>,
}

impl PFEquation {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &UniPoly {
        self.coeffs.last().expect("nonempty")
    }

    /// Diagnostic: do all roots of the leading coefficient lie among the
    /// roots of `bound`? (squarefree divisibility test)
    pub fn singular_support_within(&self, bound: &UniPoly) -> Result<bool> {
        let sf = self.leading().squarefree_part()?;
        Ok(sf.gcd(bound) == sf)
    }
}

/// Compute e, nabla e, nabla^2 e, ... until the first linear dependence over
/// Q(t); solve for the dependence, clear denominators, normalize. Stopping at
/// the first dependence makes the order minimal.
pub fn picard_fuchs(e: &EtaCoords, data: &MilnorData, conn: &ConnectionData) -> Result<PFEquation> {
    if e.0.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let mut iterates: Vec<EtaCoords> = vec![e.clone()];
    let mut rows: Vec<Vec<UniPoly>> = Vec::new();
    let mut lambdas: Vec<UniPoly> = Vec::new();
    loop {
        let cur = iterates.last().unwrap();
        let mut den = UniPoly::one();
        for c in &cur.0 {
            den = den.lcm(c.den());
        }
        let cleared: Vec<UniPoly> = cur
            .0
            .iter()
            .map(|c| c.num() * &den.exact_div(c.den()).expect("lcm divides"))
            .collect();
        rows.push(cleared);
        lambdas.push(den);

        if let Some(u) = poly_dependence(&rows) {
            let m = rows.len() - 1;
            let coeffs: Vec<UniPoly> = u.iter().zip(&lambdas).map(|(ui, li)| ui * li).collect();
            if coeffs[m].is_zero() {
                return Err(Error::Internal(
                    "dependence does not involve the top iterate".into(),
                ));
            }
            let coeffs = normalize_family(coeffs, Some(m));
            let eq = PFEquation { coeffs };
            verify_annihilation(&eq, &iterates)?;
            return Ok(eq);
        }
        if rows.len() > data.mu {
            return Err(Error::Internal(format!(
                "no dependence among {} iterates; order bound mu = {} violated",
                rows.len(),
                data.mu
            )));
        }
        iterates.push(nabla_eta_vec(cur, conn));
    }
}

/// Verification identity: sum c_i nabla^i e expands to the zero vector.
fn verify_annihilation(eq: &PFEquation, iterates: &[EtaCoords]) -> Result<()> {
    let mu = iterates[0].0.len();
    for j in 0..mu {
        let mut acc = RatFunc::zero();
        for (c, it) in eq.coeffs.iter().zip(iterates) {
            if c.is_zero() || it.0[j].is_zero() {
                continue;
            }
            acc = acc + RatFunc::from_poly(c.clone()) * it.0[j].clone();
        }
        if !acc.is_zero() {
            return Err(Error::Internal(format!(
                "Picard-Fuchs verification failed at coordinate {j}"
            )));
        }
    }
    Ok(())
}

/// Fraction-free Gaussian elimination with bookkeeping columns; returns the
/// combination expressing the first zero row when the stacked rows are
/// dependent.
fn poly_dependence(rows: &[Vec<UniPoly>]) -> Option<Vec<UniPoly>> {
    let k = rows.len();
    let n = rows[0].len();
    let mut m: Vec<Vec<UniPoly>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| {
                if i == j {
                    UniPoly::one()
                } else {
                    UniPoly::zero()
                }
            }));
            row
        })
        .collect();
    let mut prev = UniPoly::one();
    let mut pivot_row = 0usize;
    for col in 0..n {
        if pivot_row == k {
            break;
        }
        let Some(p) = (pivot_row..k).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in pivot_row + 1..k {
            for c in 0..n + k {
                if c == col {
                    continue;
                }
                let num = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                m[r][c] = num
                    .exact_div(&prev)
                    .expect("fraction-free division is exact");
            }
            m[r][col] = UniPoly::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
    }
    m[pivot_row..k]
        .iter()
        .find(|row| row[..n].iter().all(|c| c.is_zero()))
        .map(|row| row[n..].to_vec())
}
