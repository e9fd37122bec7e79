//! Dense exact linear algebra: generic elimination over any coefficient
//! field, plus fraction-free (Bareiss) routines for matrices over `Q[t]`.

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::scalar::{Field, Ring};
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Ring> Mat<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut K {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> Mat<L> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out: Mat<K> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).clone() + a.clone() * b.clone();
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }
}

impl<K: Field> Mat<K> {
    /// In-place reduction to row echelon form; returns the pivot columns.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = self.at(r, j).clone() * inv.clone();
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = self.at(i, j).clone() - factor.clone() * self.at(r, j).clone();
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel {v : A v = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![K::zero(); self.cols];
            vec[free] = K::one();
            for (r, &c) in pivots.iter().enumerate() {
                vec[c] = -m.at(r, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve A x = b over the field by elimination; None when singular or
    /// inconsistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if pivots.len() < self.cols {
            return None; // underdetermined; callers only use square nonsingular systems
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// An incrementally built echelon span over a field, used for independence
/// tests; rows are kept reduced with recorded pivot columns.
pub struct EchelonSpan<K> {
    dim: usize,
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> EchelonSpan<K> {
    pub fn new(dim: usize) -> Self {
        EchelonSpan {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span; if independent, insert it (recording the
    /// pivot value through `on_pivot`) and return true.
    pub fn insert_with(&mut self, mut v: Vec<K>, on_pivot: impl FnOnce(&K)) -> bool {
        assert_eq!(v.len(), self.dim);
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let c = v[*piv].clone();
            for (a, b) in v.iter_mut().zip(row.iter()) {
                *a = a.clone() - c.clone() * b.clone();
            }
        }
        let Some(p) = v.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        on_pivot(&v[p]);
        let inv = v[p].inv();
        for a in v.iter_mut() {
            *a = a.clone() * inv.clone();
        }
        self.rows.push((p, v));
        true
    }

    pub fn insert(&mut self, v: Vec<K>) -> bool {
        self.insert_with(v, |_| {})
    }
}

/// Fraction-free determinant of a square `Q[t]` matrix (Bareiss).
pub fn bareiss_det(m: &Mat<UniPoly>) -> UniPoly {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return UniPoly::one();
    }
    let mut a: Vec<Vec<UniPoly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = UniPoly::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Solve A X = B exactly over Q(t) for a nonsingular square `Q[t]` matrix A,
/// by fraction-free forward elimination and back substitution.
pub fn bareiss_solve(a: &Mat<UniPoly>, b: &Mat<UniPoly>) -> Result<Mat<RatFunc>> {
    assert_eq!(a.rows(), a.cols());
    assert_eq!(a.rows(), b.rows());
    let n = a.rows();
    let w = b.cols();
    // augmented fraction-free elimination
    let mut m: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend(b.row(i).iter().cloned());
            row
        })
        .collect();
    let mut prev = UniPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Err(Error::Internal("singular matrix in bareiss_solve".into()));
            };
            m.swap(k, p);
        }
        for i in k + 1..n {
            for j in k + 1..n + w {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    // back substitution in Q(t)
    let mut x = Mat::<RatFunc>::zero(n, w);
    for c in 0..w {
        for i in (0..n).rev() {
            let mut acc = RatFunc::from_poly(m[i][n + c].clone());
            for j in i + 1..n {
                if m[i][j].is_zero() {
                    continue;
                }
                acc = acc - RatFunc::from_poly(m[i][j].clone()) * x.at(j, c).clone();
            }
            *x.at_mut(i, c) = acc * RatFunc::from_poly(m[i][i].clone()).inv();
        }
    }
    Ok(x)
}

/// Characteristic polynomial det(tI - A) of a rational matrix, via Bareiss.
pub fn char_poly(a: &Mat<Rational>) -> UniPoly {
    let n = a.rows();
    let mut m = Mat::<UniPoly>::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut p = UniPoly::constant(-a.at(i, j).clone());
            if i == j {
                p = p + UniPoly::var();
            }
            *m.at_mut(i, j) = p;
        }
    }
    bareiss_det(&m)
}
