//! Dense matrices over ring objects, with exact rank / kernel / solve via
//! Gaussian elimination over a field and fraction-free Bareiss elimination
//! over the integers for rational determinants and ranks.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::Error;
use crate::ring::{Field, Ring};
use crate::Result;

/// A dense row-major matrix; element semantics come from a ring object
/// passed to each operation.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn fill(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub fn zero_matrix<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::fill(rows, cols, ring.zero())
}

pub fn identity_matrix<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zero_matrix(ring, n, n);
    for i in 0..n {
        m.set(i, i, ring.one());
    }
    m
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimMismatch(format!(
            "cannot add {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let data = a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect();
    Matrix::new(a.rows, a.cols, data)
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zero_matrix(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = ring.add(out.get(i, j), &ring.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.cols != v.len() {
        return Err(Error::DimMismatch(format!(
            "cannot apply {}x{} to a vector of length {}",
            a.rows,
            a.cols,
            v.len()
        )));
    }
    Ok((0..a.rows)
        .map(|i| {
            let mut acc = ring.zero();
            for (j, x) in v.iter().enumerate() {
                acc = ring.add(&acc, &ring.mul(a.get(i, j), x));
            }
            acc
        })
        .collect())
}

/// Row-reduce in place to reduced row echelon form; returns the pivot
/// column indices.
fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for j in col..m.cols {
            let v = f.mul(m.get(row, j), &inv);
            m.set(row, j, v);
        }
        for i in 0..m.rows {
            if i != row && !f.is_zero(m.get(i, col)) {
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(f, &mut work).len()
}

/// Basis of the right kernel `{v : Mv = 0}`; empty when the kernel is
/// trivial. Each basis vector has a 1 in one free column.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(work.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Solve `Mx = b`; `Ok(None)` when the system is inconsistent. Free
/// variables are set to zero.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::DimMismatch(format!(
            "system has {} rows but rhs has length {}",
            m.rows,
            b.len()
        )));
    }
    let mut aug = zero_matrix(f, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

/// Determinant by forward elimination over a field.
pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !f.is_zero(a.get(i, col))) else {
            return Ok(f.zero());
        };
        if p != col {
            a.swap_rows(col, p);
            det = f.neg(&det);
        }
        let pivot = a.get(col, col).clone();
        det = f.mul(&det, &pivot);
        let inv = f.inv(&pivot).expect("pivot is nonzero");
        for i in col + 1..n {
            if f.is_zero(a.get(i, col)) {
                continue;
            }
            let factor = f.mul(a.get(i, col), &inv);
            for j in col..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(col, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

// ---------------------------------------------------------------------------
// Fraction-free integer elimination

/// Determinant of an integer matrix by Bareiss fraction-free elimination:
/// every intermediate entry is a minor of the input, so nothing blows up
/// the way naive fraction arithmetic does.
pub fn bareiss_det(m: &Matrix<BigInt>) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    let last = a.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -last } else { last })
}

/// Rank of an integer matrix by fraction-free elimination with column
/// skipping.
pub fn bareiss_rank(m: &Matrix<BigInt>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut row = 0usize;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let num = a.get(i, j) * a.get(row, col) - a.get(i, col) * a.get(row, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, col, BigInt::zero());
        }
        prev = a.get(row, col).clone();
        row += 1;
    }
    row
}

/// Scale each row of a rational matrix to integers by the least common
/// multiple of its denominators; returns the integer matrix and the
/// per-row scalars.
fn clear_denominators(m: &Matrix<BigRational>) -> (Matrix<BigInt>, Vec<BigInt>) {
    let mut scalars = Vec::with_capacity(m.rows);
    let mut data = Vec::with_capacity(m.data.len());
    for i in 0..m.rows {
        let lcm = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        for v in m.row(i) {
            let scaled = v * BigRational::from_integer(lcm.clone());
            debug_assert!(scaled.denom().is_one());
            data.push(scaled.numer().clone());
        }
        scalars.push(lcm);
    }
    (Matrix { rows: m.rows, cols: m.cols, data }, scalars)
}

/// Exact determinant of a rational matrix via denominator clearing and
/// Bareiss elimination.
pub fn det_rational(m: &Matrix<BigRational>) -> Result<BigRational> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let (int_m, scalars) = clear_denominators(m);
    let d = bareiss_det(&int_m)?;
    let denom = scalars.into_iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(BigRational::new(d, denom))
}

/// Exact rank of a rational matrix via denominator clearing and
/// fraction-free elimination.
pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    let (int_m, _) = clear_denominators(m);
    bareiss_rank(&int_m)
}
