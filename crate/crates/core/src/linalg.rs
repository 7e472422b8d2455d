//! Dense integer matrices with Smith and Hermite normal forms.

use std::fmt;

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).clone() + a.clone() * other.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Restriction to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(rows, cols.len())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c).clone() + k.clone() * self.get(src, c).clone();
            self.set(dst, c, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst).clone() + k.clone() * self.get(r, src).clone();
            self.set(r, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and
/// `D = diag(diag)` padded with zeros.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    /// Nonzero invariant factors first, each positive and dividing the next.
    pub diag: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut diag = Vec::new();

    for t in 0..m.min(n) {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if !x.is_zero()
                    && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = d.get(t, t).clone();
            for i in t + 1..m {
                let q = d.get(i, t).clone() / p.clone();
                if !q.is_zero() {
                    d.add_row(i, t, &-q.clone());
                    u.add_row(i, t, &-q);
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j).clone() / p.clone();
                if !q.is_zero() {
                    d.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                }
            }
            // Any remainder left in row/column t is smaller than the pivot.
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    smaller = Some((i, t));
                    break;
                }
            }
            if smaller.is_none() {
                for j in t + 1..n {
                    if !d.get(t, j).is_zero() {
                        smaller = Some((t, j));
                        break;
                    }
                }
            }
            if let Some((i, j)) = smaller {
                if i != t {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(d.get(i, j).clone() % p.clone()).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.add_row(t, i, &T::one());
                    u.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        diag.push(d.get(t, t).clone());
    }
    while diag.len() < m.min(n) {
        diag.push(T::zero());
    }
    Smith { diag, u, v }
}

/// Row-style Hermite normal form `U * A = H`.
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. The result is canonical for the row lattice of `a`.
pub fn hermite_rows<T: Scalar>(a: &Matrix<T>) -> Hermite<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = Matrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                let x = h.get(i, j);
                if !x.is_zero() && best.map_or(true, |b| x.abs() < h.get(b, j).abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let p = h.get(r, j).clone();
            let mut clean = true;
            for i in r + 1..m {
                let q = h.get(i, j).clone() / p.clone();
                if !q.is_zero() {
                    h.add_row(i, r, &-q.clone());
                    u.add_row(i, r, &-q);
                }
                if !h.get(i, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, j).is_zero() {
            continue;
        }
        if h.get(r, j).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h.get(r, j).clone();
        for i in 0..r {
            let q = h.get(i, j).div_floor(&p);
            if !q.is_zero() {
                h.add_row(i, r, &-q.clone());
                u.add_row(i, r, &-q);
            }
        }
        pivots.push(j);
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Inverse of a unimodular square matrix, or `None` if it is not unimodular.
pub fn unimodular_inverse<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    if a.rows() != a.cols() {
        return None;
    }
    let herm = hermite_rows(a);
    if herm.h == Matrix::identity(a.rows()) {
        Some(herm.u)
    } else {
        None
    }
}

/// Some integer `x` with `A x = b`, if one exists.
pub fn solve_integer<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let smith = smith_normal_form(a);
    solve_with_smith(&smith, a.cols(), b)
}

pub(crate) fn solve_with_smith<T: Scalar>(smith: &Smith<T>, cols: usize, b: &[T]) -> Option<Vec<T>> {
    let ub = smith.u.mul_vec(b);
    let mut y = vec![T::zero(); cols];
    for (i, c) in ub.iter().enumerate() {
        let d = smith.diag.get(i).cloned().unwrap_or_else(T::zero);
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(smith.v.mul_vec(&y))
}
