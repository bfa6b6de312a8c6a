//! Exact dense linear algebra over Q(i)[√2].
//!
//! Gaussian elimination with deterministic pivoting (first nonzero entry of
//! the leftmost unfinished column), so kernels and solved coordinates are
//! reproducible from run to run. Division in the coefficient field is exact,
//! so nothing is ever lost to rounding.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Column-major construction: `cols[j]` becomes the j-th column.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r));
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = self
                .get(row, col)
                .inv()
                .expect("pivot is nonzero by construction");
            if !inv.is_one() {
                for j in col..self.cols {
                    let v = self.get(row, j);
                    if !v.is_zero() {
                        let nv = v * &inv;
                        self.set(row, j, nv);
                    }
                }
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(row, j);
                    if v.is_zero() {
                        continue;
                    }
                    let delta = v * &factor;
                    let nv = self.get(r, j) - &delta;
                    self.set(r, j, nv);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the null space {x : A x = 0}. One vector per free column, in
    /// column order, each scaled so its first nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_row: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (&pc, &pr) in &pivot_row {
                let entry = m.get(pr, free);
                if !entry.is_zero() {
                    v[pc] = -entry;
                }
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Exact solution of A x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix, if it is nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = aug.rref();
        // Singular iff some pivot escapes into the augmented identity block.
        if pivots.len() != n || pivots.iter().enumerate().any(|(r, &c)| r != c) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn matvec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x[j].is_zero() {
                        acc += &(a * &x[j]);
                    }
                }
                acc
            })
            .collect()
    }
}

fn normalize_leading(v: &mut [Scalar]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()) {
        let inv = lead.inv().expect("nonzero leading coefficient");
        if !inv.is_one() {
            for c in v.iter_mut() {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
        }
    }
}

/// Rank of the span of a set of vectors.
pub fn span_dim(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// span(inner) ⊆ span(outer), decided exactly by a rank comparison.
pub fn span_contains(outer: &[Vec<Scalar>], inner: &[Vec<Scalar>]) -> bool {
    if inner.is_empty() {
        return true;
    }
    if outer.is_empty() {
        return inner.iter().all(|v| v.iter().all(Scalar::is_zero));
    }
    let outer_rank = span_dim(outer);
    let mut all: Vec<Vec<Scalar>> = outer.to_vec();
    all.extend(inner.iter().cloned());
    span_dim(&all) == outer_rank
}

pub fn spans_equal(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    span_contains(a, b) && span_contains(b, a)
}
