//! Dense matrices over GF(q) and Gaussian elimination.
//!
//! Matrices do not carry their field; every operation that does arithmetic
//! takes the field explicitly.

use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has length {got}, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("entry {value} at ({row}, {col}) is outside GF({q})")]
    Entry {
        row: usize,
        col: usize,
        value: Elem,
        q: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of [`FqMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows. An empty row list gives a `0 x cols` matrix,
    /// with `cols` taken as 0.
    pub fn from_rows<R: AsRef<[Elem]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(FqMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Like [`FqMatrix::from_rows`] but with an explicit width, so zero rows
    /// still remember their column count.
    pub fn from_rows_with_cols<R: AsRef<[Elem]>>(rows: &[R], cols: usize) -> Result<Self, MatrixError> {
        if rows.is_empty() {
            return Ok(Self::zeros(0, cols));
        }
        let m = Self::from_rows(rows)?;
        if m.cols != cols {
            return Err(MatrixError::Ragged {
                row: 0,
                expected: cols,
                got: m.cols,
            });
        }
        Ok(m)
    }

    /// Checks every entry lies in the field.
    pub fn check_entries(&self, field: &Field) -> Result<(), MatrixError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v >= field.q() {
                    return Err(MatrixError::Entry {
                        row: i,
                        col: j,
                        value: v,
                        q: field.q(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        FqMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j) == 0)
    }

    /// Reduced row-echelon form with leading ones. Pivots are taken in the
    /// leftmost column that has a nonzero entry, from the topmost such row.
    pub fn rref(&self, field: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).rank
    }

    /// The nonzero rows of the reduced row-echelon form.
    pub fn row_basis(&self, field: &Field) -> Self {
        let r = self.rref(field);
        let idx: Vec<usize> = (0..r.rank).collect();
        r.matrix.select_rows(&idx)
    }

    /// `x * M` for a row vector `x` of length `rows`.
    pub fn vec_mul(&self, field: &Field, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rows, "vector length must equal row count");
        let mut out = vec![0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = self.row(i);
            for (o, &v) in out.iter_mut().zip(row) {
                *o = field.add(*o, field.mul(xi, v));
            }
        }
        out
    }

    /// Some `x` with `x * M = target`, if one exists. Unique when the rows are
    /// independent.
    pub fn solve_left(&self, field: &Field, target: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(target.len(), self.cols, "target length must equal column count");
        // Solve M^T x^T = target^T through the augmented system.
        let mut aug = Self::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &t) in target.iter().enumerate() {
            aug.set(j, self.rows, t);
        }
        let r = aug.rref(field);
        if r.pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (row, &c) in r.pivots.iter().enumerate() {
            x[c] = r.matrix.get(row, self.rows);
        }
        Some(x)
    }

    /// A basis (as rows) of `{x : M x^T = 0}`.
    pub fn null_space(&self, field: &Field) -> Self {
        let r = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (row, &pc) in r.pivots.iter().enumerate() {
                out.set(k, pc, field.neg(r.matrix.get(row, fc)));
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, field: &Field, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = other.vec_mul(field, self.row(i));
            out.row_mut(i).copy_from_slice(&row);
        }
        out
    }
}
