//! Dense exact linear algebra over F_{q^m}: row-major matrices, Gauss-Jordan
//! elimination with first-nonzero pivoting, rank, right kernels and linear
//! system solving. Sizes stay small (a few hundred at most), so everything is
//! in-place and quadratic-to-cubic without further tricks.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldParams};
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(fp: &FieldParams, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![fp.zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch { context: "ragged matrix rows".into() });
        }
        Ok(Self { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(fp: &FieldParams, n: usize) -> Self {
        let mut m = Self::zeros(fp, n, n);
        for i in 0..n {
            m[(i, i)] = fp.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)]);
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn add(&self, fp: &FieldParams, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| fp.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, fp: &FieldParams, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| fp.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, fp: &FieldParams, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(fp, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = fp.add(out[(i, j)], fp.mul(a, other[(l, j)]));
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// column of each of the first `rank` rows, in order.
    pub fn rref(&mut self, fp: &FieldParams) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // first nonzero pivot; exact arithmetic needs no pivot strategy
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    let tmp = self[(row, c)];
                    self[(row, c)] = self[(p, c)];
                    self[(p, c)] = tmp;
                }
            }
            let inv = fp.inv(self[(row, col)]).expect("pivot is nonzero");
            for c in col..self.cols {
                self[(row, c)] = fp.mul(self[(row, c)], inv);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)];
                for c in col..self.cols {
                    let delta = fp.mul(factor, self[(row, c)]);
                    self[(r, c)] = fp.sub(self[(r, c)], delta);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, fp: &FieldParams) -> usize {
        self.clone().rref(fp).len()
    }

    /// A maximal set of linearly independent vectors v with self * v = 0.
    pub fn kernel_basis(&self, fp: &FieldParams) -> Vec<Vec<FieldElement>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref(fp);
        kernel_from_rref(fp, &reduced, &pivots, self.cols)
    }
}

fn kernel_from_rref(
    fp: &FieldParams,
    reduced: &Matrix,
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<FieldElement>> {
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![fp.zero(); cols];
        v[free] = fp.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = fp.neg(reduced[(row, free)]);
        }
        basis.push(v);
    }
    basis
}

/// Solution set of A x = b: rank of A, one particular solution (when the
/// system is consistent) and a basis of the kernel of A.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub rank: usize,
    pub particular: Option<Vec<FieldElement>>,
    pub kernel: Vec<Vec<FieldElement>>,
}

pub fn solve(fp: &FieldParams, a: &Matrix, b: &[FieldElement]) -> LinearSolution {
    assert_eq!(a.rows(), b.len());
    let mut aug = Matrix::zeros(fp, a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            aug[(r, c)] = a[(r, c)];
        }
        aug[(r, a.cols())] = b[r];
    }
    let pivots = aug.rref(fp);
    let inconsistent = pivots.last() == Some(&a.cols());
    let a_pivots: Vec<usize> =
        pivots.iter().copied().filter(|&c| c < a.cols()).collect();
    let rank = a_pivots.len();
    let particular = if inconsistent {
        None
    } else {
        let mut x = vec![fp.zero(); a.cols()];
        for (row, &p) in a_pivots.iter().enumerate() {
            x[p] = aug[(row, a.cols())];
        }
        Some(x)
    };
    // kernel of A read off the same reduction, ignoring the augmented column
    let kernel = kernel_from_rref(fp, &aug, &a_pivots, a.cols());
    LinearSolution { rank, particular, kernel }
}
