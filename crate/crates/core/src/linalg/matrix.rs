use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
///
/// Vectors are rows throughout the crate: a matrix `m` acts by `v ↦ v·m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                axpy(out_row, a, other.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `acc += c * self`.
    pub fn add_scaled_into(&self, acc: &mut Matrix, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        axpy(&mut acc.data, c, &self.data);
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if !a.is_zero() {
                axpy(&mut out, a, self.row(k));
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn block_diagonal(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (Matrix::from_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Basis of `{x : A x = 0}` (column vectors), itself in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        let mut is_pivot = vec![None; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -&rows[r][free];
            }
            basis.push(x);
        }
        let n = basis.len();
        let p = rref_in_place(&mut basis, self.cols);
        debug_assert_eq!(p.len(), n);
        basis
    }

    /// Basis of `{v : v·A = 0}` (row vectors), in reduced echelon form.
    pub fn left_nullspace(&self) -> Vec<Vec<Scalar>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(
            self.field,
            n,
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// Some `x` with `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `acc += c * x`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

/// Gauss-Jordan elimination with first-nonzero pivoting in column order.
///
/// Leaves the nonzero rows in reduced echelon form at the top of `rows` and
/// returns the pivot columns; trailing rows are zero.
pub fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    a.solve(b)
}

pub fn nullspace_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    a.nullspace()
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}
