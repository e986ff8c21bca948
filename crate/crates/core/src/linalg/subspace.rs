use super::field::{Field, Scalar};
use super::matrix::{axpy, rref_in_place, Matrix};

/// A subspace of `k^n` held as a reduced-echelon basis.
///
/// The basis is canonical: two `Subspace`s are equal iff they span the same space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::from_vectors(field, ambient, Matrix::identity(field, ambient).row_vecs())
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Subspace {
        let mut rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length");
        }
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the rows of a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.rows.clone())
    }

    /// Standard coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&c| !used[c]).collect()
    }

    /// `v` minus its component along the subspace; zero on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -&out[p];
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span, keeping the echelon form. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(v);
        }
        out
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x·A = y·B  ⇔  (x, -y) in the left kernel of [A; B]
        let a = self.dim();
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let m = Matrix::from_rows(self.field, self.ambient, stacked);
        let kernel = m.left_nullspace();
        let vectors = kernel.into_iter().map(|k| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (i, c) in k[..a].iter().enumerate() {
                if !c.is_zero() {
                    axpy(&mut v, c, &self.rows[i]);
                }
            }
            v
        });
        Subspace::from_vectors(self.field, self.ambient, vectors)
    }

    /// Image under `v ↦ v·m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::from_vectors(self.field, m.cols(), self.rows.iter().map(|v| m.apply_row(v)))
    }
}
