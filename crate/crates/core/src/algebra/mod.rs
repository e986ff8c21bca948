//! Finite-dimensional unital associative algebras given by structure constants.

mod ideal;
mod quiver;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{unit_vec, zero_vec, Field, Matrix, Scalar, Subspace};

pub use ideal::{corner_algebra, ideal_generated, jacobson_radical, quotient_algebra, two_sided_ideal, Corner, Quotient};
pub use quiver::{path_algebra, PathAlgebra, PathLabel, QuiverPresentation, Relation};

/// An algebra with basis `b_0..b_{n-1}` and products `b_i b_j = Σ_k c[i][j][k] b_k`.
///
/// Elements are coordinate vectors of length `dim`.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    // sparse row for b_i b_j at index i * dim + j
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    generators: OnceLock<Vec<Vec<Scalar>>>,
    radical: OnceLock<Result<Subspace>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.products == other.products && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds an algebra from a dense table `table[i][j] = b_i b_j` and checks
    /// the associativity and unit axioms on every basis triple.
    pub fn new(field: Field, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Algebra> {
        let dim = unit.len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("structure table is not {dim}x{dim}x{dim}")));
        }
        let products = table
            .into_iter()
            .flatten()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let a = Algebra::from_sparse_unchecked(field, dim, products, unit);
        a.validate()?;
        Ok(a)
    }

    /// Builds an algebra from `(i, j, k, c)` entries; unlisted constants are zero.
    pub fn from_entries(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!("unit has length {} but dim is {dim}", unit.len())));
        }
        let mut dense = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant index ({i},{j},{k}) out of range"
                )));
            }
            dense[i][j][k] = &dense[i][j][k] + &c;
        }
        Algebra::new(field, dense, unit)
    }

    pub(crate) fn from_sparse_unchecked(field: Field, dim: usize, products: Vec<Vec<(usize, Scalar)>>, unit: Vec<Scalar>) -> Algebra {
        Algebra {
            field,
            dim,
            products,
            unit,
            generators: OnceLock::new(),
            radical: OnceLock::new(),
        }
    }

    /// Builds from dense product vectors without checking axioms.
    pub(crate) fn from_dense_unchecked(field: Field, dim: usize, products: Vec<Vec<Scalar>>, unit: Vec<Scalar>) -> Algebra {
        let products = products
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Algebra::from_sparse_unchecked(field, dim, products, unit)
    }

    /// Exhaustive check of the unit and associativity axioms.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::UnitViolation { i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul_by_basis(&ij, k);
                    let jk = self.basis_product(j, k);
                    let right = self.basis_mul(i, &jk);
                    if left != right {
                        return Err(Error::AssociativityViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The field itself as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Algebra::from_sparse_unchecked(field, 1, vec![vec![(0, field.one())]], vec![field.one()])
    }

    /// The zero ring (dimension 0, where `1 = 0`).
    pub fn zero(field: Field) -> Algebra {
        Algebra::from_sparse_unchecked(field, 0, Vec::new(), Vec::new())
    }

    /// `k[x]/(x^n)` with basis `1, x, .., x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(if i + j < n { vec![(i + j, field.one())] } else { Vec::new() });
            }
        }
        Algebra::from_sparse_unchecked(field, n, products, unit_vec(field, n, 0))
    }

    /// The full matrix algebra `M_n(k)` with basis `E_{rc}` at index `r * n + c`.
    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        let d = n * n;
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let (r1, c1, r2, c2) = (i / n, i % n, j / n, j % n);
                products.push(if c1 == r2 { vec![(r1 * n + c2, field.one())] } else { Vec::new() });
            }
        }
        let mut unit = zero_vec(field, d);
        for r in 0..n {
            unit[r * n + r] = field.one();
        }
        Algebra::from_sparse_unchecked(field, d, products, unit)
    }

    /// The direct product `A × B`, basis of `A` first.
    pub fn direct_product(a: &Algebra, b: &Algebra) -> Algebra {
        assert_eq!(a.field, b.field);
        let n = a.dim + b.dim;
        let mut products = vec![Vec::new(); n * n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                products[i * n + j] = a.products[i * a.dim + j].clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                products[(a.dim + i) * n + a.dim + j] = b.products[i * b.dim + j].iter().map(|(k, c)| (a.dim + k, c.clone())).collect();
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        Algebra::from_sparse_unchecked(a.field, n, products, unit)
    }

    /// The opposite algebra: same basis, `b_i ∘ b_j = b_j b_i`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(self.products[j * n + i].clone());
            }
        }
        Algebra::from_sparse_unchecked(self.field, n, products, self.unit.clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        zero_vec(self.field, self.dim)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field, self.dim, i)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.products[i * self.dim + j]
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Dense table `c[i][j][k]`.
    pub fn structure_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (k, c) in &self.products[i * self.dim + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let row = &self.products[i * self.dim + j];
                if row.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in row {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// `x · b_j`.
    pub fn mul_by_basis(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in &self.products[i * self.dim + j] {
                out[*k] = &out[*k] + &(xi * s);
            }
        }
        out
    }

    /// `b_i · y`.
    pub fn basis_mul(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in &self.products[i * self.dim + j] {
                out[*k] = &out[*k] + &(yj * s);
            }
        }
        out
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        e.len() == self.dim && self.mul(e, e) == e
    }

    /// Matrix of `v ↦ v·a` in the row convention (row `i` is `b_i a`).
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        Matrix::from_rows(self.field, self.dim, (0..self.dim).map(|i| self.basis_mul(i, a)).collect())
    }

    /// Matrix of `v ↦ a·v` in the row convention (row `i` is `a b_i`).
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        Matrix::from_rows(self.field, self.dim, (0..self.dim).map(|i| self.mul_by_basis(a, i)).collect())
    }

    /// Span of all words in `gens`, including the empty word `1`.
    pub fn subalgebra_generated(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut queue = Vec::new();
        if span.insert(&self.unit) {
            queue.push(self.unit.clone());
        }
        while let Some(v) = queue.pop() {
            for g in gens {
                let w = self.mul(&v, g);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// A small set of basis elements generating the algebra, chosen greedily in basis order.
    pub fn generators(&self) -> &[Vec<Scalar>] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<Vec<Scalar>> = Vec::new();
            let mut span = self.subalgebra_generated(&gens);
            for i in 0..self.dim {
                let b = self.basis(i);
                if !span.contains(&b) {
                    gens.push(b);
                    span = self.subalgebra_generated(&gens);
                    if span.is_full() {
                        break;
                    }
                }
            }
            gens
        })
    }

    /// The Jacobson radical, computed once.
    pub fn radical(&self) -> Result<&Subspace> {
        self.radical.get_or_init(|| jacobson_radical(self)).as_ref().map_err(Clone::clone)
    }

    /// Trace of left multiplication by `b_k`, for every `k`.
    pub(crate) fn left_traces(&self) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| {
                let mut t = self.field.zero();
                for l in 0..self.dim {
                    for (m, c) in &self.products[k * self.dim + l] {
                        if *m == l {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Whether every product of basis vectors of `s` with algebra basis vectors stays in `s`.
    pub fn is_two_sided_ideal(&self, s: &Subspace) -> Result<()> {
        for (idx, v) in s.basis().iter().enumerate() {
            for g in 0..self.dim {
                if !s.contains(&self.mul_by_basis(v, g)) {
                    return Err(Error::NotAnIdeal {
                        basis_index: idx,
                        generator: g,
                        side: "right",
                    });
                }
                if !s.contains(&self.basis_mul(g, v)) {
                    return Err(Error::NotAnIdeal {
                        basis_index: idx,
                        generator: g,
                        side: "left",
                    });
                }
            }
        }
        Ok(())
    }

    /// Span of `{x y : x ∈ a, y ∈ b}`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim);
        for x in a.basis() {
            for y in b.basis() {
                out.insert(&self.mul(x, y));
            }
        }
        out
    }
}
