//! Exact scalars and the dense linear algebra everything else is built on.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Rational, Scalar};
pub use matrix::{axpy, nullspace_basis, rank, rref_in_place, solve_linear, Matrix};
pub use subspace::Subspace;

/// The zero vector of length `n`.
pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}
