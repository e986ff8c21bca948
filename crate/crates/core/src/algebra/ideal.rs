use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Field, Matrix, Scalar, Subspace};

/// `eAe` with its own basis, together with the embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    /// Row `a` is the image in `A` of corner basis vector `a`.
    pub embed: Matrix,
    pub idempotent: Vec<Scalar>,
}

impl Corner {
    /// Corner coordinates of an element of `A` lying in `eAe`.
    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        Subspace::from_vectors(self.embed.field(), self.embed.cols(), self.embed.row_vecs()).coordinates(x)
    }
}

/// `A/I` with the projection `A → A/I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    /// `dim A × dim(A/I)`; row `i` is the image of `b_i`.
    pub proj: Matrix,
    /// Quotient basis vector `t` is the image of `b_{lift[t]}`.
    pub lift: Vec<usize>,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.proj.apply_row(x)
    }
}

fn check_idempotent(a: &Algebra, e: &[Scalar]) -> Result<()> {
    if e.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "idempotent has length {} but dim is {}",
            e.len(),
            a.dim()
        )));
    }
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    Ok(())
}

/// Restricts the multiplication of `A` to `eAe`, with unit `e`.
pub fn corner_algebra(a: &Algebra, e: &[Scalar]) -> Result<Corner> {
    check_idempotent(a, e)?;
    let field = a.field();
    let span = Subspace::from_vectors(field, a.dim(), (0..a.dim()).map(|i| a.mul(&a.mul_by_basis(e, i), e)));
    Ok(corner_on(a, span, e))
}

/// The subalgebra `span` (closed under multiplication, with unit `e`) as a standalone algebra.
pub(crate) fn corner_on(a: &Algebra, span: Subspace, e: &[Scalar]) -> Corner {
    let field = a.field();
    let d = span.dim();
    let basis = span.basis();
    let mut products = Vec::with_capacity(d * d);
    for x in basis {
        for y in basis {
            products.push(span.coordinates(&a.mul(x, y)).expect("corner is closed under multiplication"));
        }
    }
    let unit = span.coordinates(e).expect("idempotent lies in its corner");
    let algebra = Algebra::from_dense_unchecked(field, d, products, unit);
    debug_assert!(algebra.validate().is_ok());
    Corner {
        embed: span.basis_matrix(),
        algebra,
        idempotent: e.to_vec(),
    }
}

/// The smallest two-sided ideal containing `gens`.
pub fn ideal_generated(a: &Algebra, gens: &[Vec<Scalar>]) -> Subspace {
    let mut span = Subspace::zero(a.field(), a.dim());
    let mut queue = Vec::new();
    for g in gens {
        if span.insert(g) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..a.dim() {
            for w in [a.basis_mul(i, &v), a.mul_by_basis(&v, i)] {
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
    }
    span
}

/// `AeA`.
pub fn two_sided_ideal(a: &Algebra, e: &[Scalar]) -> Result<Subspace> {
    check_idempotent(a, e)?;
    Ok(ideal_generated(a, &[e.to_vec()]))
}

/// `A/I`, with basis the images of the standard basis vectors off the echelon pivots of `I`.
pub fn quotient_algebra(a: &Algebra, ideal: &Subspace) -> Result<Quotient> {
    if ideal.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch("ideal lives in a different ambient space".into()));
    }
    a.is_two_sided_ideal(ideal)?;
    let field = a.field();
    let lift = ideal.complement_indices();
    let d = lift.len();
    let mut slot = vec![usize::MAX; a.dim()];
    for (t, &i) in lift.iter().enumerate() {
        slot[i] = t;
    }
    let project = |x: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.reduce(x);
        let mut out = zero_vec(field, d);
        for (i, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                out[slot[i]] = c;
            }
        }
        out
    };
    let proj = Matrix::from_rows(field, d, (0..a.dim()).map(|i| project(&a.basis(i))).collect());
    let mut products = Vec::with_capacity(d * d);
    for &i in &lift {
        for &j in &lift {
            products.push(project(&a.basis_product(i, j)));
        }
    }
    let unit = project(a.unit());
    let algebra = Algebra::from_dense_unchecked(field, d, products, unit);
    debug_assert!(algebra.validate().is_ok());
    Ok(Quotient {
        algebra,
        proj,
        lift,
        ideal: ideal.clone(),
    })
}

/// The radical as the kernel of the trace form `(x, y) ↦ tr(L_{xy})`, then checked to be a nilpotent ideal.
pub fn jacobson_radical(a: &Algebra) -> Result<Subspace> {
    let n = a.dim();
    if let Field::Prime(p) = a.field() {
        if p as usize <= n {
            return Err(Error::UnsupportedCharacteristic { p, dim: n });
        }
    }
    let t = a.left_traces();
    let gram = Matrix::from_fn(a.field(), n, n, |i, j| {
        let mut s = a.field().zero();
        for (k, c) in &a.products[i * n + j] {
            if !t[*k].is_zero() {
                s = &s + &(c * &t[*k]);
            }
        }
        s
    });
    let rad = Subspace::from_vectors(a.field(), n, gram.left_nullspace());
    if let Err(e) = a.is_two_sided_ideal(&rad) {
        return Err(Error::RadicalVerification(format!("trace-form kernel is not an ideal: {e}")));
    }
    let mut power = rad.clone();
    let mut steps = 0;
    while !power.is_zero() {
        steps += 1;
        if steps > n {
            return Err(Error::RadicalVerification("trace-form kernel is not nilpotent".into()));
        }
        power = a.product_space(&power, &rad);
    }
    Ok(rad)
}
