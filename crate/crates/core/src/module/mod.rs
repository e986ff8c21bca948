//! Right modules over an [`Algebra`] and their homological invariants.

mod bimodule;
mod cover;
mod hom;
mod resolution;

use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Matrix, Scalar, Subspace};

pub use bimodule::Bimodule;
pub use cover::{FreeCover, Presentation};
pub use hom::{find_isomorphism, hom_space, IsoSearch};
pub use resolution::{
    ext_dim, ext_dims, projective_dimension, projective_dimension_report, tor_dim, tor_dims, tor_zero_by_coequalizer, FreeResolution,
    PdReport, PdResult, Periodicity,
};

/// A finite-dimensional right module: `ρ(b_i)` acts on row vectors, `v ↦ v·ρ(b_i)`.
#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
    presentation: OnceLock<Presentation>,
}

impl PartialEq for RightModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}

impl RightModule {
    /// Checks shapes, `ρ(1) = I` and `ρ(b_i)ρ(g) = ρ(b_i g)` for every algebra generator `g`.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<RightModule> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dim {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, Matrix::rows);
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("action matrices are not all square of one size".into()));
        }
        let m = RightModule::new_unchecked(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> RightModule {
        RightModule {
            algebra,
            dim,
            action,
            presentation: OnceLock::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.action_of(a.unit()).is_identity() {
            return Err(Error::ModuleAxiom("the unit does not act as the identity".into()));
        }
        for g in a.generators() {
            let rg = self.action_of(g);
            for i in 0..a.dim() {
                if self.action[i].mul(&rg) != self.action_of(&a.mul(&a.basis(i), g)) {
                    return Err(Error::ModuleAxiom(format!("rho(b{i}) rho(g) != rho(b{i} g) for generator {g:?}")));
                }
            }
        }
        Ok(())
    }

    /// `A_A`.
    pub fn regular(algebra: &Arc<Algebra>) -> RightModule {
        let action = (0..algebra.dim()).map(|j| algebra.right_mult_matrix(&algebra.basis(j))).collect();
        RightModule::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// `A^g`, block `t` spanning coordinates `t·dim A .. (t+1)·dim A`.
    pub fn free(algebra: &Arc<Algebra>, g: usize) -> RightModule {
        let reg = RightModule::regular(algebra);
        let action = reg
            .action
            .iter()
            .map(|m| Matrix::block_diagonal(algebra.field(), &vec![m; g]))
            .collect();
        RightModule::new_unchecked(algebra.clone(), g * algebra.dim(), action)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> RightModule {
        let action = vec![Matrix::zeros(algebra.field(), 0, 0); algebra.dim()];
        RightModule::new_unchecked(algebra.clone(), 0, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn same_algebra(&self, other: &RightModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub(crate) fn check_same_algebra(&self, other: &RightModule) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `ρ(a)` for an arbitrary element `a`.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.algebra.field(), self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                self.action[i].add_scaled_into(&mut out, c);
            }
        }
        out
    }

    /// `v·a`.
    pub fn act(&self, v: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.algebra.field(), self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, c, &self.action[i].apply_row(v));
            }
        }
        out
    }

    /// `v·b_i`.
    pub fn act_basis(&self, v: &[Scalar], i: usize) -> Vec<Scalar> {
        self.action[i].apply_row(v)
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule> {
        self.check_same_algebra(other)?;
        let field = self.algebra.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| Matrix::block_diagonal(field, &[x, y]))
            .collect();
        Ok(RightModule::new_unchecked(self.algebra.clone(), self.dim + other.dim, action))
    }

    /// The submodule generated by `vectors`.
    pub fn submodule_generated(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::zero(self.algebra.field(), self.dim);
        let gens: Vec<Matrix> = self.algebra.generators().iter().map(|g| self.action_of(g)).collect();
        let mut queue = Vec::new();
        for v in vectors {
            if span.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.apply_row(&v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.action.iter().all(|m| s.contains(&m.apply_row(v))))
    }

    /// The submodule on `s`, in the echelon basis of `s`.
    pub fn submodule(&self, s: &Subspace) -> Result<RightModule> {
        if !self.is_submodule(s) {
            return Err(Error::ModuleAxiom("subspace is not a submodule".into()));
        }
        let field = self.algebra.field();
        let action = self
            .action
            .iter()
            .map(|m| {
                let rows = s
                    .basis()
                    .iter()
                    .map(|v| s.coordinates(&m.apply_row(v)).expect("submodule is closed"))
                    .collect();
                Matrix::from_rows(field, s.dim(), rows)
            })
            .collect();
        Ok(RightModule::new_unchecked(self.algebra.clone(), s.dim(), action))
    }

    /// `M/s` and the projection matrix `M → M/s`.
    pub fn quotient(&self, s: &Subspace) -> Result<(RightModule, Matrix)> {
        if !self.is_submodule(s) {
            return Err(Error::ModuleAxiom("subspace is not a submodule".into()));
        }
        let field = self.algebra.field();
        let keep = s.complement_indices();
        let d = keep.len();
        let mut slot = vec![usize::MAX; self.dim];
        for (t, &i) in keep.iter().enumerate() {
            slot[i] = t;
        }
        let project = |v: &[Scalar]| {
            let mut out = zero_vec(field, d);
            for (i, c) in s.reduce(v).into_iter().enumerate() {
                if !c.is_zero() {
                    out[slot[i]] = c;
                }
            }
            out
        };
        let proj = Matrix::from_rows(
            field,
            d,
            (0..self.dim)
                .map(|i| project(&crate::linalg::unit_vec(field, self.dim, i)))
                .collect(),
        );
        let action = self
            .action
            .iter()
            .map(|m| Matrix::from_rows(field, d, keep.iter().map(|&i| project(m.row(i))).collect()))
            .collect();
        Ok((RightModule::new_unchecked(self.algebra.clone(), d, action), proj))
    }

    /// `M·rad A`.
    pub fn radical_submodule(&self) -> Result<Subspace> {
        let rad = self.algebra.radical()?;
        let mats: Vec<Matrix> = rad.basis().iter().map(|r| self.action_of(r)).collect();
        let field = self.algebra.field();
        Ok(Subspace::from_vectors(field, self.dim, mats.iter().flat_map(|m| m.row_vecs())))
    }

    /// `M / M·rad A`.
    pub fn top(&self) -> Result<RightModule> {
        Ok(self.quotient(&self.radical_submodule()?)?.0)
    }

    /// The module over `B` obtained along an algebra map `B → A` (row `i` of `map` is the image of `b_i`).
    pub fn pull_back(&self, b: &Arc<Algebra>, map: &Matrix) -> RightModule {
        assert_eq!(map.rows(), b.dim());
        assert_eq!(map.cols(), self.algebra.dim());
        let action = (0..b.dim()).map(|i| self.action_of(map.row(i))).collect();
        RightModule::new_unchecked(b.clone(), self.dim, action)
    }

    /// Whether every element of `ideal` acts as zero.
    pub fn annihilated_by(&self, ideal: &Subspace) -> bool {
        ideal.basis().iter().all(|x| self.action_of(x).is_zero())
    }

    /// The module restricted to the subspace `Me` for an idempotent `e`, over the corner `eAe`.
    pub fn corner_restriction(&self, corner: &crate::algebra::Corner, corner_algebra: &Arc<Algebra>) -> RightModule {
        let field = self.algebra.field();
        let me = Subspace::from_vectors(field, self.dim, self.action_of(&corner.idempotent).row_vecs());
        let action = (0..corner.algebra.dim())
            .map(|a| {
                let m = self.action_of(corner.embed.row(a));
                let rows = me
                    .basis()
                    .iter()
                    .map(|v| me.coordinates(&m.apply_row(v)).expect("Me is stable under eAe"))
                    .collect();
                Matrix::from_rows(field, me.dim(), rows)
            })
            .collect();
        RightModule::new_unchecked(corner_algebra.clone(), me.dim(), action)
    }
}
