use std::sync::Arc;

use super::RightModule;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A `B`-`A`-bimodule. `λ(b)` gives the left action in the row convention
/// (`b·v = v·λ(b)`, so `λ(xy) = λ(y)λ(x)`), `ρ(a)` the right action.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, left_action: Vec<Matrix>, right_action: Vec<Matrix>) -> Result<Bimodule> {
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(Error::DimensionMismatch("one action matrix per basis element is required".into()));
        }
        let dim = left_action.first().or(right_action.first()).map_or(0, Matrix::rows);
        if left_action.iter().chain(&right_action).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(
                "bimodule action matrices are not all square of one size".into(),
            ));
        }
        let b = Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        };
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Bimodule {
        Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.as_right_module()
            .validate()
            .map_err(|e| Error::BimoduleViolation(format!("right action: {e}")))?;
        if !self.left_of(self.left.unit()).is_identity() {
            return Err(Error::BimoduleViolation("left unit does not act as the identity".into()));
        }
        let l = &self.left;
        for g in l.generators() {
            let lg = self.left_of(g);
            for i in 0..l.dim() {
                if lg.mul(&self.left_action[i]) != self.left_of(&l.mul(&l.basis(i), g)) {
                    return Err(Error::BimoduleViolation(format!("left action fails on b{i} times a generator")));
                }
            }
            for a in self.right.generators() {
                let ra = self.right_of(a);
                if lg.mul(&ra) != ra.mul(&lg) {
                    return Err(Error::BimoduleViolation("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let left = (0..a.dim()).map(|i| a.left_mult_matrix(&a.basis(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mult_matrix(&a.basis(i))).collect();
        Bimodule::new_unchecked(a.clone(), a.clone(), a.dim(), left, right)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right_action[i]
    }

    pub fn left_of(&self, b: &[Scalar]) -> Matrix {
        combine(self.left.field(), self.dim, &self.left_action, b)
    }

    pub fn right_of(&self, a: &[Scalar]) -> Matrix {
        combine(self.right.field(), self.dim, &self.right_action, a)
    }

    /// The underlying right `A`-module.
    pub fn as_right_module(&self) -> RightModule {
        RightModule::new_unchecked(self.right.clone(), self.dim, self.right_action.clone())
    }

    /// The underlying left `B`-module, as a right module over `B^op`.
    pub fn as_left_module(&self, opposite: &Arc<Algebra>) -> RightModule {
        RightModule::new_unchecked(opposite.clone(), self.dim, self.left_action.clone())
    }
}

fn combine(field: crate::linalg::Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            m.add_scaled_into(&mut out, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn regular_bimodule_is_valid() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rationals, 2));
        Bimodule::regular(&a).validate().unwrap();
        let op = Arc::new(a.opposite());
        Bimodule::regular(&a).as_left_module(&op).validate().unwrap();
    }

    #[test]
    fn noncommuting_actions_rejected() {
        let q = Field::Rationals;
        let k = Arc::new(Algebra::ground(q));
        let dual = Arc::new(Algebra::truncated_polynomial(q, 2));
        // left k acting by a non-identity is already a unit failure
        let bad = Bimodule::new(
            k,
            dual,
            vec![Matrix::from_i64(q, &[&[0, 0], &[0, 1]])],
            vec![Matrix::identity(q, 2), Matrix::from_i64(q, &[&[0, 1], &[0, 0]])],
        );
        assert!(matches!(bad, Err(Error::BimoduleViolation(_))));
    }
}
