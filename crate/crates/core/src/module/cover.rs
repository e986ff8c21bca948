use super::RightModule;
use crate::error::{Error, Result};
use crate::linalg::{add_vec, Matrix, Scalar, Subspace};

/// Generators of a module with the cover `A^g ↠ M` they define.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<Vec<Scalar>>,
    /// Row `t·dim A + i` is `m_t·b_i`.
    pub cover: Matrix,
    /// A linear right inverse: `section · cover = I`.
    pub section: Matrix,
    /// Kernel of the cover inside `A^g`.
    pub kernel: Subspace,
}

/// A free cover `A^rank ↠ M`.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub rank: usize,
    pub generators: Vec<Vec<Scalar>>,
    pub map: Matrix,
}

impl RightModule {
    /// Greedy generators (standard basis vectors not yet reached), then pairwise merges while they still generate.
    fn choose_generators(&self) -> Vec<Vec<Scalar>> {
        let field = self.algebra.field();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        let mut span = Subspace::zero(field, self.dim);
        for j in 0..self.dim {
            if span.is_full() {
                break;
            }
            let e = crate::linalg::unit_vec(field, self.dim, j);
            if !span.contains(&e) {
                span = span.sum(&self.submodule_generated(std::slice::from_ref(&e)));
                gens.push(e);
            }
        }
        'merge: loop {
            for s in 0..gens.len() {
                for t in s + 1..gens.len() {
                    let mut cand = gens.clone();
                    cand[s] = add_vec(&gens[s], &gens[t]);
                    cand.remove(t);
                    if self.submodule_generated(&cand).is_full() {
                        gens = cand;
                        continue 'merge;
                    }
                }
            }
            break;
        }
        gens
    }

    pub(crate) fn presentation_with(&self, generators: Vec<Vec<Scalar>>) -> Presentation {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let mut rows = Vec::with_capacity(generators.len() * n);
        for m in &generators {
            for i in 0..n {
                rows.push(self.act_basis(m, i));
            }
        }
        let cover = Matrix::from_rows(field, self.dim, rows);
        let ct = cover.transpose();
        let section_rows = (0..self.dim)
            .map(|v| {
                ct.solve(&crate::linalg::unit_vec(field, self.dim, v))
                    .expect("shapes agree")
                    .expect("generators span the module")
            })
            .collect();
        let section = Matrix::from_rows(field, cover.rows(), section_rows);
        let kernel = Subspace::from_vectors(field, cover.rows(), cover.left_nullspace());
        Presentation {
            generators,
            cover,
            section,
            kernel,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation.get_or_init(|| self.presentation_with(self.choose_generators()))
    }

    /// A free cover with few generators.
    pub fn minimal_free_cover(&self) -> FreeCover {
        let p = self.presentation();
        FreeCover {
            rank: p.generators.len(),
            generators: p.generators.clone(),
            map: p.cover.clone(),
        }
    }

    /// The full kernel of the free cover, as a submodule of `A^g`.
    pub fn free_syzygy(&self) -> RightModule {
        let p = self.presentation();
        let free = RightModule::free(&self.algebra, p.generators.len());
        free.submodule(&p.kernel).expect("kernel of a module map is a submodule")
    }

    /// `Ω(M)`: the kernel of a projective cover `P(M) ↠ M`.
    ///
    /// `P(M)` is cut out of the free cover `F = A^g` by an idempotent endomorphism of `F`
    /// lifted from the projection of `top F` onto a complement of the kernel of `top F → top M`.
    pub fn syzygy(&self) -> Result<RightModule> {
        let a = self.algebra.clone();
        if self.dim == 0 {
            return Ok(RightModule::zero(&a));
        }
        let field = a.field();
        let n = a.dim();
        let p = self.presentation();
        let g = p.generators.len();
        let big = g * n;
        let free = RightModule::free(&a, g);
        let rad = a.radical()?;
        let rad_f = Subspace::from_vectors(
            field,
            big,
            (0..g).flat_map(|t| {
                rad.basis().iter().map(move |r| {
                    let mut v = vec![field.zero(); big];
                    v[t * n..(t + 1) * n].clone_from_slice(r);
                    v
                })
            }),
        );
        if rad_f.contains_subspace(&p.kernel) {
            return free.submodule(&p.kernel);
        }
        let w0 = p.kernel.sum(&rad_f);

        // unknowns: y_s = E(ε_s) for each generator s, laid out as one vector of length g·big
        let reducer = |s: &Subspace| {
            let comp = s.complement_indices();
            let rows = (0..big)
                .map(|j| {
                    let r = s.reduce(&crate::linalg::unit_vec(field, big, j));
                    comp.iter().map(|&c| r[c].clone()).collect()
                })
                .collect();
            Matrix::from_rows(field, comp.len(), rows)
        };
        let red_w = reducer(&w0);
        let red_r = reducer(&rad_f);
        let eps = |s: usize| {
            let mut v = vec![field.zero(); big];
            v[s * n..(s + 1) * n].clone_from_slice(a.unit());
            v
        };
        let mut blocks: Vec<(Matrix, Vec<Scalar>)> = Vec::new();
        for s in 0..g {
            let mut col = Matrix::zeros(field, g * big, red_w.cols());
            col.set_block(s * big, 0, &red_w);
            blocks.push((col, red_w.apply_row(&eps(s))));
        }
        for w in w0.basis() {
            let mut col = Matrix::zeros(field, g * big, red_r.cols());
            for s in 0..g {
                let ws = &w[s * n..(s + 1) * n];
                if ws.iter().any(|c| !c.is_zero()) {
                    col.set_block(s * big, 0, &free.action_of(ws).mul(&red_r));
                }
            }
            blocks.push((col, vec![field.zero(); red_r.cols()]));
        }
        let total_cols: usize = blocks.iter().map(|(m, _)| m.cols()).sum();
        let mut system = Matrix::zeros(field, g * big, total_cols);
        let mut rhs = Vec::with_capacity(total_cols);
        let mut c0 = 0;
        for (m, r) in &blocks {
            system.set_block(0, c0, m);
            c0 += m.cols();
            rhs.extend(r.iter().cloned());
        }
        let y = system
            .transpose()
            .solve(&rhs)?
            .ok_or_else(|| Error::RadicalVerification("top of the free cover has no complementary idempotent".into()))?;
        let mut e = Matrix::zeros(field, big, big);
        for s in 0..g {
            let ys = &y[s * big..(s + 1) * big];
            for j in 0..n {
                let row = free.act_basis(ys, j);
                for (c, x) in row.into_iter().enumerate() {
                    e.set(s * n + j, c, x);
                }
            }
        }
        let mut steps = 0;
        loop {
            let e2 = e.mul(&e);
            if e2 == e {
                break;
            }
            steps += 1;
            if steps > 64 {
                return Err(Error::RadicalVerification("idempotent lifting did not converge".into()));
            }
            let e3 = e2.mul(&e);
            e = e2.scale(&field.from_i64(3)).sub(&e3.scale(&field.from_i64(2)));
        }
        let projective = Subspace::from_vectors(field, big, e.row_vecs());
        let omega = p.kernel.intersection(&projective);
        debug_assert_eq!(projective.dim() - omega.dim(), self.dim);
        free.submodule(&omega)
    }

    /// Whether some module map `s: M → A^g` splits the free cover.
    pub fn cover_splits(&self) -> Result<bool> {
        if self.dim == 0 {
            return Ok(true);
        }
        let field = self.algebra.field();
        let p = self.presentation();
        let free = RightModule::free(&self.algebra, p.generators.len());
        let homs = super::hom_space(self, &free)?;
        let target: Vec<Scalar> = Matrix::identity(field, self.dim).entries().to_vec();
        let columns: Vec<Vec<Scalar>> = homs.iter().map(|h| h.mul(&p.cover).entries().to_vec()).collect();
        let system = Matrix::from_fn(field, target.len(), columns.len(), |r, c| columns[c][r].clone());
        Ok(system.solve(&target)?.is_some())
    }

    /// Projectivity, decided both by splitting of the cover and by vanishing of `Ω(M)`.
    pub fn is_projective(&self) -> Result<bool> {
        let split = self.cover_splits()?;
        let zero_syzygy = self.syzygy()?.is_zero();
        assert_eq!(split, zero_syzygy, "cover splitting and syzygy vanishing disagree");
        Ok(split)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::a2;
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;
    use std::sync::Arc;

    const Q: Field = Field::Rationals;

    fn simple(a: &Arc<Algebra>, m: &RightModule) -> RightModule {
        let _ = a;
        m.top().unwrap()
    }

    #[test]
    fn covers_of_small_modules() {
        let k = Arc::new(Algebra::ground(Q));
        let c = RightModule::regular(&k).minimal_free_cover();
        assert_eq!(c.rank, 1);
        assert_eq!(RightModule::zero(&k).minimal_free_cover().rank, 0);

        let dual = Arc::new(Algebra::truncated_polynomial(Q, 2));
        let field_mod = simple(&dual, &RightModule::regular(&dual));
        let c = field_mod.minimal_free_cover();
        assert_eq!(c.rank, 1);
        let omega = field_mod.syzygy().unwrap();
        assert_eq!(omega.dim(), 1);
        assert!(omega.action(1).is_zero());
    }

    #[test]
    fn regular_a2_needs_one_generator() {
        let (a, _) = a2();
        let reg = RightModule::regular(&a);
        assert_eq!(reg.minimal_free_cover().rank, 1);
        assert!(reg.is_projective().unwrap());
        assert!(reg.syzygy().unwrap().is_zero());
    }

    #[test]
    fn simples_of_a2() {
        let (a, p) = a2();
        let reg = RightModule::regular(&a);
        let top = reg.top().unwrap();
        // S_0 = top of e_0 A, S_1 = e_1 A is projective
        let s1 = {
            let e1a = reg.submodule_generated(&[p.vertex(1)]);
            reg.submodule(&e1a).unwrap()
        };
        assert_eq!(s1.dim(), 1);
        assert!(s1.is_projective().unwrap());
        assert!(s1.syzygy().unwrap().is_zero());
        let s0 = {
            let e0a = reg.submodule_generated(&[p.vertex(0)]);
            let m = reg.submodule(&e0a).unwrap();
            m.top().unwrap()
        };
        assert_eq!(s0.dim(), 1);
        assert!(!s0.is_projective().unwrap());
        let omega = s0.syzygy().unwrap();
        assert_eq!(omega.dim(), 1);
        assert!(omega.is_projective().unwrap());
        assert!(!top.is_projective().unwrap());
    }

    #[test]
    fn zero_module_is_projective() {
        let dual = Arc::new(Algebra::truncated_polynomial(Q, 2));
        assert!(RightModule::zero(&dual).is_projective().unwrap());
        assert!(RightModule::free(&dual, 2).is_projective().unwrap());
    }
}
