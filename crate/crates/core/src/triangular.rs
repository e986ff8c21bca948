//! Triangular matrix algebras `[[R, 0], [N, S]]` with `N` an `S`-`R`-bimodule.
//!
//! The basis is ordered `R`, then `N`, then `S`, and `(r, n, s)(r', n', s') = (rr', nr' + sn', ss')`.

use std::sync::Arc;

use crate::algebra::{corner_algebra, Algebra};
use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::linalg::{sub_vec, zero_vec, Matrix, Scalar, Subspace};
use crate::module::{hom_space, projective_dimension, Bimodule, PdResult, RightModule};
use crate::recollement::{global_dimension_upper, restrict_map, singular_equivalence_criterion, RecollementData};
use crate::report::{CheckReport, Verdict};
use crate::skew::SkewAlgebra;

#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    pub r: Arc<Algebra>,
    pub s: Arc<Algebra>,
    pub n: Bimodule,
    pub total: Arc<Algebra>,
    /// `diag(0, 1_S)`.
    pub corner_e: Vec<Scalar>,
}

impl TriangularAlgebra {
    pub fn new(n: Bimodule) -> Result<TriangularAlgebra> {
        n.validate()?;
        let r = n.right_algebra().clone();
        let s = n.left_algebra().clone();
        let field = r.field();
        let (dr, dn, ds) = (r.dim(), n.dim(), s.dim());
        let dim = dr + dn + ds;
        let mut products = vec![Vec::new(); dim * dim];
        let sparse = |v: Vec<Scalar>, offset: usize| -> Vec<(usize, Scalar)> {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + offset, c))
                .collect()
        };
        for i in 0..dr {
            for j in 0..dr {
                products[i * dim + j] = sparse(r.basis_product(i, j), 0);
            }
        }
        for a in 0..dn {
            for j in 0..dr {
                products[(dr + a) * dim + j] = sparse(n.right_action(j).row(a).to_vec(), dr);
            }
        }
        for i in 0..ds {
            for a in 0..dn {
                products[(dr + dn + i) * dim + dr + a] = sparse(n.left_action(i).row(a).to_vec(), dr);
            }
            for j in 0..ds {
                products[(dr + dn + i) * dim + dr + dn + j] = sparse(s.basis_product(i, j), dr + dn);
            }
        }
        let mut unit = zero_vec(field, dim);
        unit[..dr].clone_from_slice(r.unit());
        unit[dr + dn..].clone_from_slice(s.unit());
        let mut corner_e = zero_vec(field, dim);
        corner_e[dr + dn..].clone_from_slice(s.unit());
        let total = Algebra::from_sparse_unchecked(field, dim, products, unit);
        total.validate()?;
        let t = TriangularAlgebra {
            r,
            s,
            n,
            total: Arc::new(total),
            corner_e,
        };
        debug_assert!(t.peirce_blocks().0.is_zero());
        Ok(t)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.r.dim(), self.n.dim(), self.s.dim())
    }

    /// `1 - e = diag(1_R, 0)`.
    pub fn complement_e(&self) -> Vec<Scalar> {
        sub_vec(self.total.unit(), &self.corner_e)
    }

    /// `((1-e)Λe, eΛ(1-e))`.
    pub fn peirce_blocks(&self) -> (Subspace, Subspace) {
        peirce_off_diagonal(&self.total, &self.corner_e)
    }

    /// The module `X ⊕ Y` of a triple, with `f : Y ⊗_S N → X` given on the basis of `tensor`.
    pub fn triple_to_module(&self, x: &RightModule, y: &RightModule, tensor: &TensorProduct, f: &Matrix) -> Result<RightModule> {
        if **x.algebra() != *self.r || **y.algebra() != *self.s || **tensor.module.algebra() != *self.r {
            return Err(Error::AlgebraMismatch);
        }
        let (dx, dy) = (x.dim(), y.dim());
        if f.rows() != tensor.module.dim() || f.cols() != dx || tensor.proj.rows() != dy * self.n.dim() {
            return Err(Error::DimensionMismatch("triple map has the wrong shape".into()));
        }
        for i in 0..self.r.dim() {
            if tensor.module.action(i).mul(f) != f.mul(x.action(i)) {
                return Err(Error::NotModuleMap(format!("f does not commute with b{i} of R")));
            }
        }
        let field = self.total.field();
        let (dr, dn, ds) = self.dims();
        let pf = tensor.proj.mul(f);
        let mut action = Vec::with_capacity(dr + dn + ds);
        for i in 0..dr {
            let mut m = Matrix::zeros(field, dx + dy, dx + dy);
            m.set_block(0, 0, x.action(i));
            action.push(m);
        }
        for a in 0..dn {
            let mut m = Matrix::zeros(field, dx + dy, dx + dy);
            for j in 0..dy {
                for (c, v) in pf.row(j * dn + a).iter().enumerate() {
                    m.set(dx + j, c, v.clone());
                }
            }
            action.push(m);
        }
        for i in 0..ds {
            let mut m = Matrix::zeros(field, dx + dy, dx + dy);
            m.set_block(dx, dx, y.action(i));
            action.push(m);
        }
        RightModule::new(self.total.clone(), action)
    }
}

/// `((1-e)Ae, eA(1-e))` for an idempotent `e`.
fn peirce_off_diagonal(a: &Algebra, e: &[Scalar]) -> (Subspace, Subspace) {
    let f = sub_vec(a.unit(), e);
    let block = |left: &[Scalar], right: &[Scalar]| {
        Subspace::from_vectors(
            a.field(),
            a.dim(),
            (0..a.dim()).map(|i| a.mul(&a.basis_mul(i, right), right)).map(|v| a.mul(left, &v)),
        )
    };
    (block(&f, e), block(e, &f))
}

/// `Y ⊗_S N` as a right `R`-module with the projection from `Y ⊗_k N` (index `j·dim N + a`).
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: RightModule,
    pub proj: Matrix,
}

pub fn balanced_tensor(y: &RightModule, n: &Bimodule) -> Result<TensorProduct> {
    if **y.algebra() != **n.left_algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let field = y.algebra().field();
    let (dy, dn) = (y.dim(), n.dim());
    let r = n.right_algebra();
    let action = (0..r.dim())
        .map(|i| {
            let mut m = Matrix::zeros(field, dy * dn, dy * dn);
            for j in 0..dy {
                m.set_block(j * dn, j * dn, n.right_action(i));
            }
            m
        })
        .collect();
    let full = RightModule::new_unchecked(r.clone(), dy * dn, action);
    let mut balancing = Vec::new();
    for b in 0..y.algebra().dim() {
        let (ry, ln) = (y.action(b), n.left_action(b));
        for j in 0..dy {
            for a in 0..dn {
                let mut v = zero_vec(field, dy * dn);
                for (u, c) in ry.row(j).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[u * dn + a] = &v[u * dn + a] + c;
                }
                for (w, c) in ln.row(a).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[j * dn + w] = &v[j * dn + w] - c;
                }
                balancing.push(v);
            }
        }
    }
    let w = Subspace::from_vectors(field, dy * dn, balancing);
    let (module, proj) = full.quotient(&w)?;
    Ok(TensorProduct { module, proj })
}

/// The blocks of `ΛG` along `e' = e·1_G`, reassembled as a triangular algebra.
#[derive(Clone, Debug)]
pub struct PeirceData {
    pub skew: SkewAlgebra,
    /// `[[RG', 0], [NG, SG']]`.
    pub triangular: TriangularAlgebra,
    /// Row `x` gives the coordinates in `triangular.total` of basis vector `x` of `ΛG`.
    pub iso: Matrix,
}

/// Verifies that `ΛG` is itself triangular along `e' = e·1_G`, with blocks `RG`, `NG` and `SG`.
pub fn peirce_triangular_check(t: &TriangularAlgebra, action: &GroupAction, instance: &str) -> Result<(CheckReport, PeirceData)> {
    if **action.algebra() != *t.total {
        return Err(Error::AlgebraMismatch);
    }
    for g in 0..action.order() {
        if action.apply(g, &t.corner_e) != t.corner_e {
            return Err(Error::ActionDoesNotFixE { element: g });
        }
    }
    let skew = SkewAlgebra::new(action)?;
    let big = &skew.total;
    let field = big.field();
    let k = action.order();
    let (dr, dn, ds) = t.dims();
    let e = skew.lift_idempotent(&t.corner_e)?;
    let f = sub_vec(big.unit(), &e);
    let (lower, upper) = peirce_off_diagonal(big, &e);

    let mut report = CheckReport::new("peirce", instance);
    report
        .hypothesis("e fixed by G", true)
        .measure("|G|", k)
        .measure("dim R", dr)
        .measure("dim N", dn)
        .measure("dim S", ds)
        .measure("dim ΛG", big.dim())
        .measure("dim (1-e')ΛGe'", lower.dim())
        .measure("dim NG", upper.dim());
    report.expect_eq("(1-e')ΛGe'", lower.dim(), 0);
    report.expect_eq("dim NG", upper.dim(), k * dn);

    let rg = corner_algebra(big, &f)?;
    let sg = corner_algebra(big, &e)?;
    report.expect_eq("dim RG'", rg.algebra.dim(), k * dr);
    report.expect_eq("dim SG'", sg.algebra.dim(), k * ds);
    let (on_s, _) = skew.corner_compat_check(&t.corner_e, instance)?;
    let (on_r, _) = skew.corner_compat_check(&t.complement_e(), instance)?;
    report
        .measure("SG' ≅ (eΛe)G", on_s.passed())
        .measure("RG' ≅ ((1-e)Λ(1-e))G", on_r.passed());
    for w in on_s.witnesses.iter().chain(&on_r.witnesses) {
        report.fail(format!("corner compatibility: {w}"));
    }

    let rg_alg = Arc::new(rg.algebra.clone());
    let sg_alg = Arc::new(sg.algebra.clone());
    let left = (0..sg.algebra.dim())
        .map(|c| restrict_map(&upper, |v| big.mul(sg.embed.row(c), v)))
        .collect();
    let right = (0..rg.algebra.dim())
        .map(|c| restrict_map(&upper, |v| big.mul(v, rg.embed.row(c))))
        .collect();
    let ng = Bimodule::new(sg_alg, rg_alg, left, right)?;
    let rebuilt = TriangularAlgebra::new(ng)?;

    let mut rows = Vec::with_capacity(big.dim());
    for x in 0..big.dim() {
        let b = big.basis(x);
        let mut row = rg.coordinates(&big.mul(&big.mul(&f, &b), &f)).expect("lies in RG'");
        row.extend(upper.coordinates(&big.mul(&big.mul(&e, &b), &f)).expect("lies in NG"));
        row.extend(sg.coordinates(&big.mul(&big.mul(&e, &b), &e)).expect("lies in SG'"));
        rows.push(row);
    }
    let iso = Matrix::from_rows(field, rebuilt.total.dim(), rows);
    report.expect_eq("rank of ΛG → Λ'", iso.rank(), big.dim());
    report.expect_eq("dim Λ'", rebuilt.total.dim(), big.dim());
    if iso.rows() == iso.cols() {
        'pairs: for x in 0..big.dim() {
            for y in 0..big.dim() {
                let lhs = iso.apply_row(&big.basis_product(x, y));
                let rhs = rebuilt.total.mul(iso.row(x), iso.row(y));
                if lhs != rhs {
                    report.fail(format!("ΛG → Λ' not multiplicative on ({x}, {y})"));
                    break 'pairs;
                }
            }
        }
        report.expect_eq("image of the unit", iso.apply_row(big.unit()), rebuilt.total.unit().to_vec());
    }

    // the stated N' = Hom(ΛG, ΛG/SG), measured beside the Peirce block
    let regular = RightModule::regular(big);
    let sg_span = Subspace::from_vectors(field, big.dim(), sg.embed.row_vecs());
    let generated = regular.submodule_generated(sg_span.basis());
    let (quotient, _) = regular.quotient(&generated)?;
    report
        .measure("N' audit: dim ΛG - dim SG'", big.dim() - sg.algebra.dim())
        .measure("N' audit: dim Hom(ΛG, ΛG/SG'·ΛG)", hom_space(&regular, &quotient)?.len())
        .measure("N' audit: dim e'ΛG(1-e')", upper.dim())
        .measure("N' audit: |G|(dim R + dim N)", k * (dr + dn));

    Ok((
        report,
        PeirceData {
            skew,
            triangular: rebuilt,
            iso,
        },
    ))
}

/// Exercises both implications of the triangular global-dimension corollary on `Λ' ≅ ΛG`.
pub fn gldim_corollary_check(t: &TriangularAlgebra, action: &GroupAction, bound: usize, seed: u64, instance: &str) -> Result<CheckReport> {
    action.require_invertible_order()?;
    let (peirce, data) = peirce_triangular_check(t, action, instance)?;
    let gl_r = global_dimension_upper(&t.r, bound)?;
    let gl_s = global_dimension_upper(&t.s, bound)?;
    let pd_n = projective_dimension(&t.n.as_right_module(), bound)?;
    let mut report = CheckReport::new("gldim-corollary", instance);
    report
        .hypothesis("e fixed by G", true)
        .hypothesis("|G| invertible", true)
        .hypothesis("ΛG ≅ Λ'", peirce.passed())
        .measure_pd("gl.dim R", gl_r)
        .measure_pd("gl.dim S", gl_s)
        .measure_pd("pd_R N", pd_n);
    if !peirce.passed() {
        report.fail("Peirce reconstruction failed");
    }
    let lam = &data.triangular;
    let mut inconclusive = None;
    let mut exercise = |report: &mut CheckReport, key: &str, holds: bool, e: &[Scalar]| -> Result<()> {
        if !holds {
            report.measure(key, "vacuous");
            return Ok(());
        }
        let r = singular_equivalence_criterion(&RecollementData::new(&lam.total, e)?, bound, seed, instance)?;
        report.measure(key, r.verdict.to_string());
        match r.verdict {
            Verdict::Pass => {}
            Verdict::Fail => {
                report.fail(format!("{key}: the hypothesis holds but the criterion fails"));
            }
            Verdict::Inconclusive(b) => inconclusive = Some(b),
        }
        Ok(())
    };
    exercise(&mut report, "(i) criterion for e'", gl_r.is_finite(), &lam.corner_e)?;
    exercise(
        &mut report,
        "(ii) criterion for 1-e'",
        gl_s.is_finite() && pd_n.is_finite(),
        &lam.complement_e(),
    )?;
    if let (Verdict::Pass, Some(b)) = (report.verdict, inconclusive) {
        report.verdict = Verdict::Inconclusive(b);
    }
    Ok(report)
}

/// `pd` of `N` as a right `R`-module.
pub fn pd_of_bimodule(n: &Bimodule, bound: usize) -> Result<PdResult> {
    projective_dimension(&n.as_right_module(), bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rationals;

    pub(crate) fn k_k_k() -> TriangularAlgebra {
        let k = Arc::new(Algebra::ground(Q));
        let n = Bimodule::regular(&k);
        TriangularAlgebra::new(n).unwrap()
    }

    fn dual_k() -> TriangularAlgebra {
        let r = Arc::new(Algebra::truncated_polynomial(Q, 2));
        let s = Arc::new(Algebra::ground(Q));
        let n = Bimodule::new(
            s,
            r,
            vec![Matrix::identity(Q, 1)],
            vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 1, 1)],
        )
        .unwrap();
        TriangularAlgebra::new(n).unwrap()
    }

    #[test]
    fn small_triangular_algebras() {
        let t = k_k_k();
        assert_eq!(t.total.dim(), 3);
        assert_eq!(global_dimension_upper(&t.total, 5).unwrap(), PdResult::Finite(1));
        let (lower, upper) = t.peirce_blocks();
        assert!(lower.is_zero());
        assert_eq!(upper.dim(), 1);
        assert_eq!(dual_k().total.dim(), 4);

        let k = Arc::new(Algebra::ground(Q));
        let zero = Bimodule::new(k.clone(), k.clone(), vec![Matrix::zeros(Q, 0, 0)], vec![Matrix::zeros(Q, 0, 0)]).unwrap();
        let prod = TriangularAlgebra::new(zero).unwrap();
        assert_eq!(*prod.total, Algebra::direct_product(&k, &k));
    }

    #[test]
    fn triples() {
        let t = k_k_k();
        let k = RightModule::regular(&t.s);
        let tensor = balanced_tensor(&k, &t.n).unwrap();
        assert_eq!(tensor.module.dim(), 1);
        let x = RightModule::regular(&t.r);
        let m = t.triple_to_module(&x, &k, &tensor, &Matrix::identity(Q, 1)).unwrap();
        let e_lambda = RightModule::regular(&t.total)
            .submodule(&RightModule::regular(&t.total).submodule_generated(std::slice::from_ref(&t.corner_e)))
            .unwrap();
        assert!(crate::module::find_isomorphism(&m, &e_lambda, 0, 8).unwrap().is_found());
        let split = t.triple_to_module(&x, &k, &tensor, &Matrix::zeros(Q, 1, 1)).unwrap();
        assert!(!crate::module::find_isomorphism(&split, &e_lambda, 0, 8).unwrap().is_found());
    }

    #[test]
    fn peirce_with_sign_action() {
        let t = dual_k();
        let sigma = Matrix::from_i64(Q, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let g = GroupAction::new(t.total.clone(), vec![sigma], vec!["s".into()]).unwrap();
        let (report, data) = peirce_triangular_check(&t, &g, "t").unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(data.triangular.n.dim(), 2);
        let c = gldim_corollary_check(&t, &g, 8, 0, "t").unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.measurements["(i) criterion for e'"], "vacuous");
    }

    #[test]
    fn peirce_round_trip_for_trivial_group() {
        let t = k_k_k();
        let (report, data) = peirce_triangular_check(&t, &GroupAction::trivial(t.total.clone(), 1), "t").unwrap();
        assert!(report.passed());
        assert_eq!(*data.triangular.total, *t.total);
        assert!(data.iso.is_identity());
    }
}
