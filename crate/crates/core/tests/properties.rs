use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use skewrec::algebra::{corner_algebra, ideal_generated, path_algebra, quotient_algebra, two_sided_ideal, PathAlgebra, QuiverPresentation};
use skewrec::group::GroupAction;
use skewrec::linalg::{is_zero_vec, Field, Matrix, Rational, Scalar, Subspace};
use skewrec::module::{ext_dim, ext_dims, hom_space, projective_dimension, Bimodule};
use skewrec::recollement::{global_dimension_upper, singular_equivalence_criterion, RecollementData};
use skewrec::report::Verdict;
use skewrec::skew::SkewAlgebra;
use skewrec::triangular::{peirce_triangular_check, TriangularAlgebra};
use skewrec::{Algebra, PdResult, RightModule};

const Q: Field = Field::Rationals;

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(small(), cols), rows)
}

fn to_matrix(field: Field, m: &[Vec<i64>]) -> Matrix {
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(field, &rows)
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(101)), Just(Field::Prime(7))]
}

/// Fields where the trace-form radical applies to every algebra generated here.
fn large_fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(101))]
}

fn linear_quiver(field: Field, vertices: usize, bound: usize) -> PathAlgebra {
    let q = QuiverPresentation {
        vertices,
        arrows: (0..vertices - 1).map(|v| (v, v + 1)).collect(),
        relations: vec![],
        bound,
    };
    path_algebra(field, &q).unwrap()
}

/// A fixed menu of algebras, indexed for generation.
fn algebra(field: Field, which: usize) -> Arc<Algebra> {
    let a = match which % 6 {
        0 => Algebra::ground(field),
        1 => Algebra::truncated_polynomial(field, 2),
        2 => Algebra::truncated_polynomial(field, 3),
        3 => linear_quiver(field, 3, 3).algebra,
        4 => Algebra::direct_product(&Algebra::truncated_polynomial(field, 2), &Algebra::ground(field)),
        _ => Algebra::matrix_algebra(field, 2),
    };
    Arc::new(a)
}

/// A representation of `0 → 1 → 2` with the given dimensions and arrow matrices, as a module.
fn a3_representation(path: &PathAlgebra, dims: [usize; 3], maps: [&Matrix; 2]) -> RightModule {
    let field = path.algebra.field();
    let total: usize = dims.iter().sum();
    let offset = [0, dims[0], dims[0] + dims[1]];
    let actions = path
        .labels
        .iter()
        .map(|l| {
            let mut m = Matrix::zeros(field, total, total);
            let mut block = Matrix::identity(field, dims[l.source]);
            for &a in &l.arrows {
                block = block.mul(maps[a]);
            }
            m.set_block(offset[l.source], offset[l.target], &block);
            m
        })
        .collect();
    RightModule::new(Arc::new(path.algebra.clone()), actions).unwrap()
}

fn a3_module() -> impl Strategy<Value = ([usize; 3], Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (0usize..=2, 0usize..=2, 0usize..=2)
        .prop_filter("nonzero", |(a, b, c)| a + b + c > 0)
        .prop_flat_map(|(a, b, c)| (Just([a, b, c]), matrix(a, b), matrix(b, c)))
}

fn build_a3(path: &PathAlgebra, rep: &([usize; 3], Vec<Vec<i64>>, Vec<Vec<i64>>)) -> RightModule {
    let field = path.algebra.field();
    let (d, f, g) = rep;
    let f = if d[0] * d[1] == 0 {
        Matrix::zeros(field, d[0], d[1])
    } else {
        to_matrix(field, f)
    };
    let g = if d[1] * d[2] == 0 {
        Matrix::zeros(field, d[1], d[2])
    } else {
        to_matrix(field, g)
    };
    a3_representation(path, *d, [&f, &g])
}

/// A module over `k[x]/(x^n)` given by a strictly upper triangular `x` of size at most `n`.
fn truncated_module(a: &Arc<Algebra>, n: usize, upper: &[Vec<i64>]) -> RightModule {
    let field = a.field();
    let d = upper.len();
    let x = Matrix::from_fn(field, d, d, |r, c| if c > r { field.from_i64(upper[r][c]) } else { field.zero() });
    let mut actions = vec![Matrix::identity(field, d)];
    for _ in 1..n {
        let next = actions.last().unwrap().mul(&x);
        actions.push(next);
    }
    RightModule::new(a.clone(), actions).unwrap()
}

fn sign_action(a: &Arc<Algebra>) -> GroupAction {
    let field = a.field();
    let n = a.dim();
    let m = Matrix::from_fn(field, n, n, |r, c| {
        if r != c {
            field.zero()
        } else if r % 2 == 0 {
            field.one()
        } else {
            field.from_i64(-1)
        }
    });
    GroupAction::new(a.clone(), vec![m], vec!["s".into()]).unwrap()
}

fn pd_by_free_syzygies(m: &RightModule, bound: usize) -> PdResult {
    let mut cur = m.clone();
    for n in 0..=bound {
        if cur.is_projective().unwrap() {
            return PdResult::Finite(n);
        }
        cur = cur.free_syzygy();
    }
    PdResult::ExceedsBound(bound)
}

fn euler(path: &PathAlgebra, m: &RightModule, n: &RightModule) -> i64 {
    let (x, y) = (path.dimension_vector(m), path.dimension_vector(n));
    let same: i64 = (0..3).map(|v| (x[v] * y[v]) as i64).sum();
    let arrows: i64 = path.quiver.arrows.iter().map(|&(s, t)| (x[s] * y[t]) as i64).sum();
    same - arrows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solve_is_exact(field in fields(), a in matrix(4, 3), x in prop::collection::vec(small(), 3)) {
        let a = to_matrix(field, &a);
        let x: Vec<Scalar> = x.into_iter().map(|v| field.from_i64(v)).collect();
        let b = a.transpose().apply_row(&x);
        let y = a.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(a.transpose().apply_row(&y), b);
    }

    #[test]
    fn rank_nullity(field in fields(), a in matrix(3, 5)) {
        let a = to_matrix(field, &a);
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.len(), a.cols());
        for v in &null {
            prop_assert!(is_zero_vec(&a.transpose().apply_row(v)));
        }
        prop_assert_eq!(a.rank() + a.left_nullspace().len(), a.rows());
    }

    #[test]
    fn rationals_do_not_overflow(p in (i64::MAX / 4)..i64::MAX, q in (i64::MAX / 4)..i64::MAX, r in 1i64..i64::MAX) {
        let a = Q.from_ratio(p, r).unwrap();
        let b = Q.from_ratio(q, 3).unwrap();
        let prod = &a * &b;
        let Scalar::Q(ref pr) = prod else { unreachable!() };
        let expect = Rational::from_big(num_rational::BigRational::new(BigInt::from(p) * BigInt::from(q), BigInt::from(r) * BigInt::from(3)));
        prop_assert_eq!(pr, &expect);
        prop_assert_eq!(&prod * &b.inv().unwrap(), a);
    }

    #[test]
    fn subspace_dimension_formula(field in fields(), a in matrix(3, 5), b in matrix(3, 5)) {
        let s = Subspace::from_vectors(field, 5, to_matrix(field, &a).row_vecs());
        let t = Subspace::from_vectors(field, 5, to_matrix(field, &b).row_vecs());
        prop_assert_eq!(s.sum(&t).dim() + s.intersection(&t).dim(), s.dim() + t.dim());
    }

    #[test]
    fn corner_at_one_is_everything(field in fields(), which in 0usize..6) {
        let a = algebra(field, which);
        let c = corner_algebra(&a, a.unit()).unwrap();
        prop_assert_eq!(c.algebra.dim(), a.dim());
        prop_assert_eq!(c.embed.rank(), a.dim());
    }

    #[test]
    fn ideal_closure_is_stable(field in fields(), vs in prop::collection::vec(any::<bool>(), 3)) {
        let path = linear_quiver(field, 3, 3);
        let chosen: Vec<usize> = (0..3).filter(|&v| vs[v]).collect();
        let e = path.vertex_sum(&chosen);
        let i = two_sided_ideal(&path.algebra, &e).unwrap();
        let again = ideal_generated(&path.algebra, i.basis());
        prop_assert_eq!(again, i);
    }

    #[test]
    fn radical_is_nilpotent_with_semisimple_quotient(field in fields(), which in 0usize..6) {
        let a = algebra(field, which);
        let rad = a.radical().unwrap().clone();
        let mut power = rad.clone();
        for _ in 1..a.dim().max(1) {
            power = a.product_space(&power, &rad);
        }
        prop_assert!(power.is_zero());
        let top = quotient_algebra(&a, &rad).unwrap();
        prop_assert!(top.algebra.radical().unwrap().is_zero());
    }

    #[test]
    fn path_algebra_vertices_and_radical(field in large_fields(), vertices in 1usize..5, bound in 2usize..5) {
        let path = linear_quiver(field, vertices, bound);
        let a = &path.algebra;
        let long = path.labels.iter().filter(|l| !l.arrows.is_empty()).count();
        prop_assert_eq!(a.radical().unwrap().dim(), long);
        let mut sum = a.zero_element();
        for v in 0..vertices {
            let ev = path.vertex(v);
            prop_assert!(a.is_idempotent(&ev));
            for w in 0..vertices {
                if w != v {
                    prop_assert!(is_zero_vec(&a.mul(&ev, &path.vertex(w))));
                }
            }
            sum = sum.iter().zip(&ev).map(|(x, y)| x + y).collect();
        }
        prop_assert_eq!(sum.as_slice(), a.unit());
    }

    #[test]
    fn global_dimension_is_monotone_in_bound(field in fields(), which in 0usize..6, b in 0usize..4, extra in 1usize..4) {
        let a = algebra(field, which);
        if let PdResult::Finite(n) = global_dimension_upper(&a, b).unwrap() {
            prop_assert_eq!(global_dimension_upper(&a, b + extra).unwrap(), PdResult::Finite(n));
        }
    }

    #[test]
    fn euler_form_on_hereditary_a3(field in fields(), m in a3_module(), n in a3_module()) {
        let path = linear_quiver(field, 3, 3);
        let (m, n) = (build_a3(&path, &m), build_a3(&path, &n));
        let hom = hom_space(&m, &n).unwrap().len() as i64;
        let ext1 = ext_dim(&m, &n, 1).unwrap() as i64;
        prop_assert_eq!(hom - ext1, euler(&path, &m, &n));
        prop_assert_eq!(ext_dim(&m, &n, 2).unwrap(), 0);
        prop_assert!(projective_dimension(&m, 3).unwrap() <= PdResult::Finite(1));
    }

    #[test]
    fn ext_prefixes_agree(field in fields(), x in prop::collection::vec(prop::collection::vec(small(), 3), 3), y in prop::collection::vec(prop::collection::vec(small(), 3), 2)) {
        let a = Arc::new(Algebra::truncated_polynomial(field, 3));
        let (m, n) = (truncated_module(&a, 3, &x), truncated_module(&a, 3, &y));
        let short = ext_dims(&m, &n, 2).unwrap();
        let long = ext_dims(&m, &n, 4).unwrap();
        prop_assert_eq!(&long[..3], &short[..]);
    }

    #[test]
    fn dimension_shift(field in fields(), x in prop::collection::vec(prop::collection::vec(small(), 3), 3), y in prop::collection::vec(prop::collection::vec(small(), 3), 2), n in 2usize..4) {
        let a = Arc::new(Algebra::truncated_polynomial(field, 3));
        let (m, t) = (truncated_module(&a, 3, &x), truncated_module(&a, 3, &y));
        let omega = m.syzygy().unwrap();
        prop_assert_eq!(ext_dim(&m, &t, n).unwrap(), ext_dim(&omega, &t, n - 1).unwrap());
    }

    #[test]
    fn pd_does_not_depend_on_the_cover(field in fields(), rep in a3_module(), x in prop::collection::vec(prop::collection::vec(small(), 2), 2)) {
        let path = linear_quiver(field, 3, 3);
        let m = build_a3(&path, &rep);
        prop_assert_eq!(projective_dimension(&m, 4).unwrap(), pd_by_free_syzygies(&m, 4));
        let a = Arc::new(Algebra::truncated_polynomial(field, 2));
        let t = truncated_module(&a, 2, &x);
        prop_assert_eq!(projective_dimension(&t, 4).unwrap(), pd_by_free_syzygies(&t, 4));
    }

    #[test]
    fn projective_iff_pd_zero(field in fields(), rep in a3_module()) {
        let path = linear_quiver(field, 3, 3);
        let m = build_a3(&path, &rep);
        prop_assert_eq!(m.is_projective().unwrap(), projective_dimension(&m, 0).unwrap() == PdResult::Finite(0));
    }

    #[test]
    fn group_table_and_fixed_subalgebra(field in fields(), which in 1usize..3, i in 0usize..8, j in 0usize..8) {
        let a = algebra(field, which);
        let g = sign_action(&a);
        for x in 0..g.order() {
            for y in 0..g.order() {
                prop_assert_eq!(g.matrix(x).mul(g.matrix(y)), g.matrix(g.mul(x, y)).clone());
            }
        }
        let fixed = g.fixed_subalgebra();
        let (u, v) = (&fixed.basis()[i % fixed.dim()], &fixed.basis()[j % fixed.dim()]);
        prop_assert!(fixed.contains(&a.mul(u, v)));
    }

    #[test]
    fn induction_preserves_pd(field in fields(), x in prop::collection::vec(prop::collection::vec(small(), 3), 1..=3)) {
        let a = Arc::new(Algebra::truncated_polynomial(field, 3));
        let g = sign_action(&a);
        let skew = SkewAlgebra::new(&g).unwrap();
        prop_assert_eq!(skew.total.dim(), 2 * a.dim());
        let m = truncated_module(&a, 3, &x);
        let ind = skew.induce(&m);
        prop_assert_eq!(ind.dim(), 2 * m.dim());
        prop_assert_eq!(projective_dimension(&ind, 4).unwrap(), projective_dimension(&m, 4).unwrap());
        prop_assert_eq!(skew.restrict(&ind).dim(), 2 * m.dim());
    }

    #[test]
    fn raising_the_bound_never_flips_a_verdict(field in fields(), vs in prop::collection::vec(any::<bool>(), 3), b in 1usize..4) {
        let path = linear_quiver(field, 3, 2);
        let a = Arc::new(path.algebra.clone());
        let chosen: Vec<usize> = (0..3).filter(|&v| vs[v]).collect();
        let data = RecollementData::new(&a, &path.vertex_sum(&chosen)).unwrap();
        let low = singular_equivalence_criterion(&data, b, 0, "p").unwrap().verdict;
        let high = singular_equivalence_criterion(&data, b + 4, 0, "p").unwrap().verdict;
        if !matches!(low, Verdict::Inconclusive(_)) {
            prop_assert_eq!(low, high);
        }
    }

    #[test]
    fn degenerate_idempotents_pass(field in fields(), which in 0usize..6) {
        let a = algebra(field, which);
        for e in [a.unit().to_vec(), a.zero_element()] {
            let data = RecollementData::new(&a, &e).unwrap();
            let r = singular_equivalence_criterion(&data, 6, 0, "p").unwrap();
            if e == a.unit() || a.radical().unwrap().is_zero() {
                prop_assert_eq!(r.verdict, Verdict::Pass);
            }
        }
    }

    #[test]
    fn peirce_round_trip_for_trivial_group(field in fields(), n in 0usize..4) {
        let k = Arc::new(Algebra::ground(field));
        let id = Matrix::identity(field, n);
        let t = TriangularAlgebra::new(Bimodule::new(k.clone(), k, vec![id.clone()], vec![id]).unwrap()).unwrap();
        prop_assert_eq!(t.total.dim(), n + 2);
        let (r, data) = peirce_triangular_check(&t, &GroupAction::trivial(t.total.clone(), 1), "p").unwrap();
        prop_assert!(r.passed());
        prop_assert!(data.iso.is_identity());
    }

    #[test]
    fn skew_of_triangular_stays_triangular(field in fields(), flip in any::<bool>()) {
        let r = Arc::new(Algebra::truncated_polynomial(field, 2));
        let k = Arc::new(Algebra::ground(field));
        let one = Matrix::identity(field, 1);
        let n = Bimodule::new(k, r.clone(), vec![one.clone()], vec![one, Matrix::zeros(field, 1, 1)]).unwrap();
        let t = TriangularAlgebra::new(n).unwrap();
        let sign = if flip { -1 } else { 1 };
        let sigma = Matrix::from_i64(field, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, sign, 0], &[0, 0, 0, 1]]);
        let g = GroupAction::new(t.total.clone(), vec![sigma], vec!["s".into()]).unwrap();
        let (report, _) = peirce_triangular_check(&t, &g, "p").unwrap();
        prop_assert!(report.passed(), "{:?}", report.witnesses);
        prop_assert_eq!(&report.measurements["dim (1-e')ΛGe'"], &serde_json::json!(0));
        prop_assert_eq!(&report.measurements["dim NG"], &serde_json::json!(2));
    }
}
