//! `(eΛe)G ≅ e'(ΛG)e'` for the path algebra of `0 → 1 → 2` with the arrows negated.

use std::sync::Arc;

use skewrec::algebra::{path_algebra, QuiverPresentation};
use skewrec::group::GroupAction;
use skewrec::skew::SkewAlgebra;
use skewrec::{Field, Matrix};

fn main() {
    let q = Field::Rationals;
    let path = path_algebra(
        q,
        &QuiverPresentation {
            vertices: 3,
            arrows: vec![(0, 1), (1, 2)],
            relations: vec![],
            bound: 3,
        },
    )
    .unwrap();
    let a = Arc::new(path.algebra.clone());
    let n = a.dim();
    let sigma = Matrix::from_fn(q, n, n, |r, c| {
        if r != c {
            q.zero()
        } else if path.labels[r].len() == 1 {
            q.from_i64(-1)
        } else {
            q.one()
        }
    });
    let g = GroupAction::new(a, vec![sigma], vec!["s".into()]).unwrap();
    let skew = SkewAlgebra::new(&g).unwrap();

    for vs in [vec![0], vec![1], vec![0, 2], vec![0, 1, 2]] {
        let e = path.vertex_sum(&vs);
        let (report, compat) = skew.corner_compat_check(&e, "A3").unwrap();
        println!(
            "e = {vs:?}: {} (dim (eΛe)G = {}, dim e'ΛGe' = {})",
            report.verdict,
            compat.corner_skew.total.dim(),
            compat.big_corner.algebra.dim()
        );
    }
}
