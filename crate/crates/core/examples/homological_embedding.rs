//! `mod Λ/ΛeΛ → mod Λ` compared with its equivariant version, on `kA3/(ab)` with `e` the middle vertex.

use std::sync::Arc;

use skewrec::algebra::{path_algebra, QuiverPresentation, Relation};
use skewrec::group::GroupAction;
use skewrec::recollement::homological_embedding_check;
use skewrec::{Field, Matrix};

fn main() {
    let q = Field::Rationals;
    let path = path_algebra(
        q,
        &QuiverPresentation {
            vertices: 3,
            arrows: vec![(0, 1), (1, 2)],
            relations: vec![Relation {
                terms: vec![(q.one(), vec![0, 1])],
            }],
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
    let e = path.vertex(1);
    let report = homological_embedding_check(&g, &e, 4, None, "A3/(ab)").unwrap();
    println!("both levels agree: {}", report.verdict);
    for key in [
        "base verdict",
        "base first failing degree",
        "skew verdict",
        "skew first failing degree",
    ] {
        println!("  {key} = {}", report.measurements[key]);
    }
    for w in &report.witnesses {
        println!("  {w}");
    }
}
