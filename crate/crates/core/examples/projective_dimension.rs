//! Projective dimensions by minimal syzygies, with periodicity certificates for infinite ones.

use std::sync::Arc;

use skewrec::algebra::{path_algebra, QuiverPresentation, Relation};
use skewrec::module::{projective_dimension_report, Periodicity};
use skewrec::{Algebra, Field, RightModule};

fn show(label: &str, m: &RightModule) {
    let r = projective_dimension_report(m, 10, Some(Periodicity::default())).unwrap();
    let period = r.period.map(|(i, j)| format!(", Ω^{j} ≅ Ω^{i}")).unwrap_or_default();
    println!("{label:<28} {} syzygy dims {:?}{period}", r.result, r.syzygy_dims);
}

fn main() {
    let q = Field::Rationals;

    let dual = Arc::new(Algebra::truncated_polynomial(q, 2));
    show("k over k[x]/(x²)", &RightModule::regular(&dual).top().unwrap());

    let a3 = QuiverPresentation {
        vertices: 3,
        arrows: vec![(0, 1), (1, 2)],
        relations: vec![],
        bound: 3,
    };
    let free = Arc::new(path_algebra(q, &a3).unwrap().algebra);
    show("top of kA3", &RightModule::regular(&free).top().unwrap());

    let rel = QuiverPresentation {
        relations: vec![Relation {
            terms: vec![(q.one(), vec![0, 1])],
        }],
        ..a3
    };
    let bound = Arc::new(path_algebra(q, &rel).unwrap().algebra);
    show("top of kA3/(ab)", &RightModule::regular(&bound).top().unwrap());
}
