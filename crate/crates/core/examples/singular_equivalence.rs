//! The singular-equivalence criterion for `Λ` and `ΛG`, on a passing and a failing idempotent.

use std::sync::Arc;

use skewrec::group::GroupAction;
use skewrec::recollement::{equivariant_cross_check, singular_equivalence_criterion, RecollementData};
use skewrec::{Algebra, Field, Matrix};

fn main() {
    let q = Field::Rationals;
    let k = Algebra::ground(q);

    // k[x]/(x²) × k with e the unit of the second factor
    let product = Arc::new(Algebra::direct_product(&Algebra::truncated_polynomial(q, 2), &k));
    let e = vec![q.zero(), q.zero(), q.one()];
    let data = RecollementData::new(&product, &e).unwrap();
    let report = singular_equivalence_criterion(&data, 10, 0, "dual × k").unwrap();
    println!("criterion on dual × k: {}", report.verdict);
    for w in &report.witnesses {
        println!("  {w}");
    }
    let sigma = Matrix::from_i64(q, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let g = GroupAction::new(product, vec![sigma], vec!["s".into()]).unwrap();
    let cross = equivariant_cross_check(&g, &e, 10, 0, "dual × k").unwrap();
    println!(
        "cross-check: {} (base {}, skew {})",
        cross.verdict, cross.measurements["base verdict"], cross.measurements["skew verdict"]
    );

    // upper triangular 2×2 matrices with e = e22
    let upper = Arc::new(Algebra::from_entries(q, 3, upper_entries(q), vec![q.one(), q.zero(), q.one()]).unwrap());
    let e = vec![q.zero(), q.zero(), q.one()];
    let report = singular_equivalence_criterion(&RecollementData::new(&upper, &e).unwrap(), 10, 0, "upper").unwrap();
    println!("criterion on upper triangular: {}", report.verdict);
}

/// Basis `e11, e12, e22`.
fn upper_entries(q: Field) -> Vec<(usize, usize, usize, skewrec::Scalar)> {
    [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)]
        .into_iter()
        .map(|(i, j, k)| (i, j, k, q.one()))
        .collect()
}
