//! The skew group algebra of the dual numbers under `x ↦ -x`.

use std::sync::Arc;

use skewrec::group::GroupAction;
use skewrec::skew::{skew_algebra_check, SkewAlgebra};
use skewrec::{Algebra, Field, Matrix};

fn main() {
    let q = Field::Rationals;
    let dual = Arc::new(Algebra::truncated_polynomial(q, 2));
    let sign = Matrix::from_i64(q, &[&[1, 0], &[0, -1]]);
    let g = GroupAction::new(dual.clone(), vec![sign], vec!["s".into()]).unwrap();

    let (report, skew) = skew_algebra_check(&g, "dual numbers").unwrap();
    println!("{}", report.verdict);
    for (k, v) in &report.measurements {
        println!("  {k} = {v}");
    }

    // (1 ± s)/2 are orthogonal idempotents of ΛG
    let half = q.from_ratio(1, 2).unwrap();
    let one = skew.tensor(dual.unit(), 0);
    let s = skew.group_element(1);
    let plus: Vec<_> = one.iter().zip(&s).map(|(a, b)| &(a + b) * &half).collect();
    let minus: Vec<_> = one.iter().zip(&s).map(|(a, b)| &(a - b) * &half).collect();
    println!("(1+s)/2 idempotent: {}", skew.total.is_idempotent(&plus));
    println!("(1-s)/2 idempotent: {}", skew.total.is_idempotent(&minus));

    // with the trivial action the same construction gives Λ ⊗ kG
    let trivial = SkewAlgebra::new(&GroupAction::trivial(dual, 2)).unwrap();
    println!("dim of Λ ⊗ kC2: {}", trivial.total.dim());
}
