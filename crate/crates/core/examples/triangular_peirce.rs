//! `Λ = [[k[x]/(x²), 0], [k, k]]` with a sign action: `ΛG` is again triangular, with blocks `RG`, `NG`, `SG`.

use std::sync::Arc;

use skewrec::group::GroupAction;
use skewrec::module::Bimodule;
use skewrec::triangular::{gldim_corollary_check, peirce_triangular_check, TriangularAlgebra};
use skewrec::{Algebra, Field, Matrix};

fn main() {
    let q = Field::Rationals;
    let r = Arc::new(Algebra::truncated_polynomial(q, 2));
    let s = Arc::new(Algebra::ground(q));
    let one = Matrix::identity(q, 1);
    let n = Bimodule::new(s, r, vec![one.clone()], vec![one, Matrix::zeros(q, 1, 1)]).unwrap();
    let t = TriangularAlgebra::new(n).unwrap();
    println!("dims (R, N, S) = {:?}, dim Λ = {}", t.dims(), t.total.dim());

    let sigma = Matrix::from_i64(q, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let g = GroupAction::new(t.total.clone(), vec![sigma], vec!["s".into()]).unwrap();
    let (report, data) = peirce_triangular_check(&t, &g, "triangular").unwrap();
    println!("Peirce: {}", report.verdict);
    for (k, v) in &report.measurements {
        println!("  {k} = {v}");
    }
    println!("rebuilt blocks (RG, NG, SG) = {:?}", data.triangular.dims());

    let cor = gldim_corollary_check(&t, &g, 10, 0, "triangular").unwrap();
    println!("gl.dim corollary: {}", cor.verdict);
    for (k, v) in &cor.measurements {
        println!("  {k} = {v}");
    }
}
