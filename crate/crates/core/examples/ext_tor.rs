//! Ext and Tor dimensions from free resolutions.

use std::sync::Arc;

use skewrec::module::{ext_dims, tor_dims, Bimodule};
use skewrec::{Algebra, Field, RightModule};

fn main() {
    let q = Field::Rationals;
    for n in [2, 3] {
        let a = Arc::new(Algebra::truncated_polynomial(q, n));
        let reg = RightModule::regular(&a);
        let k = reg.top().unwrap();
        println!("k[x]/(x^{n}):");
        println!("  Ext^i(k, k)   i ≤ 4: {:?}", ext_dims(&k, &k, 4).unwrap());
        println!("  Ext^i(k, Λ)   i ≤ 4: {:?}", ext_dims(&k, &reg, 4).unwrap());
        println!("  Tor_i(k, Λ)   i ≤ 4: {:?}", tor_dims(&k, &Bimodule::regular(&a), 4).unwrap());
    }
}
