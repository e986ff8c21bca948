use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RightModule;
use crate::error::Result;
use crate::linalg::{Matrix, Scalar};

/// Basis of `Hom_A(M, N)`, each map a `dim M × dim N` matrix `φ` with `ρ_M(a)φ = φρ_N(a)`.
///
/// A map is fixed by the images `x_t` of the generators of `M`, subject to
/// `Σ_t x_t ρ_N(k_t) = 0` for every relation `k` of the presentation.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<Vec<Matrix>> {
    m.check_same_algebra(n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let a = m.algebra();
    let field = a.field();
    let p = m.presentation();
    let g = p.generators.len();
    let dn = n.dim();
    let da = a.dim();

    let relations = p.kernel.basis();
    let mut system = Matrix::zeros(field, g * dn, relations.len() * dn);
    for (r, k) in relations.iter().enumerate() {
        for t in 0..g {
            let kt = &k[t * da..(t + 1) * da];
            if kt.iter().any(|c| !c.is_zero()) {
                system.set_block(t * dn, r * dn, &n.action_of(kt));
            }
        }
    }
    let solutions = system.left_nullspace();
    Ok(solutions
        .into_iter()
        .map(|x| {
            let mut y = Matrix::zeros(field, g * da, dn);
            for t in 0..g {
                let xt = &x[t * dn..(t + 1) * dn];
                for i in 0..da {
                    for (c, v) in n.act_basis(xt, i).into_iter().enumerate() {
                        y.set(t * da + i, c, v);
                    }
                }
            }
            p.section.mul(&y)
        })
        .collect())
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoSearch {
    /// An invertible module map, certified by full rank.
    Found(Matrix),
    /// Ruled out by dimension or Hom-dimension invariants.
    NotIsomorphic,
    /// No invertible combination found among the trials.
    Unknown,
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

/// Looks for an invertible element of `Hom(M, N)` among basis elements and seeded random
/// small-integer combinations of them.
pub fn find_isomorphism(m: &RightModule, n: &RightModule, seed: u64, trials: usize) -> Result<IsoSearch> {
    m.check_same_algebra(n)?;
    if m.dim() != n.dim() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoSearch::Found(Matrix::zeros(m.algebra().field(), 0, 0)));
    }
    let homs = hom_space(m, n)?;
    let ends = hom_space(m, m)?.len();
    if homs.len() != ends || hom_space(n, n)?.len() != ends || hom_space(n, m)?.len() != ends {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let d = m.dim();
    for h in &homs {
        if h.rank() == d {
            return Ok(IsoSearch::Found(h.clone()));
        }
    }
    let field = m.algebra().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut phi = Matrix::zeros(field, d, n.dim());
        for h in &homs {
            let c: Scalar = field.from_i64(rng.gen_range(-3..=3));
            if !c.is_zero() {
                h.add_scaled_into(&mut phi, &c);
            }
        }
        if phi.rank() == d {
            return Ok(IsoSearch::Found(phi));
        }
    }
    Ok(IsoSearch::Unknown)
}
