//! The skew group algebra `RG` and the passage between `R`-modules and `RG`-modules.
//!
//! `RG` has basis `b_i g` at flat index `i·|G| + g`, with `(r g)(r' h) = r·r'^g·(gh)`.

use std::sync::Arc;

use crate::algebra::{corner_algebra, Algebra};
use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::linalg::{zero_vec, Matrix, Scalar, Subspace};
use crate::module::RightModule;
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct SkewAlgebra {
    pub action: GroupAction,
    pub total: Arc<Algebra>,
}

impl SkewAlgebra {
    /// Builds `RG` and re-verifies associativity and the unit on every basis triple.
    pub fn new(action: &GroupAction) -> Result<SkewAlgebra> {
        let s = SkewAlgebra::new_unchecked(action);
        s.total.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(action: &GroupAction) -> SkewAlgebra {
        let base = action.algebra();
        let field = base.field();
        let n = base.dim();
        let k = action.order();
        let dim = n * k;
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..n {
            for g in 0..k {
                let sigma = action.matrix(g);
                for j in 0..n {
                    let w = base.basis_mul(i, sigma.row(j));
                    for h in 0..k {
                        let gh = action.mul(g, h);
                        products.push(
                            w.iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(m, c)| (m * k + gh, c.clone()))
                                .collect(),
                        );
                    }
                }
            }
        }
        let mut unit = zero_vec(field, dim);
        for (m, c) in base.unit().iter().enumerate() {
            unit[m * k + action.identity()] = c.clone();
        }
        SkewAlgebra {
            action: action.clone(),
            total: Arc::new(Algebra::from_sparse_unchecked(field, dim, products, unit)),
        }
    }

    pub fn base(&self) -> &Arc<Algebra> {
        self.action.algebra()
    }

    pub fn order(&self) -> usize {
        self.action.order()
    }

    pub fn index(&self, i: usize, g: usize) -> usize {
        i * self.order() + g
    }

    /// `r ↦ r·1_G`, row `i` the image of `b_i`.
    pub fn embed_base(&self) -> Matrix {
        let n = self.base().dim();
        let mut m = Matrix::zeros(self.base().field(), n, self.total.dim());
        for i in 0..n {
            m.set(i, self.index(i, self.action.identity()), self.base().field().one());
        }
        m
    }

    /// `r·g` in `RG` coordinates.
    pub fn tensor(&self, r: &[Scalar], g: usize) -> Vec<Scalar> {
        let mut out = self.total.zero_element();
        for (i, c) in r.iter().enumerate() {
            if !c.is_zero() {
                out[self.index(i, g)] = c.clone();
            }
        }
        out
    }

    /// The group element `1·g`.
    pub fn group_element(&self, g: usize) -> Vec<Scalar> {
        self.tensor(self.base().unit(), g)
    }

    /// `e' = e·1_G`.
    pub fn lift_idempotent(&self, e: &[Scalar]) -> Result<Vec<Scalar>> {
        self.action.require_invariant(e)?;
        let lifted = self.tensor(e, self.action.identity());
        debug_assert!(self.total.is_idempotent(&lifted));
        Ok(lifted)
    }

    /// `Ind M = M ⊗_R RG`, with block `g` holding `M ⊗ g`; `(m ⊗ g)·(r h) = m·r^g ⊗ gh`.
    pub fn induce(&self, m: &RightModule) -> RightModule {
        let field = self.base().field();
        let d = m.dim();
        let k = self.order();
        let n = self.base().dim();
        let mut action = Vec::with_capacity(n * k);
        for i in 0..n {
            let twisted: Vec<Matrix> = (0..k).map(|g| m.action_of(self.action.matrix(g).row(i))).collect();
            for h in 0..k {
                let mut big = Matrix::zeros(field, d * k, d * k);
                for (g, t) in twisted.iter().enumerate() {
                    big.set_block(g * d, self.action.mul(g, h) * d, t);
                }
                action.push(big);
            }
        }
        RightModule::new_unchecked(self.total.clone(), d * k, action)
    }

    /// Restriction along `R → RG`.
    pub fn restrict(&self, m: &RightModule) -> RightModule {
        m.pull_back(self.base(), &self.embed_base())
    }

    /// The `RG`-module on a linearized `R`-module: `b_i g` acts by `ρ(b_i)·M_g`.
    pub fn equivariant_module(&self, lin: &Linearization) -> Result<RightModule> {
        lin.validate(&self.action)?;
        let m = &lin.module;
        let k = self.order();
        let action = (0..self.base().dim())
            .flat_map(|i| (0..k).map(move |g| m.action(i).mul(&lin.maps[g])))
            .collect();
        let out = RightModule::new_unchecked(self.total.clone(), m.dim(), action);
        out.validate()?;
        Ok(out)
    }

    /// Checks `(eRe)G ≅ e'(RG)e'` through `(u, g) ↦ u·g` on bases.
    pub fn corner_compat_check(&self, e: &[Scalar], instance: &str) -> Result<(CheckReport, CornerCompat)> {
        let mut report = CheckReport::new("corner-compat", instance);
        let base = self.base();
        let corner = corner_algebra(base, e)?;
        let corner_alg = Arc::new(corner.algebra.clone());
        let restricted = self.action.restrict_to_corner(&corner, &corner_alg)?;
        let small = SkewAlgebra::new(&restricted)?;
        let lifted = self.lift_idempotent(e)?;
        let big = corner_algebra(&self.total, &lifted)?;
        report
            .hypothesis("e idempotent", true)
            .hypothesis("e fixed by G", true)
            .measure("dim eRe", corner.algebra.dim())
            .measure("|G|", self.order())
            .measure("dim (eRe)G", small.total.dim())
            .measure("dim e'RGe'", big.algebra.dim());

        let k = self.order();
        let d = corner.algebra.dim();
        let image: Vec<Vec<Scalar>> = (0..d)
            .flat_map(|a| (0..k).map(move |g| (a, g)))
            .map(|(a, g)| self.tensor(corner.embed.row(a), g))
            .collect();
        let big_span = Subspace::from_vectors(base.field(), self.total.dim(), big.embed.row_vecs());
        if let Some(bad) = image.iter().position(|v| !big_span.contains(v)) {
            report.fail(format!("image of basis vector {bad} leaves e'RGe'"));
        }
        let image_span = Subspace::from_vectors(base.field(), self.total.dim(), image.clone());
        report.expect_eq("rank of the basis map", image_span.dim(), small.total.dim());
        report.expect_eq("dimensions", small.total.dim(), big.algebra.dim());
        let mut mult_ok = true;
        'pairs: for x in 0..image.len() {
            for y in 0..image.len() {
                let lhs = self.total.mul(&image[x], &image[y]);
                let prod = small.total.basis_product(x, y);
                let mut rhs = self.total.zero_element();
                for (z, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    crate::linalg::axpy(&mut rhs, c, &image[z]);
                }
                if lhs != rhs {
                    report.fail(format!("map is not multiplicative on basis pair ({x}, {y})"));
                    mult_ok = false;
                    break 'pairs;
                }
            }
        }
        let mut unit_image = self.total.zero_element();
        for (z, c) in small.total.unit().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            crate::linalg::axpy(&mut unit_image, c, &image[z]);
        }
        report.expect_eq("image of the unit", unit_image, lifted.clone());
        report.measure("multiplicative", mult_ok);
        Ok((
            report,
            CornerCompat {
                corner_skew: small,
                map: Matrix::from_rows(base.field(), self.total.dim(), image),
                big_corner: big,
            },
        ))
    }
}

/// The data behind a corner-compatibility check.
#[derive(Clone, Debug)]
pub struct CornerCompat {
    /// `(eRe)G`.
    pub corner_skew: SkewAlgebra,
    /// Row `x` is the image in `RG` of basis vector `x` of `(eRe)G`.
    pub map: Matrix,
    /// `e'(RG)e'` with its own basis.
    pub big_corner: crate::algebra::Corner,
}

impl CornerCompat {
    /// Row `x` gives the coordinates in `e'(RG)e'` of the image of basis vector `x` of `(eRe)G`.
    pub fn to_big_corner(&self) -> Matrix {
        let field = self.map.field();
        let span = Subspace::from_vectors(field, self.map.cols(), self.big_corner.embed.row_vecs());
        Matrix::from_rows(
            field,
            self.big_corner.algebra.dim(),
            self.map
                .row_vecs()
                .iter()
                .map(|v| span.coordinates(v).expect("image lies in the corner"))
                .collect(),
        )
    }
}

/// Isomorphisms `M_g : M → M^g` in the row convention: `ρ(a)·M_g = M_g·ρ(a^{g^{-1}})`
/// and `M_g M_h = M_{gh}`.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub module: RightModule,
    pub maps: Vec<Matrix>,
}

impl Linearization {
    pub fn new(action: &GroupAction, module: RightModule, maps: Vec<Matrix>) -> Result<Linearization> {
        let lin = Linearization { module, maps };
        lin.validate(action)?;
        Ok(lin)
    }

    /// Extends maps given on some elements to the whole group by `M_{gh} = M_g M_h`.
    pub fn from_generators(action: &GroupAction, module: RightModule, given: Vec<(usize, Matrix)>) -> Result<Linearization> {
        let field = module.algebra().field();
        let k = action.order();
        let mut maps: Vec<Option<Matrix>> = vec![None; k];
        maps[action.identity()] = Some(Matrix::identity(field, module.dim()));
        for (g, m) in &given {
            if *g >= k {
                return Err(Error::InvalidGroupTable(format!("element {g} out of range")));
            }
            match &maps[*g] {
                Some(existing) if existing != m => {
                    return Err(Error::CocycleViolation {
                        g: *g,
                        h: action.identity(),
                    })
                }
                _ => maps[*g] = Some(m.clone()),
            }
        }
        let gens: Vec<(usize, Matrix)> = given;
        let mut frontier: Vec<usize> = (0..k).filter(|&g| maps[g].is_some()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for (s, ms) in &gens {
                    let xs = action.mul(x, *s);
                    let prod = maps[x].as_ref().unwrap().mul(ms);
                    match &maps[xs] {
                        Some(existing) if *existing != prod => return Err(Error::CocycleViolation { g: x, h: *s }),
                        Some(_) => {}
                        None => {
                            maps[xs] = Some(prod);
                            next.push(xs);
                        }
                    }
                }
            }
            frontier = next;
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or(Error::CocycleViolation { g, h: g }))
            .collect::<Result<Vec<_>>>()?;
        Linearization::new(action, module, maps)
    }

    /// The trivial linearization `M_g = I`, valid when `G` acts trivially on the module's annihilator quotient.
    pub fn trivial(action: &GroupAction, module: RightModule) -> Result<Linearization> {
        let id = Matrix::identity(module.algebra().field(), module.dim());
        Linearization::new(action, module, vec![id; action.order()])
    }

    /// `R_R` with `M_g = Σ_{g^{-1}}`; the cocycle condition holds exactly when `G` is abelian.
    pub fn regular(action: &GroupAction) -> Result<Linearization> {
        let module = RightModule::regular(action.algebra());
        let maps = (0..action.order()).map(|g| action.matrix(action.inverse(g)).clone()).collect();
        Linearization::new(action, module, maps)
    }

    pub fn validate(&self, action: &GroupAction) -> Result<()> {
        let m = &self.module;
        let k = action.order();
        if self.maps.len() != k || self.maps.iter().any(|x| x.rows() != m.dim() || x.cols() != m.dim()) {
            return Err(Error::DimensionMismatch("one square map per group element is required".into()));
        }
        if !self.maps[action.identity()].is_identity() {
            let e = action.identity();
            return Err(Error::CocycleViolation { g: e, h: e });
        }
        for g in 0..k {
            for h in 0..k {
                if self.maps[g].mul(&self.maps[h]) != self.maps[action.mul(g, h)] {
                    return Err(Error::CocycleViolation { g, h });
                }
            }
        }
        for g in 0..k {
            let twisted = action.twist_module(m, g);
            for i in 0..action.algebra().dim() {
                if m.action(i).mul(&self.maps[g]) != self.maps[g].mul(twisted.action(i)) {
                    return Err(Error::CompatibilityViolation { g, i });
                }
            }
        }
        Ok(())
    }
}

/// Structural checks on `ΛG`: dimension, associativity, the radical and the trivial-action case.
pub fn skew_algebra_check(action: &GroupAction, instance: &str) -> Result<(CheckReport, SkewAlgebra)> {
    let skew = SkewAlgebra::new(action)?;
    let base = skew.base();
    let k = action.order();
    let mut report = CheckReport::new("skew-algebra", instance);
    report
        .hypothesis("associative and unital", true)
        .measure("dim Λ", base.dim())
        .measure("|G|", k)
        .measure("dim ΛG", skew.total.dim());
    report.expect_eq("dim ΛG", skew.total.dim(), k * base.dim());
    let embed = skew.embed_base();
    for i in 0..base.dim() {
        for j in 0..base.dim() {
            let lhs = skew.total.mul(embed.row(i), embed.row(j));
            if lhs != embed.apply_row(&base.basis_product(i, j)) {
                report.fail(format!("Λ → ΛG is not multiplicative on ({i}, {j})"));
            }
        }
    }
    report.expect_eq("rank of Λ → ΛG", embed.rank(), base.dim());
    report.hypothesis("|G| invertible", action.order_invertible());
    if action.order_invertible() {
        match (base.radical(), skew.total.radical()) {
            (Ok(r), Ok(rg)) => {
                report.measure("dim rad Λ", r.dim()).measure("dim rad ΛG", rg.dim());
                report.expect_eq("dim rad ΛG", rg.dim(), k * r.dim());
            }
            (Err(e), _) | (_, Err(e)) => {
                report.measure("radical", e.to_string());
            }
        }
    }
    if action.is_trivial() {
        let mut commute = true;
        for i in 0..base.dim() {
            for g in 0..k {
                let x = skew.tensor(&base.basis(i), action.identity());
                let y = skew.group_element(g);
                if skew.total.mul(&x, &y) != skew.total.mul(&y, &x) {
                    commute = false;
                    report.fail(format!("b{i} and group element {g} do not commute"));
                }
            }
        }
        report.measure("trivial action: Λ commutes with G", commute);
    }
    Ok((report, skew))
}

/// `pd(Ind M) = pd(M)` and `Res Ind M ≅ ⊕_g M^g` for each module, and, for linearized modules,
/// projectivity of the `ΛG`-module against that of `M`.
pub fn induction_check(
    skew: &SkewAlgebra,
    modules: &[(String, RightModule, Option<Linearization>)],
    bound: usize,
    seed: u64,
    instance: &str,
) -> Result<CheckReport> {
    let action = &skew.action;
    action.require_invertible_order()?;
    let mut report = CheckReport::new("induction", instance);
    report.hypothesis("|G| invertible", true).measure("bound", bound);
    for (name, m, lin) in modules {
        let ind = skew.induce(m);
        let pd = crate::module::projective_dimension(m, bound)?;
        let pd_ind = crate::module::projective_dimension(&ind, bound)?;
        report
            .measure_pd(&format!("pd {name}"), pd)
            .measure_pd(&format!("pd Ind {name}"), pd_ind);
        report.expect_eq(&format!("pd of Ind {name}"), pd_ind, pd);
        let back = skew.restrict(&ind);
        let mut twists = crate::module::RightModule::zero(m.algebra());
        for g in 0..action.order() {
            twists = twists.direct_sum(&action.twist_module(m, g))?;
        }
        report.expect_eq(&format!("dim Res Ind {name}"), back.dim(), action.order() * m.dim());
        if back.dim() <= 24 {
            let found = crate::module::find_isomorphism(&back, &twists, seed, 16)?;
            if !found.is_found() {
                report.fail(format!("Res Ind {name} is not isomorphic to the sum of twists ({found:?})"));
            }
        }
        if let Some(l) = lin {
            let eq = skew.equivariant_module(l)?;
            let (p, q) = (eq.is_projective()?, m.is_projective()?);
            report
                .measure(&format!("{name} projective"), q)
                .measure(&format!("Φ({name}) projective"), p);
            report.expect_eq(&format!("projectivity of Φ({name})"), p, q);
            report.expect_eq(&format!("Res Φ({name})"), skew.restrict(&eq), m.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jacobson_radical;
    use crate::linalg::Field;
    use crate::module::find_isomorphism;

    const Q: Field = Field::Rationals;

    fn sign_on_dual() -> GroupAction {
        let a = Arc::new(Algebra::truncated_polynomial(Q, 2));
        GroupAction::new(a, vec![Matrix::from_i64(Q, &[&[1, 0], &[0, -1]])], vec!["s".into()]).unwrap()
    }

    #[test]
    fn trivial_group_gives_base() {
        let a = Arc::new(Algebra::truncated_polynomial(Q, 2));
        let s = SkewAlgebra::new(&GroupAction::trivial(a.clone(), 1)).unwrap();
        assert_eq!(*s.total, *a);
    }

    #[test]
    fn group_algebra_of_c2_splits() {
        let k = Arc::new(Algebra::ground(Q));
        let s = SkewAlgebra::new(&GroupAction::trivial(k, 2)).unwrap();
        assert_eq!(s.total.dim(), 2);
        let half = Q.from_ratio(1, 2).unwrap();
        let plus = vec![half.clone(), half.clone()];
        let minus = vec![half.clone(), -&half];
        assert!(s.total.is_idempotent(&plus));
        assert!(s.total.is_idempotent(&minus));
        assert!(jacobson_radical(&s.total).unwrap().is_zero());
    }

    #[test]
    fn skew_dual_numbers() {
        let g = sign_on_dual();
        let s = SkewAlgebra::new(&g).unwrap();
        assert_eq!(s.total.dim(), 4);
        let rad = jacobson_radical(&s.total).unwrap();
        assert_eq!(rad.dim(), 2);
        let top = crate::algebra::quotient_algebra(&s.total, &rad).unwrap();
        assert!(jacobson_radical(&top.algebra).unwrap().is_zero());
    }

    #[test]
    fn linearizations() {
        let g = sign_on_dual();
        let s = SkewAlgebra::new(&g).unwrap();
        let reg = Linearization::regular(&g).unwrap();
        let eq = s.equivariant_module(&reg).unwrap();
        assert_eq!(eq.dim(), 2);
        assert_eq!(s.restrict(&eq), reg.module);

        let k = RightModule::regular(g.algebra()).top().unwrap();
        let sg = (0..2).find(|&x| x != g.identity()).unwrap();
        let sign = Linearization::from_generators(&g, k.clone(), vec![(sg, Matrix::from_i64(Q, &[&[-1]]))]).unwrap();
        let m = s.equivariant_module(&sign).unwrap();
        assert_eq!(m.action(s.index(0, sg)), &Matrix::from_i64(Q, &[&[-1]]));

        let bad = Linearization::new(&g, reg.module.clone(), vec![Matrix::identity(Q, 2); 2]);
        assert!(matches!(bad, Err(Error::CompatibilityViolation { .. })));
    }

    #[test]
    fn induction_and_restriction() {
        let g = sign_on_dual();
        let s = SkewAlgebra::new(&g).unwrap();
        let reg = RightModule::regular(g.algebra());
        let ind = s.induce(&reg);
        ind.validate().unwrap();
        assert_eq!(ind.dim(), 4);
        let free = RightModule::regular(&s.total);
        assert!(find_isomorphism(&ind, &free, 1, 16).unwrap().is_found());
        let back = s.restrict(&free);
        let two = RightModule::free(g.algebra(), 2);
        assert!(find_isomorphism(&back, &two, 1, 16).unwrap().is_found());
    }

    #[test]
    fn corner_compat_on_full_idempotent() {
        let g = sign_on_dual();
        let s = SkewAlgebra::new(&g).unwrap();
        let (report, _) = s.corner_compat_check(g.algebra().unit(), "dual").unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
