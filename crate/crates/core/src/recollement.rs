//! Checkers for the recollement `(mod Λ/ΛeΛ, mod Λ, mod eΛe)` and its equivariant counterpart.

use std::sync::Arc;

use crate::algebra::{corner_algebra, quotient_algebra, two_sided_ideal, Algebra, Corner, Quotient};
use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::module::{
    ext_dims, projective_dimension, projective_dimension_report, tor_dims, Bimodule, PdReport, PdResult, Periodicity, RightModule,
};
use crate::report::{CheckReport, Verdict};
use crate::skew::{Linearization, SkewAlgebra};

/// `Λ` cut along an idempotent: the corner `eΛe`, the ideal `ΛeΛ` and the quotient `Λ/ΛeΛ`.
#[derive(Clone, Debug)]
pub struct RecollementData {
    pub middle: Arc<Algebra>,
    pub idempotent: Vec<Scalar>,
    pub corner: Corner,
    pub corner_algebra: Arc<Algebra>,
    pub ideal: Subspace,
    pub quotient: Quotient,
    pub quotient_algebra: Arc<Algebra>,
}

impl RecollementData {
    pub fn new(middle: &Arc<Algebra>, e: &[Scalar]) -> Result<RecollementData> {
        let corner = corner_algebra(middle, e)?;
        let ideal = two_sided_ideal(middle, e)?;
        let quotient = quotient_algebra(middle, &ideal)?;
        Ok(RecollementData {
            middle: middle.clone(),
            idempotent: e.to_vec(),
            corner_algebra: Arc::new(corner.algebra.clone()),
            corner,
            ideal,
            quotient_algebra: Arc::new(quotient.algebra.clone()),
            quotient,
        })
    }

    /// A `Λ/ΛeΛ`-module viewed as a `Λ`-module.
    pub fn inflate(&self, m: &RightModule) -> Result<RightModule> {
        if **m.algebra() != *self.quotient_algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(m.pull_back(&self.middle, &self.quotient.proj))
    }

    /// `(Λ/ΛeΛ) / rad(Λ/ΛeΛ)` as a `Λ`-module.
    pub fn quotient_top(&self) -> Result<RightModule> {
        self.inflate(&RightModule::regular(&self.quotient_algebra).top()?)
    }

    /// `Λe` as a right `eΛe`-module.
    pub fn right_corner_module(&self) -> RightModule {
        let a = &self.middle;
        let e = &self.idempotent;
        let space = Subspace::from_vectors(a.field(), a.dim(), (0..a.dim()).map(|i| a.basis_mul(i, e)));
        let action = (0..self.corner.algebra.dim())
            .map(|c| restrict_map(&space, |v| a.mul(v, self.corner.embed.row(c))))
            .collect();
        RightModule::new_unchecked(self.corner_algebra.clone(), space.dim(), action)
    }

    /// `eΛ` as an `eΛe`-`Λ`-bimodule.
    pub fn left_corner_bimodule(&self) -> Bimodule {
        let a = &self.middle;
        let e = &self.idempotent;
        let space = Subspace::from_vectors(a.field(), a.dim(), (0..a.dim()).map(|i| a.mul_by_basis(e, i)));
        let left = (0..self.corner.algebra.dim())
            .map(|c| restrict_map(&space, |v| a.mul(self.corner.embed.row(c), v)))
            .collect();
        let right = (0..a.dim()).map(|j| restrict_map(&space, |v| a.mul_by_basis(v, j))).collect();
        Bimodule::new_unchecked(self.corner_algebra.clone(), a.clone(), space.dim(), left, right)
    }
}

/// The matrix of `f` on `space` in its echelon basis, assuming `f(space) ⊆ space`.
pub(crate) fn restrict_map(space: &Subspace, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Matrix {
    let rows = space
        .basis()
        .iter()
        .map(|v| space.coordinates(&f(v)).expect("subspace is stable"))
        .collect();
    Matrix::from_rows(space.field(), space.dim(), rows)
}

fn periodicity(seed: u64) -> Periodicity {
    Periodicity {
        seed,
        ..Periodicity::default()
    }
}

fn record_pd(report: &mut CheckReport, key: &str, pd: &PdReport) {
    report.measure_pd(key, pd.result);
    report.measure(&format!("{key}: syzygy dims"), pd.syzygy_dims.clone());
    if let Some((i, j)) = pd.period {
        report.witness(format!("{key}: syzygy {j} is isomorphic to syzygy {i}"));
    }
}

/// The projective-dimension criterion for `e : mod Λ → mod eΛe` to induce a singular equivalence.
///
/// `Pass` when both dimensions are finite, `Fail` only when a syzygy repeats, `Inconclusive` otherwise.
pub fn singular_equivalence_criterion(data: &RecollementData, bound: usize, seed: u64, instance: &str) -> Result<CheckReport> {
    let mut report = CheckReport::new("singular-equiv", instance);
    report
        .hypothesis("e idempotent", true)
        .measure("dim Λ", data.middle.dim())
        .measure("dim eΛe", data.corner.algebra.dim())
        .measure("dim Λ/ΛeΛ", data.quotient.algebra.dim());
    let top = projective_dimension_report(&data.quotient_top()?, bound, Some(periodicity(seed)))?;
    let side = projective_dimension_report(&data.right_corner_module(), bound, Some(periodicity(seed)))?;
    record_pd(&mut report, "pd_Λ top(Λ/ΛeΛ)", &top);
    record_pd(&mut report, "pd_eΛe Λe", &side);
    report.verdict = if top.result.is_finite() && side.result.is_finite() {
        Verdict::Pass
    } else if top.period.is_some() || side.period.is_some() {
        Verdict::Fail
    } else {
        Verdict::Inconclusive(bound)
    };
    Ok(report)
}

/// Runs the criterion for `(Λ, e)` and for `(ΛG, e·1_G)` and checks the verdicts agree.
pub fn equivariant_cross_check(action: &GroupAction, e: &[Scalar], bound: usize, seed: u64, instance: &str) -> Result<CheckReport> {
    action.require_invertible_order()?;
    action.require_invariant(e)?;
    let skew = SkewAlgebra::new(action)?;
    let lifted = skew.lift_idempotent(e)?;
    let base = singular_equivalence_criterion(&RecollementData::new(action.algebra(), e)?, bound, seed, instance)?;
    let over = singular_equivalence_criterion(&RecollementData::new(&skew.total, &lifted)?, bound, seed, instance)?;
    let mut report = CheckReport::new("equivariant-cross-check", instance);
    report
        .hypothesis("e fixed by G", true)
        .hypothesis("|G| invertible", true)
        .measure("|G|", action.order())
        .measure("base verdict", base.verdict.to_string())
        .measure("skew verdict", over.verdict.to_string());
    for (prefix, r) in [("base", &base), ("skew", &over)] {
        for (k, v) in &r.measurements {
            if k.starts_with("pd_") {
                report.measure(&format!("{prefix} {k}"), v.clone());
            }
        }
        for w in &r.witnesses {
            report.witness(format!("{prefix}: {w}"));
        }
    }
    if base.verdict != over.verdict {
        report.fail(format!("verdicts disagree: {} on Λ, {} on ΛG", base.verdict, over.verdict));
    }
    Ok(report)
}

/// `pd_A(A / rad A)`, which equals the global dimension.
pub fn global_dimension_upper(a: &Arc<Algebra>, bound: usize) -> Result<PdResult> {
    projective_dimension(&RightModule::regular(a).top()?, bound)
}

/// Compares the global dimensions of `Λ` and `ΛG`.
pub fn gldim_cross_check(action: &GroupAction, bound: usize, instance: &str) -> Result<CheckReport> {
    action.require_invertible_order()?;
    let skew = SkewAlgebra::new(action)?;
    let base = global_dimension_upper(action.algebra(), bound)?;
    let over = global_dimension_upper(&skew.total, bound)?;
    let mut report = CheckReport::new("gldim", instance);
    report
        .hypothesis("|G| invertible", true)
        .measure("|G|", action.order())
        .measure_pd("gl.dim Λ", base)
        .measure_pd("gl.dim ΛG", over);
    report.expect_eq("global dimensions", base, over);
    if report.passed() {
        if let PdResult::ExceedsBound(b) = base {
            report.measure("both exceed bound", b);
        }
    }
    Ok(report)
}

/// A test module for the homological-embedding comparison, optionally linearized.
#[derive(Clone, Debug)]
pub struct TestModule {
    pub label: String,
    pub module: RightModule,
    pub linearization: Option<Linearization>,
}

/// The default test modules: the top of `Λ/ΛeΛ` and `Λ/ΛeΛ` itself.
pub fn default_test_modules(data: &RecollementData) -> Result<Vec<TestModule>> {
    let reg = RightModule::regular(&data.quotient_algebra);
    Ok(vec![
        TestModule {
            label: "top".into(),
            module: reg.top()?,
            linearization: None,
        },
        TestModule {
            label: "regular".into(),
            module: reg,
            linearization: None,
        },
    ])
}

/// Dimension mismatches between `Ext_{Λ/ΛeΛ}` and `Ext_Λ` on all pairs, as `(x, y, n, small, big)`.
fn ext_mismatches(
    small: &[RightModule],
    big: &[RightModule],
    k_max: usize,
    report: &mut CheckReport,
    prefix: &str,
    labels: &[String],
) -> Result<Vec<(usize, usize, usize)>> {
    let mut bad = Vec::new();
    for x in 0..small.len() {
        for y in 0..small.len() {
            let lhs = ext_dims(&small[x], &small[y], k_max)?;
            let rhs = ext_dims(&big[x], &big[y], k_max)?;
            report.measure(&format!("{prefix} Ext({}, {}) quotient", labels[x], labels[y]), lhs.clone());
            report.measure(&format!("{prefix} Ext({}, {}) middle", labels[x], labels[y]), rhs.clone());
            for n in 0..=k_max {
                if lhs[n] != rhs[n] {
                    bad.push((x, y, n));
                }
            }
        }
    }
    Ok(bad)
}

/// Tests whether `mod Λ/ΛeΛ → mod Λ` is a `k`-homological embedding on the given modules, and the
/// same for `mod (Λ/ΛeΛ)G → mod ΛG`; passes when both levels reach the same verdict.
pub fn homological_embedding_check(
    action: &GroupAction,
    e: &[Scalar],
    k_max: usize,
    tests: Option<Vec<TestModule>>,
    instance: &str,
) -> Result<CheckReport> {
    action.require_invertible_order()?;
    action.require_invariant(e)?;
    let data = RecollementData::new(action.algebra(), e)?;
    let tests = match tests {
        Some(t) => t,
        None => default_test_modules(&data)?,
    };
    let labels: Vec<String> = tests.iter().map(|t| t.label.clone()).collect();
    let small: Vec<RightModule> = tests.iter().map(|t| t.module.clone()).collect();
    for t in &tests {
        if **t.module.algebra() != *data.quotient_algebra {
            return Err(Error::NotAnnihilated { module: t.label.clone() });
        }
    }
    let big = small.iter().map(|m| data.inflate(m)).collect::<Result<Vec<_>>>()?;

    let quotient_action = action.descend_to_quotient(&data.quotient, &data.quotient_algebra)?;
    let small_skew = SkewAlgebra::new(&quotient_action)?;
    let big_skew = SkewAlgebra::new(action)?;
    let proj = skew_projection(&big_skew, &small_skew, &data.quotient.proj);
    let lifted = big_skew.lift_idempotent(e)?;
    let kernel_ok = kernel_of(&proj) == two_sided_ideal(&big_skew.total, &lifted)?;
    let small_g = tests
        .iter()
        .map(|t| match &t.linearization {
            Some(l) => small_skew.equivariant_module(l),
            None => Ok(small_skew.induce(&t.module)),
        })
        .collect::<Result<Vec<_>>>()?;
    let big_g: Vec<RightModule> = small_g.iter().map(|m| m.pull_back(&big_skew.total, &proj)).collect();

    let mut report = CheckReport::new("hom-embedding", instance);
    report
        .hypothesis("e fixed by G", true)
        .hypothesis("|G| invertible", true)
        .hypothesis("ker(ΛG → (Λ/ΛeΛ)G) = ΛG e' ΛG", kernel_ok)
        .measure("k", k_max)
        .measure("test modules", labels.clone());
    if !kernel_ok {
        report.fail("the skew quotient map has the wrong kernel");
    }
    let base_bad = ext_mismatches(&small, &big, k_max, &mut report, "base", &labels)?;
    let skew_bad = ext_mismatches(&small_g, &big_g, k_max, &mut report, "skew", &labels)?;
    let first = |bad: &[(usize, usize, usize)]| bad.iter().map(|b| b.2).min();
    let base_verdict = if base_bad.is_empty() { "Pass" } else { "Fail" };
    let skew_verdict = if skew_bad.is_empty() { "Pass" } else { "Fail" };
    report
        .measure("base verdict", base_verdict)
        .measure("skew verdict", skew_verdict)
        .measure("base first failing degree", first(&base_bad))
        .measure("skew first failing degree", first(&skew_bad));
    for (x, y, n) in base_bad.iter().take(4) {
        report.witness(format!("base: Ext^{n}({}, {}) differs", labels[*x], labels[*y]));
    }
    for (x, y, n) in skew_bad.iter().take(4) {
        report.witness(format!("skew: Ext^{n}({}, {}) differs", labels[*x], labels[*y]));
    }
    if base_verdict != skew_verdict {
        report.fail(format!("embedding verdicts disagree: {base_verdict} on Λ, {skew_verdict} on ΛG"));
    }
    Ok(report)
}

/// `ΛG → (Λ/I)G`, `r g ↦ π(r) g`.
fn skew_projection(big: &SkewAlgebra, small: &SkewAlgebra, proj: &Matrix) -> Matrix {
    let field = big.base().field();
    let k = big.order();
    let rows = (0..big.base().dim())
        .flat_map(|i| (0..k).map(move |g| (i, g)))
        .map(|(i, g)| small.tensor(proj.row(i), g))
        .collect();
    Matrix::from_rows(field, small.total.dim(), rows)
}

fn kernel_of(m: &Matrix) -> Subspace {
    Subspace::from_vectors(m.field(), m.rows(), m.left_nullspace())
}

/// Compares the vanishing of `Tor^{eΛe}_i(X, eΛ)` with that of `Tor^{e'ΛGe'}_i(X', e'ΛG)`,
/// where `X'` is the linearized (or induced) module carried to `e'ΛGe'`.
pub fn tor_vanishing_transfer(
    action: &GroupAction,
    e: &[Scalar],
    x: &RightModule,
    linearization: Option<&Linearization>,
    i_max: usize,
    instance: &str,
) -> Result<CheckReport> {
    action.require_invertible_order()?;
    action.require_invariant(e)?;
    let base = RecollementData::new(action.algebra(), e)?;
    if **x.algebra() != *base.corner_algebra {
        return Err(Error::AlgebraMismatch);
    }
    let skew = SkewAlgebra::new(action)?;
    let lifted = skew.lift_idempotent(e)?;
    let over = RecollementData::new(&skew.total, &lifted)?;
    let (compat_report, compat) = skew.corner_compat_check(e, instance)?;
    let x_small = match linearization {
        Some(l) => {
            if **l.module.algebra() != *base.corner_algebra {
                return Err(Error::AlgebraMismatch);
            }
            compat.corner_skew.equivariant_module(l)?
        }
        None => compat.corner_skew.induce(x),
    };
    // carry along the inverse of (eΛe)G ≅ e'ΛGe', expressed in the basis of `over.corner`
    let to_big = compat.to_big_corner();
    let realign = restrict_change_of_basis(&compat.big_corner, &over.corner);
    let iso = to_big.mul(&realign);
    let inverse = iso
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("corner map is not invertible".into()))?;
    let x_big = x_small.pull_back(&over.corner_algebra, &inverse);
    x_big.validate()?;

    let lhs = tor_dims(x, &base.left_corner_bimodule(), i_max)?;
    let rhs = tor_dims(&x_big, &over.left_corner_bimodule(), i_max)?;
    let mut report = CheckReport::new("tor-transfer", instance);
    report
        .hypothesis("e fixed by G", true)
        .hypothesis("|G| invertible", true)
        .hypothesis("(eΛe)G ≅ e'ΛGe'", compat_report.passed())
        .measure("dim X", x.dim())
        .measure("Tor^eΛe(X, eΛ)", lhs.clone())
        .measure("Tor^e'ΛGe'(X', e'ΛG)", rhs.clone());
    if !compat_report.passed() {
        report.fail("corner compatibility failed");
    }
    for i in 1..=i_max {
        if (lhs[i] == 0) != (rhs[i] == 0) {
            report.fail(format!("Tor_{i} vanishes on one side only ({} vs {})", lhs[i], rhs[i]));
        }
    }
    Ok(report)
}

/// Coordinates in `to` of the basis of `from`, two presentations of the same corner.
fn restrict_change_of_basis(from: &Corner, to: &Corner) -> Matrix {
    let field = from.embed.field();
    let rows = from
        .embed
        .row_vecs()
        .iter()
        .map(|v| to.coordinates(v).expect("same corner"))
        .collect();
    Matrix::from_rows(field, to.algebra.dim(), rows)
}
