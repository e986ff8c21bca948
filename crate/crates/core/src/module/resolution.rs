use serde::Serialize;

use super::{find_isomorphism, hom_space, Bimodule, RightModule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// Projective dimension relative to an explicit cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PdResult {
    Finite(usize),
    ExceedsBound(usize),
}

impl PdResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, PdResult::Finite(_))
    }
}

impl std::fmt::Display for PdResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdResult::Finite(n) => write!(f, "Finite({n})"),
            PdResult::ExceedsBound(b) => write!(f, "ExceedsBound({b})"),
        }
    }
}

/// A projective-dimension computation with its syzygy trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub result: PdResult,
    /// `dim Ω^i M` for each computed syzygy, starting with `M` itself.
    pub syzygy_dims: Vec<usize>,
    /// `(i, j)` with `i < j` and `Ω^j M ≅ Ω^i M` non-projective: a certificate of infinite dimension.
    pub period: Option<(usize, usize)>,
}

/// Settings for the syzygy periodicity detector.
#[derive(Clone, Copy, Debug)]
pub struct Periodicity {
    pub seed: u64,
    pub max_dim: usize,
    pub trials: usize,
}

impl Default for Periodicity {
    fn default() -> Self {
        Periodicity {
            seed: 0,
            max_dim: 12,
            trials: 16,
        }
    }
}

/// First `n <= bound` with `Ω^n M` projective, else `ExceedsBound(bound)`.
pub fn projective_dimension(m: &RightModule, bound: usize) -> Result<PdResult> {
    Ok(projective_dimension_report(m, bound, None)?.result)
}

/// As [`projective_dimension`], optionally stopping early once a syzygy repeats up to isomorphism.
pub fn projective_dimension_report(m: &RightModule, bound: usize, periodicity: Option<Periodicity>) -> Result<PdReport> {
    let mut current = m.clone();
    let mut history: Vec<RightModule> = Vec::new();
    let mut dims = vec![m.dim()];
    for n in 0..=bound {
        let omega = current.syzygy()?;
        if omega.is_zero() {
            return Ok(PdReport {
                result: PdResult::Finite(n),
                syzygy_dims: dims,
                period: None,
            });
        }
        dims.push(omega.dim());
        history.push(current);
        if let Some(opts) = periodicity {
            if omega.dim() <= opts.max_dim {
                for (i, earlier) in history.iter().enumerate() {
                    if earlier.dim() == omega.dim() && find_isomorphism(earlier, &omega, opts.seed, opts.trials)?.is_found() {
                        return Ok(PdReport {
                            result: PdResult::ExceedsBound(bound),
                            syzygy_dims: dims,
                            period: Some((i, n + 1)),
                        });
                    }
                }
            }
        }
        current = omega;
    }
    Ok(PdReport {
        result: PdResult::ExceedsBound(bound),
        syzygy_dims: dims,
        period: None,
    })
}

/// A prefix `F_n → … → F_0 → M → 0` of a free resolution.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: RightModule,
    /// `g_i` with `F_i = A^{g_i}`.
    pub ranks: Vec<usize>,
    /// `differentials[i - 1][s]` is `d_i(ε_s) ∈ F_{i-1}`.
    pub differentials: Vec<Vec<Vec<Scalar>>>,
    /// `F_0 ↠ M`, row `t·dim A + j` is the image of `ε_t b_j`.
    pub augmentation: Matrix,
    kernels: Vec<Subspace>,
}

impl FreeResolution {
    /// Resolves `m` through `F_length`.
    pub fn new(m: &RightModule, length: usize) -> FreeResolution {
        let a = m.algebra().clone();
        let p = m.presentation();
        let mut ranks = vec![p.generators.len()];
        let mut kernels = vec![p.kernel.clone()];
        let mut differentials = Vec::new();
        for i in 1..=length {
            let prev = &kernels[i - 1];
            let free = RightModule::free(&a, ranks[i - 1]);
            let kmod = free.submodule(prev).expect("kernel is a submodule");
            let kp = kmod.presentation();
            let images: Vec<Vec<Scalar>> = kp
                .generators
                .iter()
                .map(|c| {
                    let mut v = vec![a.field().zero(); prev.ambient_dim()];
                    for (coef, row) in c.iter().zip(prev.basis()) {
                        if !coef.is_zero() {
                            crate::linalg::axpy(&mut v, coef, row);
                        }
                    }
                    v
                })
                .collect();
            ranks.push(images.len());
            kernels.push(kp.kernel.clone());
            differentials.push(images);
        }
        FreeResolution {
            module: m.clone(),
            ranks,
            differentials,
            augmentation: p.cover.clone(),
            kernels,
        }
    }

    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// `d_i` as a linear map `F_i → F_{i-1}` (rows indexed by `ε_s b_j`).
    pub fn differential_matrix(&self, i: usize) -> Matrix {
        let a = self.module.algebra();
        let free = RightModule::free(a, self.ranks[i - 1]);
        let rows = self.differentials[i - 1]
            .iter()
            .flat_map(|img| (0..a.dim()).map(|j| free.act_basis(img, j)).collect::<Vec<_>>())
            .collect();
        Matrix::from_rows(a.field(), self.ranks[i - 1] * a.dim(), rows)
    }

    /// Composites vanish and every stage is exact, by rank.
    pub fn verify(&self) -> bool {
        let n = self.module.algebra().dim();
        let aug = &self.augmentation;
        if aug.rank() != self.module.dim() {
            return false;
        }
        let mut previous = aug.clone();
        for i in 1..=self.len() {
            let d = self.differential_matrix(i);
            if !d.mul(&previous).is_zero() {
                return false;
            }
            // image of d_i equals the kernel of the previous map
            if d.rank() != self.ranks[i - 1] * n - previous.rank() {
                return false;
            }
            previous = d;
        }
        true
    }

    /// Component `t` of `d_i(ε_s)`, an element of `A`.
    fn entry(&self, i: usize, t: usize, s: usize) -> &[Scalar] {
        let n = self.module.algebra().dim();
        &self.differentials[i - 1][s][t * n..(t + 1) * n]
    }

    /// `ker(F_i → F_{i-1})`, or `ker(F_0 → M)` for `i = 0`.
    pub fn kernel(&self, i: usize) -> &Subspace {
        &self.kernels[i]
    }
}

/// `δ^i : Hom(F_i, N) → Hom(F_{i+1}, N)` on `N^{g_i}`; block `(t, s)` is `ρ_N(d_{i+1}(ε_s)_t)`.
fn coboundary(res: &FreeResolution, n: &RightModule, i: usize) -> Matrix {
    let field = n.algebra().field();
    let dn = n.dim();
    let (gi, gj) = (res.ranks[i], res.ranks[i + 1]);
    let mut m = Matrix::zeros(field, gi * dn, gj * dn);
    for t in 0..gi {
        for s in 0..gj {
            let a = res.entry(i + 1, t, s);
            if a.iter().any(|c| !c.is_zero()) {
                m.set_block(t * dn, s * dn, &n.action_of(a));
            }
        }
    }
    m
}

/// `dim Ext^i_A(M, N)` for `0 <= i <= k`, from one resolution prefix.
pub fn ext_dims(m: &RightModule, n: &RightModule, k: usize) -> Result<Vec<usize>> {
    m.check_same_algebra(n)?;
    let mut out = vec![hom_space(m, n)?.len()];
    if k == 0 {
        return Ok(out);
    }
    let res = FreeResolution::new(m, k + 1);
    let ranks: Vec<usize> = (0..=k).map(|i| coboundary(&res, n, i).rank()).collect();
    for i in 1..=k {
        out.push(res.ranks[i] * n.dim() - ranks[i] - ranks[i - 1]);
    }
    debug_assert_eq!(out[0], res.ranks[0] * n.dim() - ranks[0]);
    Ok(out)
}

/// `dim Ext^k_A(M, N)`.
pub fn ext_dim(m: &RightModule, n: &RightModule, k: usize) -> Result<usize> {
    Ok(ext_dims(m, n, k)?[k])
}

/// `∂_i : F_i ⊗ P → F_{i-1} ⊗ P` on `P^{g_i}`; block `(s, t)` is `λ(d_i(ε_s)_t)`.
fn boundary(res: &FreeResolution, p: &Bimodule, i: usize) -> Matrix {
    let field = p.left_algebra().field();
    let dp = p.dim();
    let (gi, gj) = (res.ranks[i], res.ranks[i - 1]);
    let mut m = Matrix::zeros(field, gi * dp, gj * dp);
    for s in 0..gi {
        for t in 0..gj {
            let a = res.entry(i, t, s);
            if a.iter().any(|c| !c.is_zero()) {
                m.set_block(s * dp, t * dp, &p.left_of(a));
            }
        }
    }
    m
}

/// `dim Tor_i^B(X, P)` for `0 <= i <= k`, with `X` a right `B`-module and `P` a `B`-`A`-bimodule.
pub fn tor_dims(x: &RightModule, p: &Bimodule, k: usize) -> Result<Vec<usize>> {
    if !(std::sync::Arc::ptr_eq(x.algebra(), p.left_algebra()) || **x.algebra() == **p.left_algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let res = FreeResolution::new(x, k + 1);
    let dp = p.dim();
    let ranks: Vec<usize> = (1..=k + 1).map(|i| boundary(&res, p, i).rank()).collect();
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let outgoing = if i == 0 { 0 } else { ranks[i - 1] };
        out.push(res.ranks[i] * dp - outgoing - ranks[i]);
    }
    Ok(out)
}

/// `dim Tor_k^B(X, P)`.
pub fn tor_dim(x: &RightModule, p: &Bimodule, k: usize) -> Result<usize> {
    Ok(tor_dims(x, p, k)?[k])
}

/// `dim X ⊗_B P` as the quotient of `X ⊗_k P` by the span of `xb ⊗ p − x ⊗ bp`.
pub fn tor_zero_by_coequalizer(x: &RightModule, p: &Bimodule) -> Result<usize> {
    if **x.algebra() != **p.left_algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let field = x.algebra().field();
    let (dx, dp) = (x.dim(), p.dim());
    let mut rows = Vec::new();
    for b in 0..x.algebra().dim() {
        let rx = x.action(b);
        let lp = p.left_action(b);
        for i in 0..dx {
            for j in 0..dp {
                let mut v = vec![field.zero(); dx * dp];
                for (u, c) in rx.row(i).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[u * dp + j] = &v[u * dp + j] + c;
                }
                for (w, c) in lp.row(j).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[i * dp + w] = &v[i * dp + w] - c;
                }
                rows.push(v);
            }
        }
    }
    Ok(dx * dp - Matrix::from_rows(field, dx * dp, rows).rank())
}
