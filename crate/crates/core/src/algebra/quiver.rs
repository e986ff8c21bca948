use std::collections::HashMap;

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, zero_vec, Field, Scalar, Subspace};

/// A linear combination of paths, each path a sequence of arrow indices composed left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

/// A bound quiver: `kQ / (relations + paths of length >= bound)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

/// A path: a vertex idempotent when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathLabel {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathLabel {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl std::fmt::Display for PathLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let names: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", names.join("*"))
        }
    }
}

/// A path algebra with its basis paths.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub algebra: Algebra,
    /// `labels[i]` is the path represented by basis vector `i`.
    pub labels: Vec<PathLabel>,
    pub quiver: QuiverPresentation,
}

impl PathAlgebra {
    /// The idempotent `e_v` as an element.
    pub fn vertex(&self, v: usize) -> Vec<Scalar> {
        self.vertex_sum(&[v])
    }

    /// `Σ_{v ∈ vs} e_v`.
    pub fn vertex_sum(&self, vs: &[usize]) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = zero_vec(field, self.algebra.dim());
        for (i, label) in self.labels.iter().enumerate() {
            if label.is_empty() && vs.contains(&label.source) {
                out[i] = field.one();
            }
        }
        out
    }

    /// Index of the basis path equal to `arrows`, if it survives in the quotient basis.
    pub fn path_index(&self, arrows: &[usize]) -> Option<usize> {
        self.labels.iter().position(|l| !l.is_empty() && l.arrows == arrows)
    }

    /// Dimension vector of a right module: `dim M e_v` for each vertex.
    pub fn dimension_vector(&self, module: &crate::module::RightModule) -> Vec<usize> {
        (0..self.quiver.vertices)
            .map(|v| module.action_of(&self.vertex(v)).rank())
            .collect()
    }
}

/// Builds `kQ/I` with basis the paths that are not leading terms of the truncated relation ideal.
pub fn path_algebra(field: Field, q: &QuiverPresentation) -> Result<PathAlgebra> {
    if q.bound < 2 {
        return Err(Error::BoundTooSmall { bound: q.bound });
    }
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        if s >= q.vertices || t >= q.vertices {
            return Err(Error::BadArrow { arrow: a });
        }
    }
    for (r, rel) in q.relations.iter().enumerate() {
        let mut ends = None;
        for (_, path) in &rel.terms {
            if path.len() < 2 {
                return Err(Error::RelationTooShort { relation: r });
            }
            if path.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::BadArrow {
                    arrow: *path.iter().find(|&&a| a >= q.arrows.len()).unwrap(),
                });
            }
            if path.windows(2).any(|w| q.arrows[w[0]].1 != q.arrows[w[1]].0) {
                return Err(Error::RelationNotParallel { relation: r });
            }
            let st = (q.arrows[path[0]].0, q.arrows[*path.last().unwrap()].1);
            match ends {
                None => ends = Some(st),
                Some(prev) if prev != st => return Err(Error::RelationNotParallel { relation: r }),
                _ => {}
            }
        }
    }

    // all paths of length < bound, ordered by length
    let mut paths: Vec<PathLabel> = (0..q.vertices)
        .map(|v| PathLabel {
            source: v,
            target: v,
            arrows: Vec::new(),
        })
        .collect();
    let mut frontier: Vec<PathLabel> = paths.clone();
    for _ in 1..q.bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (a, &(s, t)) in q.arrows.iter().enumerate() {
                if s == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(PathLabel {
                        source: p.source,
                        target: t,
                        arrows,
                    });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let n = paths.len();
    let index: HashMap<(usize, Vec<usize>), usize> = paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
    // column c holds path n - 1 - c, so echelon pivots fall on the longest paths
    let col = |i: usize| n - 1 - i;

    let relation_vec = |rel: &Relation| {
        let mut v = zero_vec(field, n);
        for (c, path) in &rel.terms {
            if let Some(&i) = index.get(&(q.arrows[path[0]].0, path.clone())) {
                v[col(i)] = &v[col(i)] + c;
            }
        }
        v
    };

    let mut ideal = Subspace::zero(field, n);
    let mut queue = Vec::new();
    for rel in &q.relations {
        let v = relation_vec(rel);
        if ideal.insert(&v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            let mut left = zero_vec(field, n);
            let mut right = zero_vec(field, n);
            for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let p = &paths[col(c)];
                if p.source == t {
                    let mut arrows = vec![a];
                    arrows.extend(p.arrows.iter().copied());
                    if let Some(&j) = index.get(&(s, arrows)) {
                        left[col(j)] = &left[col(j)] + x;
                    }
                }
                if p.target == s {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    if let Some(&j) = index.get(&(p.source, arrows)) {
                        right[col(j)] = &right[col(j)] + x;
                    }
                }
            }
            for w in [left, right] {
                if ideal.insert(&w) {
                    queue.push(w);
                }
            }
        }
    }

    let mut kept: Vec<usize> = ideal.complement_indices().into_iter().map(col).collect();
    kept.sort_by_key(|&i| (paths[i].len(), i));
    let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(b, &i)| (col(i), b)).collect();
    let d = kept.len();
    let project = |i: usize| -> Vec<Scalar> {
        let reduced = ideal.reduce(&unit_vec(field, n, col(i)));
        let mut out = zero_vec(field, d);
        for (c, x) in reduced.into_iter().enumerate() {
            if !x.is_zero() {
                out[position[&c]] = x;
            }
        }
        out
    };

    let mut products = Vec::with_capacity(d * d);
    for &i in &kept {
        for &j in &kept {
            let (p, r) = (&paths[i], &paths[j]);
            let v = if p.target != r.source {
                zero_vec(field, d)
            } else {
                let mut arrows = p.arrows.clone();
                arrows.extend(r.arrows.iter().copied());
                match index.get(&(p.source, arrows)) {
                    Some(&k) => project(k),
                    None => zero_vec(field, d),
                }
            };
            products.push(v);
        }
    }
    let mut unit = zero_vec(field, d);
    for (b, &i) in kept.iter().enumerate() {
        if paths[i].is_empty() {
            unit[b] = field.one();
        }
    }
    let algebra = Algebra::from_dense_unchecked(field, d, products, unit);
    algebra.validate()?;
    Ok(PathAlgebra {
        algebra,
        labels: kept.iter().map(|&i| paths[i].clone()).collect(),
        quiver: q.clone(),
    })
}
