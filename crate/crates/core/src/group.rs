//! Finite groups acting on an algebra by automorphisms.
//!
//! `σ_g` is stored as the matrix `Σ_g` whose row `i` is the image of `b_i`, so `a^g = a·Σ_g`.
//! The table records `Σ_{gh} = Σ_g Σ_h`, i.e. the right action `(a^g)^h = a^{gh}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Corner, Quotient};
use crate::error::{AutomorphismWitness, Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::module::RightModule;

pub const DEFAULT_CLOSURE_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    algebra: Arc<Algebra>,
    elements: Vec<Matrix>,
    identity: usize,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

/// Checks that `sigma` is an algebra automorphism of `a`.
pub fn check_automorphism(a: &Algebra, sigma: &Matrix) -> std::result::Result<(), AutomorphismWitness> {
    let n = a.dim();
    if sigma.rows() != n || sigma.cols() != n || sigma.rank() != n {
        return Err(AutomorphismWitness::Singular);
    }
    if sigma.apply_row(a.unit()) != a.unit() {
        return Err(AutomorphismWitness::Unit);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = sigma.apply_row(&a.basis_product(i, j));
            let rhs = a.mul(sigma.row(i), sigma.row(j));
            if lhs != rhs {
                return Err(AutomorphismWitness::Product(i, j));
            }
        }
    }
    Ok(())
}

fn validated(a: &Algebra, matrices: &[Matrix]) -> Result<()> {
    for (g, m) in matrices.iter().enumerate() {
        check_automorphism(a, m).map_err(|witness| Error::NotAutomorphism { element: g, witness })?;
    }
    Ok(())
}

impl GroupAction {
    /// The group generated by `matrices`, closed under products up to [`DEFAULT_CLOSURE_CAP`] elements.
    pub fn new(algebra: Arc<Algebra>, matrices: Vec<Matrix>, labels: Vec<String>) -> Result<GroupAction> {
        GroupAction::generated(algebra, matrices, labels, DEFAULT_CLOSURE_CAP)
    }

    pub fn generated(algebra: Arc<Algebra>, matrices: Vec<Matrix>, labels: Vec<String>, cap: usize) -> Result<GroupAction> {
        validated(&algebra, &matrices)?;
        let field = algebra.field();
        let n = algebra.dim();
        let mut labels: Vec<String> = (0..matrices.len())
            .map(|g| labels.get(g).cloned().unwrap_or_else(|| format!("g{g}")))
            .collect();
        let mut elements: Vec<Matrix> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<Vec<Scalar>, usize> = HashMap::new();
        let mut push = |m: Matrix, name: String, elements: &mut Vec<Matrix>, names: &mut Vec<String>| -> Option<usize> {
            if index.contains_key(m.entries()) {
                return None;
            }
            index.insert(m.entries().to_vec(), elements.len());
            elements.push(m);
            names.push(name);
            Some(elements.len() - 1)
        };
        push(Matrix::identity(field, n), "e".into(), &mut elements, &mut names);
        if let Some(pos) = matrices.iter().position(Matrix::is_identity) {
            names[0] = labels[pos].clone();
        }
        for (m, l) in matrices.iter().zip(labels.drain(..)) {
            push(m.clone(), l, &mut elements, &mut names);
        }
        let generators: Vec<usize> = (0..elements.len()).collect();
        let mut frontier: Vec<usize> = generators.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for &s in &generators {
                    let prod = elements[x].mul(&elements[s]);
                    let name = format!("{}*{}", names[x], names[s]);
                    if let Some(idx) = push(prod, name, &mut elements, &mut names) {
                        if elements.len() > cap {
                            return Err(Error::ClosureCapExceeded { cap });
                        }
                        next.push(idx);
                    }
                }
            }
            frontier = next;
        }
        let lookup: HashMap<&[Scalar], usize> = elements.iter().enumerate().map(|(i, m)| (m.entries(), i)).collect();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| lookup[x.mul(y).entries()]).collect())
            .collect();
        GroupAction::assemble(algebra, elements, table, names)
    }

    /// `matrices` must already be closed under products.
    pub fn closed(algebra: Arc<Algebra>, matrices: Vec<Matrix>, labels: Vec<String>) -> Result<GroupAction> {
        validated(&algebra, &matrices)?;
        let lookup: HashMap<&[Scalar], usize> = matrices.iter().enumerate().map(|(i, m)| (m.entries(), i)).collect();
        let mut table = Vec::with_capacity(matrices.len());
        for x in &matrices {
            let mut row = Vec::with_capacity(matrices.len());
            for y in &matrices {
                row.push(*lookup.get(x.mul(y).entries()).ok_or(Error::NotClosed)?);
            }
            table.push(row);
        }
        let labels = (0..matrices.len())
            .map(|g| labels.get(g).cloned().unwrap_or_else(|| format!("g{g}")))
            .collect();
        GroupAction::assemble(algebra, matrices, table, labels)
    }

    /// An action given by an explicit multiplication table `table[g][h] = gh`, which may be non-faithful.
    pub fn with_table(algebra: Arc<Algebra>, matrices: Vec<Matrix>, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<GroupAction> {
        validated(&algebra, &matrices)?;
        let k = matrices.len();
        if table.len() != k || table.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return Err(Error::InvalidGroupTable(format!("table must be {k}x{k} with entries below {k}")));
        }
        for g in 0..k {
            for h in 0..k {
                if matrices[g].mul(&matrices[h]) != matrices[table[g][h]] {
                    return Err(Error::NotClosed);
                }
            }
        }
        let labels = (0..k).map(|g| labels.get(g).cloned().unwrap_or_else(|| format!("g{g}"))).collect();
        GroupAction::assemble(algebra, matrices, table, labels)
    }

    /// The cyclic group of the given order acting trivially.
    pub fn trivial(algebra: Arc<Algebra>, order: usize) -> GroupAction {
        assert!(order >= 1);
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let table = (0..order).map(|g| (0..order).map(|h| (g + h) % order).collect()).collect();
        let labels = (0..order).map(|g| if g == 0 { "e".into() } else { format!("c^{g}") }).collect();
        GroupAction::assemble(algebra, vec![id; order], table, labels).expect("cyclic table is a group")
    }

    fn assemble(algebra: Arc<Algebra>, elements: Vec<Matrix>, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<GroupAction> {
        let k = elements.len();
        if k == 0 {
            return Err(Error::InvalidGroupTable("empty group".into()));
        }
        let identity = (0..k)
            .find(|&e| (0..k).all(|h| table[e][h] == h && table[h][e] == h))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        if !elements[identity].is_identity() {
            return Err(Error::InvalidGroupTable("identity element does not act as the identity".into()));
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(k);
        for (g, row) in table.iter().enumerate() {
            let inv = (0..k)
                .find(|&h| row[h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("element {g} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(GroupAction {
            algebra,
            elements,
            identity,
            table,
            inverses,
            labels,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `gh`.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.elements[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.iter().all(Matrix::is_identity)
    }

    /// `a^g`.
    pub fn apply(&self, g: usize, a: &[Scalar]) -> Vec<Scalar> {
        self.elements[g].apply_row(a)
    }

    /// Whether `|G|` is nonzero in the field.
    pub fn order_invertible(&self) -> bool {
        !self.algebra.field().from_usize(self.order()).is_zero()
    }

    pub fn require_invertible_order(&self) -> Result<()> {
        if self.order_invertible() {
            Ok(())
        } else {
            Err(Error::OrderNotInvertible {
                order: self.order(),
                p: self.algebra.field().characteristic(),
            })
        }
    }

    pub fn is_invariant_idempotent(&self, e: &[Scalar]) -> Result<bool> {
        if e.len() != self.algebra.dim() || !self.algebra.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        Ok((0..self.order()).all(|g| self.apply(g, e) == e))
    }

    /// Errors with the first element moving `e`.
    pub fn require_invariant(&self, e: &[Scalar]) -> Result<()> {
        if !self.is_invariant_idempotent(e)? {
            let element = (0..self.order()).find(|&g| self.apply(g, e) != e).unwrap();
            return Err(Error::NotInvariant { element });
        }
        Ok(())
    }

    /// `A^G`.
    pub fn fixed_subalgebra(&self) -> Subspace {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let id = Matrix::identity(field, n);
        let mut stacked = Matrix::zeros(field, n, n * self.order());
        for (g, m) in self.elements.iter().enumerate() {
            stacked.set_block(0, g * n, &m.sub(&id));
        }
        Subspace::from_vectors(field, n, stacked.left_nullspace())
    }

    /// `M^g` with `ρ^g(a) = ρ(a^{g^{-1}})`.
    pub fn twist_module(&self, m: &RightModule, g: usize) -> RightModule {
        let inv = &self.elements[self.inverses[g]];
        m.pull_back(&self.algebra, inv)
    }

    /// The action restricted to a corner `eAe` with `e` fixed by every element.
    pub fn restrict_to_corner(&self, corner: &Corner, corner_algebra: &Arc<Algebra>) -> Result<GroupAction> {
        self.require_invariant(&corner.idempotent)?;
        let field = self.algebra.field();
        let d = corner.algebra.dim();
        let span = Subspace::from_vectors(field, self.algebra.dim(), corner.embed.row_vecs());
        let elements = self
            .elements
            .iter()
            .map(|m| {
                let rows = (0..d)
                    .map(|a| {
                        span.coordinates(&m.apply_row(corner.embed.row(a)))
                            .expect("a fixed idempotent has a stable corner")
                    })
                    .collect();
                Matrix::from_rows(field, d, rows)
            })
            .collect();
        GroupAction::with_table(corner_algebra.clone(), elements, self.table.clone(), self.labels.clone())
    }

    /// The induced action on `A/I` for a `G`-stable ideal `I`.
    pub fn descend_to_quotient(&self, quotient: &Quotient, quotient_algebra: &Arc<Algebra>) -> Result<GroupAction> {
        for (g, m) in self.elements.iter().enumerate() {
            if !quotient.ideal.basis().iter().all(|v| quotient.ideal.contains(&m.apply_row(v))) {
                return Err(Error::NotInvariant { element: g });
            }
        }
        let field = self.algebra.field();
        let d = quotient.algebra.dim();
        let elements = self
            .elements
            .iter()
            .map(|m| Matrix::from_rows(field, d, quotient.lift.iter().map(|&i| quotient.project(m.row(i))).collect()))
            .collect();
        GroupAction::with_table(quotient_algebra.clone(), elements, self.table.clone(), self.labels.clone())
    }
}
