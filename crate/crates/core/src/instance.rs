//! JSON instance files: parsing, structural checks and construction of the algebraic data.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{path_algebra, Algebra, PathAlgebra, QuiverPresentation, Relation};
use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{Bimodule, RightModule};
use crate::recollement::RecollementData;
use crate::skew::Linearization;
use crate::triangular::TriangularAlgebra;

/// A scalar written either as an integer or as a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn value(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(s) => field.parse(s),
        }
    }
}

type MatrixText = Vec<Vec<ScalarText>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationals: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub dim: usize,
    /// `[i, j, k, c]` meaning `b_i b_j` has coefficient `c` on `b_k`.
    pub constants: Vec<(usize, usize, usize, ScalarText)>,
    pub unit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<(ScalarText, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdempotentSpec {
    Vector(Vec<ScalarText>),
    Vertices { vertices: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub matrices: Vec<MatrixText>,
    pub labels: Vec<String>,
    /// A full multiplication table; the matrices then list every element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    #[default]
    Algebra,
    Corner,
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    #[serde(default)]
    pub over: Over,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<MatrixText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<bool>,
    /// `e_v Λ` for a quiver vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<usize>,
    /// The top of `e_v Λ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearizationSpec {
    pub module: String,
    /// Maps on some group elements, by label; the rest follow from the cocycle rule.
    pub maps: BTreeMap<String, MatrixText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub dim: usize,
    pub left: Vec<MatrixText>,
    pub right: Vec<MatrixText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularSpec {
    #[serde(rename = "R")]
    pub r: AlgebraSpec,
    #[serde(rename = "S")]
    pub s: AlgebraSpec,
    #[serde(rename = "N")]
    pub n: BimoduleSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    pub pd_bound: usize,
    pub ext_k: usize,
    pub tor_i: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            pd_bound: 10,
            ext_k: 4,
            tor_i: 4,
        }
    }
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<IdempotentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
    #[serde(default)]
    pub linearizations: Vec<LinearizationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularSpec>,
    #[serde(default)]
    pub bounds: Bounds,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Reads and structurally checks an instance file. The instance name defaults to the file stem.
pub fn load_spec(path: impl AsRef<Path>) -> Result<InstanceSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut spec = parse_spec(&text)?;
    if spec.name.is_none() {
        spec.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(spec)
}

pub fn parse_spec(text: &str) -> Result<InstanceSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: InstanceSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => schema(&path, inner.to_string()),
            _ => Error::Parse {
                line: inner.line(),
                message: inner.to_string(),
            },
        }
    })?;
    spec.check_structure()?;
    Ok(spec)
}

impl InstanceSpec {
    fn check_structure(&self) -> Result<()> {
        match (&self.field.rationals, &self.field.prime) {
            (Some(true), None) | (None, Some(_)) => {}
            _ => return Err(schema("field", "give exactly one of \"rationals\": true or \"prime\": p")),
        }
        match (&self.algebra, &self.triangular) {
            (Some(a), None) => check_algebra_spec(a, "algebra")?,
            (None, Some(t)) => {
                check_algebra_spec(&t.r, "triangular.R")?;
                check_algebra_spec(&t.s, "triangular.S")?;
            }
            (Some(_), Some(_)) => return Err(schema("algebra", "give either \"algebra\" or \"triangular\", not both")),
            (None, None) => return Err(schema("algebra", "missing algebra")),
        }
        if let Some(IdempotentSpec::Vertices { .. }) = &self.idempotent {
            if self.algebra.as_ref().and_then(|a| a.quiver.as_ref()).is_none() {
                return Err(schema("idempotent", "vertex subsets need a quiver presentation"));
            }
        }
        if let Some(g) = &self.group {
            if g.labels.len() != g.matrices.len() {
                return Err(schema("group.labels", "one label per matrix is required"));
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for (i, m) in self.modules.iter().enumerate() {
            let path = format!("modules[{i}]");
            if !names.insert(m.name.as_str()) {
                return Err(schema(&path, format!("duplicate module name {:?}", m.name)));
            }
            let forms = [
                m.actions.is_some(),
                m.regular == Some(true),
                m.top == Some(true),
                m.projective.is_some(),
                m.simple.is_some(),
            ];
            if forms.iter().filter(|&&b| b).count() != 1 {
                return Err(schema(&path, "give exactly one of actions, regular, top, projective, simple"));
            }
            if (m.projective.is_some() || m.simple.is_some()) && m.over != Over::Algebra {
                return Err(schema(&path, "vertex modules live over the algebra itself"));
            }
            if m.over != Over::Algebra && self.idempotent.is_none() && self.triangular.is_none() {
                return Err(schema(&path, "corner and quotient modules need an idempotent"));
            }
        }
        for (i, l) in self.linearizations.iter().enumerate() {
            if !names.contains(l.module.as_str()) {
                return Err(schema(
                    &format!("linearizations[{i}].module"),
                    format!("unknown module {:?}", l.module),
                ));
            }
            if self.group.is_none() {
                return Err(schema(&format!("linearizations[{i}]"), "linearizations need a group"));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field> {
        match self.field.prime {
            Some(p) => Field::prime(p),
            None => Ok(Field::Rationals),
        }
    }

    /// Builds and validates everything the file describes.
    pub fn build(&self) -> Result<Instance> {
        let field = self.field()?;
        let name = self.name.clone().unwrap_or_else(|| "instance".into());
        let (algebra, quiver, triangular) = match (&self.algebra, &self.triangular) {
            (Some(a), _) => {
                let (alg, quiver) = build_algebra(field, a, "algebra")?;
                (Arc::new(alg), quiver, None)
            }
            (None, Some(t)) => {
                let tri = build_triangular(field, t)?;
                (tri.total.clone(), None, Some(tri))
            }
            (None, None) => unreachable!("checked when parsing"),
        };
        let idempotent = match (&self.idempotent, &triangular) {
            (Some(IdempotentSpec::Vector(v)), _) => {
                if v.len() != algebra.dim() {
                    return Err(schema("idempotent", format!("expected {} coordinates", algebra.dim())));
                }
                Some(v.iter().map(|c| c.value(field)).collect::<Result<Vec<_>>>()?)
            }
            (Some(IdempotentSpec::Vertices { vertices }), _) => {
                let q = quiver.as_ref().expect("checked when parsing");
                if let Some(v) = vertices.iter().find(|&&v| v >= q.quiver.vertices) {
                    return Err(schema("idempotent.vertices", format!("no vertex {v}")));
                }
                Some(q.vertex_sum(vertices))
            }
            (None, Some(t)) => Some(t.corner_e.clone()),
            (None, None) => None,
        };
        if let Some(e) = &idempotent {
            if !algebra.is_idempotent(e) {
                return Err(Error::NotIdempotent);
            }
        }
        let group = match &self.group {
            Some(g) => Some(build_group(&algebra, g)?),
            None => None,
        };
        if let (Some(g), Some(e)) = (&group, &idempotent) {
            g.require_invariant(e)?;
        }
        let recollement = match &idempotent {
            Some(e) => Some(RecollementData::new(&algebra, e)?),
            None => None,
        };
        let mut modules = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let over = match m.over {
                Over::Algebra => algebra.clone(),
                Over::Corner => recollement.as_ref().expect("checked when parsing").corner_algebra.clone(),
                Over::Quotient => recollement.as_ref().expect("checked when parsing").quotient_algebra.clone(),
            };
            let module = build_module(&over, quiver.as_ref(), m, &format!("modules[{i}]"))?;
            modules.push(NamedModule {
                name: m.name.clone(),
                over: m.over,
                module,
                linearization: None,
            });
        }
        for (i, l) in self.linearizations.iter().enumerate() {
            let path = format!("linearizations[{i}]");
            let g = group.as_ref().expect("checked when parsing");
            let slot = modules.iter().position(|m| m.name == l.module).expect("checked when parsing");
            let target = &modules[slot];
            let rec = recollement.as_ref();
            let action = match target.over {
                Over::Algebra => g.clone(),
                Over::Corner => {
                    let r = rec.expect("checked when parsing");
                    g.restrict_to_corner(&r.corner, &r.corner_algebra)?
                }
                Over::Quotient => {
                    let r = rec.expect("checked when parsing");
                    g.descend_to_quotient(&r.quotient, &r.quotient_algebra)?
                }
            };
            let mut given = Vec::new();
            for (label, rows) in &l.maps {
                let element = action
                    .labels()
                    .iter()
                    .position(|x| x == label)
                    .ok_or_else(|| schema(&format!("{path}.maps"), format!("unknown group element {label:?}")))?;
                given.push((
                    element,
                    build_matrix(field, rows, target.module.dim(), &format!("{path}.maps.{label}"))?,
                ));
            }
            let lin = Linearization::from_generators(&action, target.module.clone(), given)?;
            modules[slot].linearization = Some(lin);
        }
        Ok(Instance {
            name,
            field,
            algebra,
            quiver,
            triangular,
            idempotent,
            group,
            recollement,
            modules,
            bounds: self.bounds,
        })
    }
}

fn check_algebra_spec(a: &AlgebraSpec, path: &str) -> Result<()> {
    match (&a.structure, &a.quiver) {
        (Some(_), None) | (None, Some(_)) => Ok(()),
        _ => Err(schema(path, "give exactly one of \"structure\" or \"quiver\"")),
    }
}

fn build_algebra(field: Field, a: &AlgebraSpec, path: &str) -> Result<(Algebra, Option<PathAlgebra>)> {
    if let Some(s) = &a.structure {
        let mut entries = Vec::with_capacity(s.constants.len());
        for (n, (i, j, k, c)) in s.constants.iter().enumerate() {
            if *i >= s.dim || *j >= s.dim || *k >= s.dim {
                return Err(schema(&format!("{path}.structure.constants[{n}]"), "index out of range"));
            }
            entries.push((*i, *j, *k, c.value(field)?));
        }
        if s.unit.len() != s.dim {
            return Err(schema(&format!("{path}.structure.unit"), format!("expected {} coordinates", s.dim)));
        }
        let unit = s.unit.iter().map(|c| c.value(field)).collect::<Result<Vec<_>>>()?;
        return Ok((Algebra::from_entries(field, s.dim, entries, unit)?, None));
    }
    let q = a.quiver.as_ref().expect("checked when parsing");
    let mut relations = Vec::with_capacity(q.relations.len());
    for r in &q.relations {
        let terms = r
            .terms
            .iter()
            .map(|(c, p)| Ok((c.value(field)?, p.clone())))
            .collect::<Result<Vec<_>>>()?;
        relations.push(Relation { terms });
    }
    let pres = QuiverPresentation {
        vertices: q.vertices,
        arrows: q.arrows.clone(),
        relations,
        bound: q.bound,
    };
    let p = path_algebra(field, &pres)?;
    Ok((p.algebra.clone(), Some(p)))
}

fn build_matrix(field: Field, rows: &MatrixText, cols: usize, path: &str) -> Result<Matrix> {
    if rows.len() != cols || rows.iter().any(|r| r.len() != cols) {
        return Err(schema(path, format!("expected a {cols}x{cols} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|c| c.value(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, cols, rows))
}

fn build_group(a: &Arc<Algebra>, g: &GroupSpec) -> Result<GroupAction> {
    let field = a.field();
    let matrices = g
        .matrices
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(field, m, a.dim(), &format!("group.matrices[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    match &g.table {
        Some(t) => GroupAction::with_table(a.clone(), matrices, t.clone(), g.labels.clone()),
        None => GroupAction::new(a.clone(), matrices, g.labels.clone()),
    }
}

fn build_triangular(field: Field, t: &TriangularSpec) -> Result<TriangularAlgebra> {
    let r = Arc::new(build_algebra(field, &t.r, "triangular.R")?.0);
    let s = Arc::new(build_algebra(field, &t.s, "triangular.S")?.0);
    let n = &t.n;
    if n.left.len() != s.dim() || n.right.len() != r.dim() {
        return Err(schema(
            "triangular.N",
            "one action matrix per basis element of S (left) and R (right)",
        ));
    }
    let left = n
        .left
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(field, m, n.dim, &format!("triangular.N.left[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let right = n
        .right
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(field, m, n.dim, &format!("triangular.N.right[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::new(s, r, left, right)?;
    TriangularAlgebra::new(bimodule)
}

fn build_module(a: &Arc<Algebra>, quiver: Option<&PathAlgebra>, m: &ModuleSpec, path: &str) -> Result<RightModule> {
    let vertex = |v: usize| -> Result<Vec<Scalar>> {
        let q = quiver.ok_or_else(|| schema(path, "vertex modules need a quiver presentation"))?;
        if v >= q.quiver.vertices {
            return Err(schema(path, format!("no vertex {v}")));
        }
        Ok(q.vertex(v))
    };
    let regular = RightModule::regular(a);
    if let Some(actions) = &m.actions {
        if actions.len() != a.dim() {
            return Err(schema(&format!("{path}.actions"), format!("expected {} matrices", a.dim())));
        }
        let dim = actions.first().map_or(0, Vec::len);
        let mats = actions
            .iter()
            .enumerate()
            .map(|(i, x)| build_matrix(a.field(), x, dim, &format!("{path}.actions[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        return RightModule::new(a.clone(), mats);
    }
    if m.regular == Some(true) {
        return Ok(regular);
    }
    if m.top == Some(true) {
        return regular.top();
    }
    if let Some(v) = m.projective {
        return regular.submodule(&regular.submodule_generated(&[vertex(v)?]));
    }
    let v = m.simple.expect("checked when parsing");
    regular.submodule(&regular.submodule_generated(&[vertex(v)?]))?.top()
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub over: Over,
    pub module: RightModule,
    pub linearization: Option<Linearization>,
}

/// A fully constructed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub field: Field,
    pub algebra: Arc<Algebra>,
    pub quiver: Option<PathAlgebra>,
    pub triangular: Option<TriangularAlgebra>,
    pub idempotent: Option<Vec<Scalar>>,
    pub group: Option<GroupAction>,
    pub recollement: Option<RecollementData>,
    pub modules: Vec<NamedModule>,
    pub bounds: Bounds,
}

impl Instance {
    pub fn modules_over(&self, over: Over) -> impl Iterator<Item = &NamedModule> {
        self.modules.iter().filter(move |m| m.over == over)
    }

    /// The group, or the trivial group of order one.
    pub fn group_or_trivial(&self) -> GroupAction {
        self.group.clone().unwrap_or_else(|| GroupAction::trivial(self.algebra.clone(), 1))
    }
}
