//! Acceptance suite: one PASS/FAIL line per criterion over the bundled fixtures.
//!
//! Runs as a plain binary (`harness = false`) and exits non-zero when any criterion fails.

use std::path::{Path, PathBuf};
use std::time::Instant;

use skewrec::cli::{main_with, run_command, Command, Options};
use skewrec::instance::{load_spec, AlgebraSpec, Instance, Over};
use skewrec::linalg::{Field, Matrix};
use skewrec::module::{ext_dim, hom_space, projective_dimension};
use skewrec::recollement::{equivariant_cross_check, gldim_cross_check, homological_embedding_check, tor_vanishing_transfer};
use skewrec::report::CheckReport;
use skewrec::skew::{induction_check, skew_algebra_check, SkewAlgebra};
use skewrec::triangular::peirce_triangular_check;
use skewrec::{Algebra, RightModule};

const BOUND: usize = 10;
const EXT_K: usize = 4;
const TOR_I: usize = 4;
const SEED: u64 = 0;
const RUNTIME_BUDGET_SECS: f64 = 60.0;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

fn corpus() -> Vec<Instance> {
    json_files(&fixtures())
        .iter()
        .map(|p| {
            load_spec(p)
                .and_then(|s| s.build())
                .unwrap_or_else(|e| panic!("{}: {e}", p.display()))
        })
        .collect()
}

fn find<'a>(corpus: &'a [Instance], name: &str) -> &'a Instance {
    corpus
        .iter()
        .find(|i| i.name == name)
        .unwrap_or_else(|| panic!("missing fixture {name}"))
}

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn check(&mut self, r: &CheckReport) {
        let (name, inst) = (&r.name, &r.instance);
        let w = r.witnesses.join("; ");
        self.require(r.passed(), || format!("{inst}: {name} is {} ({w})", r.verdict));
    }
}

fn invertible_group(i: &Instance) -> Option<&skewrec::group::GroupAction> {
    i.group.as_ref().filter(|g| g.order_invertible())
}

fn measurement<'a>(r: &'a CheckReport, key: &str) -> &'a serde_json::Value {
    r.measurements
        .get(key)
        .unwrap_or_else(|| panic!("{}: no measurement {key:?}", r.name))
}

fn criterion_1(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    for i in corpus {
        let r = run_command(Command::Validate, i, &Options::default()).unwrap();
        r.checks.iter().for_each(|c| o.check(c));
    }
    let families: std::collections::BTreeSet<&str> = corpus.iter().map(|i| i.name.rsplit_once('-').unwrap().0).collect();
    o.require(families.len() >= 8, || format!("only {} algebra families", families.len()));
    for fam in &families {
        let fields: Vec<Field> = corpus
            .iter()
            .filter(|i| i.name.rsplit_once('-').unwrap().0 == *fam)
            .map(|i| i.field)
            .collect();
        let has_q = fields.contains(&Field::Rationals);
        let has_p = fields
            .iter()
            .any(|f| matches!(f, Field::Prime(p) if *p as usize > corpus.iter().map(|i| i.algebra.dim()).max().unwrap()));
        o.require(has_q && has_p, || format!("{fam}: needs both ℚ and F_p with p > dim"));
    }
    let negatives = json_files(&fixtures().join("negative"));
    let expected = [
        ("broken-associativity", "triple (1, 1, 1)"),
        ("non-automorphism", "group element 0"),
        ("non-invariant-idempotent", "group element 1"),
    ];
    for (stem, witness) in expected {
        let path = negatives.iter().find(|p| p.file_stem().unwrap() == stem);
        let Some(path) = path else {
            o.require(false, || format!("negative fixture {stem} missing"));
            continue;
        };
        match load_spec(path).and_then(|s| s.build()) {
            Ok(_) => o.require(false, || format!("{stem} was accepted")),
            Err(e) => o.require(e.to_string().contains(witness), || {
                format!("{stem}: witness {witness:?} not in {e}")
            }),
        }
    }
    o.note(format!(
        "{} instances, {} families, {} negatives",
        corpus.len(),
        families.len(),
        negatives.len()
    ));
    o
}

/// Group algebra `kG` from the multiplication table alone.
fn group_algebra(field: Field, table: &[Vec<usize>], unit: usize) -> Algebra {
    let n = table.len();
    let entries = (0..n).flat_map(|g| (0..n).map(move |h| (g, h, table[g][h], field.one())));
    let mut u = vec![field.zero(); n];
    u[unit] = field.one();
    Algebra::from_entries(field, n, entries, u).unwrap()
}

fn criterion_2(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let Some(g) = invertible_group(i) else { continue };
        seen += 1;
        let (r, skew) = skew_algebra_check(g, &i.name).unwrap();
        o.check(&r);
        let (n, d) = (g.order(), i.algebra.dim());
        o.require(skew.total.dim() == n * d, || {
            format!("{}: dim ΛG = {} != {n}·{d}", i.name, skew.total.dim())
        });
        o.require(skew.total.validate().is_ok(), || format!("{}: ΛG not associative", i.name));
        let rad = i.algebra.radical().unwrap().dim();
        let rad_g = skew.total.radical().unwrap().dim();
        o.require(rad_g == n * rad, || format!("{}: dim rad ΛG = {rad_g} != {n}·{rad}", i.name));
        if g.is_trivial() {
            let ok = (0..d).all(|a| {
                (0..n).all(|h| {
                    let x = skew.tensor(&i.algebra.basis(a), g.identity());
                    let y = skew.group_element(h);
                    skew.total.mul(&x, &y) == skew.total.mul(&y, &x)
                })
            });
            o.require(ok, || format!("{}: base does not commute with G", i.name));
            if d == 1 {
                let kg = group_algebra(i.field, g.table(), g.identity());
                o.require(*skew.total == kg, || format!("{}: kG not reproduced", i.name));
                o.note(format!("{} reproduces kC{n}", i.name));
            }
        }
    }
    o.require(seen > 0, || "no instance with an invertible group".into());
    o
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let (Some(g), Some(data)) = (&i.group, &i.recollement) else {
            continue;
        };
        seen += 1;
        let skew = SkewAlgebra::new(g).unwrap();
        let (r, compat) = skew.corner_compat_check(&data.idempotent, &i.name).unwrap();
        o.check(&r);
        let want = g.order() * data.corner_algebra.dim();
        o.require(compat.corner_skew.total.dim() == want, || {
            format!("{}: dim (eΛe)G != {want}", i.name)
        });
        o.require(compat.big_corner.algebra.dim() == want, || {
            format!("{}: dim e'ΛGe' != {want}", i.name)
        });
    }
    o.note(format!("{seen} instances"));
    o
}

fn criterion_4(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = Vec::new();
    for i in corpus {
        let (Some(g), Some(data)) = (invertible_group(i), &i.recollement) else {
            continue;
        };
        let r = equivariant_cross_check(g, &data.idempotent, BOUND, SEED, &i.name).unwrap();
        o.check(&r);
        let base = measurement(&r, "base verdict").as_str().unwrap().to_string();
        let skew = measurement(&r, "skew verdict").as_str().unwrap().to_string();
        o.require(base == skew, || format!("{}: base {base} vs skew {skew}", i.name));
        seen.push((i.name.clone(), base, r));
    }
    o.require(seen.len() >= 5, || format!("only {} instances", seen.len()));
    let verdict_of = |name: &str| seen.iter().find(|s| s.0 == name).map(|s| s.1.clone());
    let pass_case = ["triangular-a2-q", "triangular-rk-q"]
        .iter()
        .filter(|n| verdict_of(n).as_deref() == Some("Pass"))
        .count();
    o.require(pass_case > 0, || "no triangular Pass case with gl.dim R finite".into());
    for name in ["dual-times-k-q", "dual-times-k-f101"] {
        let Some((_, v, r)) = seen.iter().find(|s| s.0 == name) else {
            o.require(false, || format!("{name} missing"));
            continue;
        };
        o.require(v == "Fail", || format!("{name}: expected Fail, got {v}"));
        for level in ["base", "skew"] {
            let certified = r
                .witnesses
                .iter()
                .any(|w| w.starts_with(level) && w.contains("is isomorphic to syzygy"));
            o.require(certified, || format!("{name}: {level} Fail lacks a periodicity witness"));
        }
    }
    let fails = seen.iter().filter(|s| s.1 == "Fail").count();
    o.note(format!(
        "{} instances agree ({} Pass/Pass, {fails} Fail/Fail)",
        seen.len(),
        seen.len() - fails
    ));
    o
}

fn criterion_5(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let g = i.group_or_trivial();
        if !g.order_invertible() {
            continue;
        }
        seen += 1;
        let r = gldim_cross_check(&g, BOUND, &i.name).unwrap();
        o.check(&r);
        let (a, b) = (measurement(&r, "gl.dim Λ"), measurement(&r, "gl.dim ΛG"));
        o.require(a == b, || format!("{}: gl.dim Λ = {a} but gl.dim ΛG = {b}", i.name));
    }
    o.note(format!("{seen} instances"));
    o
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let Some(g) = invertible_group(i) else { continue };
        let skew = SkewAlgebra::new(g).unwrap();
        let mut listed = Vec::new();
        for m in &i.modules {
            let local = match (m.over, &i.recollement) {
                (Over::Algebra, _) => g.clone(),
                (Over::Corner, Some(d)) => g.restrict_to_corner(&d.corner, &d.corner_algebra).unwrap(),
                (Over::Quotient, Some(d)) => g.descend_to_quotient(&d.quotient, &d.quotient_algebra).unwrap(),
                _ => continue,
            };
            let local_skew = SkewAlgebra::new(&local).unwrap();
            let pd = projective_dimension(&m.module, BOUND).unwrap();
            let pd_ind = projective_dimension(&local_skew.induce(&m.module), BOUND).unwrap();
            o.require(pd == pd_ind, || format!("{}/{}: pd {pd} vs pd Ind {pd_ind}", i.name, m.name));
            seen += 1;
            if m.over == Over::Algebra {
                listed.push((m.name.clone(), m.module.clone(), m.linearization.clone()));
            }
        }
        o.check(&induction_check(&skew, &listed, BOUND, SEED, &i.name).unwrap());
    }
    o.note(format!("{seen} modules"));
    o
}

fn criterion_7(corpus: &[Instance]) -> (Outcome, Outcome) {
    let mut agree = Outcome::new();
    let mut at_one = Outcome::new();
    let mut seen = 0;
    let mut first_fail = Vec::new();
    for i in corpus {
        let (Some(g), Some(data)) = (invertible_group(i), &i.recollement) else {
            continue;
        };
        seen += 1;
        let r = homological_embedding_check(g, &data.idempotent, EXT_K, None, &i.name).unwrap();
        agree.check(&r);
        let (bv, sv) = (measurement(&r, "base verdict"), measurement(&r, "skew verdict"));
        let (bd, sd) = (
            measurement(&r, "base first failing degree"),
            measurement(&r, "skew first failing degree"),
        );
        agree.require(bv == sv && bd == sd, || format!("{}: base {bv}@{bd} vs skew {sv}@{sd}", i.name));
        if bv == "Fail" {
            first_fail.push((i.name.clone(), bd.as_u64(), sd.as_u64()));
        }
    }
    agree.require(seen > 0, || "no recollement instances".into());
    agree.note(format!("{seen} instances; failing: {first_fail:?}"));
    let witnessed = first_fail.iter().any(|(_, b, s)| *b == Some(1) && *s == Some(1));
    at_one.require(witnessed, || {
        "no instance fails at n = 1 on both levels; the ideal ΛeΛ is idempotent, so Ext^1 over Λ/ΛeΛ always agrees with Ext^1 over Λ".into()
    });
    (agree, at_one)
}

fn criterion_8(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let (Some(g), Some(data)) = (invertible_group(i), &i.recollement) else {
            continue;
        };
        let mut xs: Vec<(RightModule, Option<_>)> = i
            .modules_over(Over::Corner)
            .map(|m| (m.module.clone(), m.linearization.clone()))
            .collect();
        if xs.is_empty() {
            xs.push((RightModule::regular(&data.corner_algebra).top().unwrap(), None));
        }
        for (x, lin) in xs {
            let r = tor_vanishing_transfer(g, &data.idempotent, &x, lin.as_ref(), TOR_I, &i.name).unwrap();
            o.check(&r);
            let base = measurement(&r, "Tor^eΛe(X, eΛ)").as_array().unwrap().clone();
            let skew = measurement(&r, "Tor^e'ΛGe'(X', e'ΛG)").as_array().unwrap().clone();
            let pattern = |v: &[serde_json::Value]| v.iter().map(|t| t.as_u64().unwrap() == 0).collect::<Vec<_>>();
            o.require(base.len() == TOR_I + 1 && pattern(&base) == pattern(&skew), || {
                format!("{}: {base:?} vs {skew:?}", i.name)
            });
            seen += 1;
        }
    }
    o.require(seen >= 3, || format!("only {seen} instances"));
    o.note(format!("{seen} corner modules"));
    o
}

fn criterion_9(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let mut seen = 0;
    for i in corpus {
        let (Some(t), Some(g)) = (&i.triangular, &i.group) else { continue };
        seen += 1;
        let (r, _) = peirce_triangular_check(t, g, &i.name).unwrap();
        o.check(&r);
        let (_, dn, _) = t.dims();
        o.require(measurement(&r, "dim (1-e')ΛGe'") == 0, || format!("{}: (1-e')ΛGe' != 0", i.name));
        o.require(measurement(&r, "dim NG") == g.order() * dn, || {
            format!("{}: dim NG != |G| dim N", i.name)
        });
        let audit = r.measurements.keys().filter(|k| k.starts_with("N' audit")).count();
        o.require(audit > 0, || format!("{}: N' audit not recorded", i.name));
    }
    o.require(seen >= 3, || format!("only {seen} triangular instances"));
    o.note(format!("{seen} instances"));
    o
}

/// `C[i][j]` = number of paths from `i` to `j`, by depth-first enumeration over the arrows.
fn path_counts(vertices: usize, arrows: &[(usize, usize)]) -> Vec<Vec<i64>> {
    fn walk(v: usize, arrows: &[(usize, usize)], row: &mut [i64], depth: usize) {
        row[v] += 1;
        assert!(depth <= arrows.len(), "quiver has an oriented cycle");
        for &(s, t) in arrows {
            if s == v {
                walk(t, arrows, row, depth + 1);
            }
        }
    }
    (0..vertices)
        .map(|i| {
            let mut row = vec![0; vertices];
            walk(i, arrows, &mut row, 0);
            row
        })
        .collect()
}

fn criterion_10(corpus: &[Instance]) -> Outcome {
    let mut o = Outcome::new();
    let q = Field::Rationals;
    let mut pairs = 0;
    for name in ["a2-q", "a2-f101", "a3-q", "a3-f101"] {
        let i = find(corpus, name);
        let spec = load_spec(fixtures().join(format!("{name}.json"))).unwrap();
        let Some(AlgebraSpec { quiver: Some(qs), .. }) = &spec.algebra else {
            panic!("{name} is not a quiver")
        };
        let arrows = qs.arrows.clone();
        let c = path_counts(qs.vertices, &arrows);
        let rows: Vec<&[i64]> = c.iter().map(|r| r.as_slice()).collect();
        let c_inv = Matrix::from_i64(q, &rows).inverse().expect("Cartan matrix is unitriangular");
        let path = i.quiver.as_ref().unwrap();
        let mods: Vec<_> = i.modules_over(Over::Algebra).collect();
        for m in &mods {
            for n in &mods {
                let dv = |x: &RightModule| path.dimension_vector(x).iter().map(|&d| q.from_usize(d)).collect::<Vec<_>>();
                let (x, y) = (dv(&m.module), dv(&n.module));
                let xc = c_inv.apply_row(&x);
                let euler = xc.iter().zip(&y).fold(q.zero(), |acc, (a, b)| &acc + &(a * b));
                let hom = hom_space(&m.module, &n.module).unwrap().len() as i64;
                let ext1 = ext_dim(&m.module, &n.module, 1).unwrap() as i64;
                o.require(q.from_i64(hom - ext1) == euler, || {
                    format!("{name}: ⟨{}, {}⟩ = {euler} but hom - ext1 = {}", m.name, n.name, hom - ext1)
                });
                pairs += 1;
            }
        }
    }
    o.note(format!("{pairs} pairs"));
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    let dir = fixtures();
    let run = || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = ["skewrec", "all", dir.to_str().unwrap(), "--format", "json"];
        let code = main_with(args, &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    o.require(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"));
    o.require(a == b, || "reports differ between runs".into());
    o.require(!a.is_empty(), || "empty report".into());
    o.note(format!("{} bytes", a.len()));
    o
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let (c7a, c7b) = criterion_7(&corpus);
    let results: Vec<(&str, &str, Outcome)> = vec![
        ("1", "construction soundness", criterion_1(&corpus)),
        ("2", "skew-algebra exactness", criterion_2(&corpus)),
        ("3", "corner compatibility", criterion_3(&corpus)),
        ("4", "singular-equivalence cross-check", criterion_4(&corpus)),
        ("5", "gl.dim transfer", criterion_5(&corpus)),
        ("6", "pd preserved by induction", criterion_6(&corpus)),
        ("7a", "homological embedding agrees on both levels", c7a),
        ("7b", "an instance failing at n = 1 on both levels", c7b),
        ("8", "Tor transfer", criterion_8(&corpus)),
        ("9", "Peirce triangularity", criterion_9(&corpus)),
        ("10", "Euler form oracle", criterion_10(&corpus)),
        ("11", "determinism", criterion_11()),
    ];
    let elapsed = started.elapsed().as_secs_f64();
    let mut failed = 0;
    for (id, title, o) in &results {
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        failed += usize::from(!o.failures.is_empty());
        println!("{status} criterion {id}: {title} [{}]", o.notes.join("; "));
        for f in &o.failures {
            println!("    {f}");
        }
    }
    let in_budget = elapsed < RUNTIME_BUDGET_SECS;
    failed += usize::from(!in_budget);
    println!(
        "{} runtime: {elapsed:.1}s (budget {RUNTIME_BUDGET_SECS}s)",
        if in_budget { "PASS" } else { "FAIL" }
    );
    println!("{} of {} criteria failed", failed, results.len() + 1);
    if failed > 0 {
        std::process::exit(1);
    }
}
