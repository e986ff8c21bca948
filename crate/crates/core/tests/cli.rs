use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use skewrec::cli::{main_with, run_command, Command, Options};
use skewrec::instance::load_spec;
use skewrec::report::Verdict;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("skewrec").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn all_on_corpus_exits_zero() {
    let dir = fixture("");
    let (code, out, err) = run(&["all", path_str(&dir)]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("instance: upper-q"));
}

#[test]
fn negatives_are_input_errors() {
    for name in [
        "broken-associativity",
        "non-automorphism",
        "non-invariant-idempotent",
        "both-presentations",
    ] {
        let p = fixture(&format!("negative/{name}.json"));
        let (code, _, err) = run(&["validate", path_str(&p)]);
        assert_eq!(code, 1, "{name}");
        assert!(err.contains(&format!("{name}.json")), "{err}");
    }
}

#[test]
fn raw_criterion_failure_exits_two() {
    let p = fixture("dual-times-k-q.json");
    let (code, out, err) = run(&["singular-equiv", path_str(&p), "--format", "json"]);
    assert_eq!(code, 2, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let verdict = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap()["verdict"].clone();
    assert_eq!(verdict("singular-equiv"), "Fail");
    assert_eq!(verdict("equivariant-cross-check"), "Pass");
}

#[test]
fn missing_ingredient_is_an_input_error() {
    let (code, _, err) = run(&["peirce", path_str(&fixture("dual-q.json"))]);
    assert_eq!(code, 1);
    assert!(err.contains("schema error"), "{err}");
    let (code, _, _) = run(&["validate", "/nonexistent/instance.json"]);
    assert_eq!(code, 1);
}

#[test]
fn out_file_holds_a_json_array() {
    let out = std::env::temp_dir().join(format!("skewrec-cli-{}.json", std::process::id()));
    let (code, stdout, _) = run(&[
        "gldim",
        path_str(&fixture("a2-q.json")),
        path_str(&fixture("a3-q.json")),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("gl.dim"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert!(r["instance"].is_string() && r["checks"].is_array() && r["version"].is_string());
    }
}

#[test]
fn flags_override_instance_bounds() {
    let p = fixture("dual-times-k-q.json");
    let (_, out, _) = run(&["gldim", path_str(&p), "--bound", "3", "--format", "json"]);
    assert!(out.contains("ExceedsBound(3)"), "{out}");
}

#[test]
fn json_reports_are_byte_deterministic() {
    let dir = fixture("");
    let a = run(&["all", path_str(&dir), "--format", "json", "--seed", "7"]);
    let b = run(&["all", path_str(&dir), "--format", "json", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn all_is_the_union_of_the_commands() {
    let singles = [
        Command::Validate,
        Command::Skew,
        Command::Recollement,
        Command::SingularEquiv,
        Command::Gldim,
        Command::HomEmbedding,
        Command::TorTransfer,
        Command::Peirce,
    ];
    for name in ["upper-q", "dual-times-k-q", "triangular-c2-q", "a3-rel-f101"] {
        let inst = load_spec(fixture(&format!("{name}.json"))).unwrap().build().unwrap();
        let opts = Options::default();
        let all = run_command(Command::All, &inst, &opts).unwrap();
        let mut union: BTreeMap<String, Verdict> = BTreeMap::new();
        for c in singles {
            if let Ok(r) = run_command(c, &inst, &opts) {
                union.extend(r.checks.into_iter().map(|c| (c.name, c.verdict)));
            }
        }
        for c in &all.checks {
            assert_eq!(union.get(&c.name), Some(&c.verdict), "{name}: {}", c.name);
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_skewrec");
    let status = |args: &[&str]| Process::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", path_str(&fixture("a2-q.json"))]), Some(0));
    assert_eq!(status(&["validate", path_str(&fixture("negative/non-automorphism.json"))]), Some(1));
    assert_eq!(status(&["singular-equiv", path_str(&fixture("dual-times-k-f101.json"))]), Some(2));
}
