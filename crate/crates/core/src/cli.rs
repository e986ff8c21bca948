//! The `skewrec` command line: load instance files, run checkers, print and save reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::instance::{load_spec, Instance, Over};
use crate::module::RightModule;
use crate::recollement::{
    default_test_modules, equivariant_cross_check, gldim_cross_check, homological_embedding_check, singular_equivalence_criterion,
    tor_vanishing_transfer, TestModule,
};
use crate::report::{CheckReport, Report, Verdict};
use crate::skew::{induction_check, skew_algebra_check};
use crate::triangular::{gldim_corollary_check, peirce_triangular_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build and validate the instance.
    Validate,
    /// Skew group algebra, corner compatibility and induction checks.
    Skew,
    /// The recollement data of the idempotent.
    Recollement,
    /// The singular-equivalence criterion, on Λ and, with a group, on ΛG.
    SingularEquiv,
    /// Global dimensions of Λ and ΛG.
    Gldim,
    /// Homological-embedding comparison on both levels.
    HomEmbedding,
    /// Tor vanishing on both levels.
    TorTransfer,
    /// Peirce decomposition of ΛG for triangular instances.
    Peirce,
    /// Every check that applies to the instance.
    All,
}

#[derive(Debug, Parser)]
#[command(name = "skewrec", version, about = "Checks for skew group algebras and idempotent recollements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Instance files, or directories whose `*.json` files are all run.
    #[arg(global = true)]
    pub paths: Vec<PathBuf>,
    /// Projective-dimension cutoff (overrides the instance file).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Highest Ext degree compared (overrides the instance file).
    #[arg(long = "ext-k", global = true)]
    pub ext_k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the isomorphism search behind periodicity detection.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Run-wide settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub bound: Option<usize>,
    pub ext_k: Option<usize>,
    pub seed: u64,
}

/// Whether a missing ingredient is an input error (single command) or a reason to skip (`all`).
#[derive(Clone, Copy, PartialEq, Eq)]
enum Need {
    Required,
    Optional,
}

fn missing(need: Need, what: &str) -> Result<Option<Vec<CheckReport>>> {
    match need {
        Need::Required => Err(Error::Schema {
            path: what.to_string(),
            message: "this command needs it".into(),
        }),
        Need::Optional => Ok(None),
    }
}

/// Runs one command on a built instance.
pub fn run_command(command: Command, inst: &Instance, opts: &Options) -> Result<Report> {
    let mut report = Report::new(&inst.name);
    let need = if command == Command::All { Need::Optional } else { Need::Required };
    let steps: &[Command] = match command {
        Command::All => &[
            Command::Validate,
            Command::Skew,
            Command::Recollement,
            Command::SingularEquiv,
            Command::Gldim,
            Command::HomEmbedding,
            Command::TorTransfer,
            Command::Peirce,
        ],
        _ => std::slice::from_ref(&command),
    };
    for &step in steps {
        if let Some(checks) = run_step(step, inst, opts, need)? {
            report.checks.extend(checks);
        }
    }
    Ok(report)
}

fn run_step(step: Command, inst: &Instance, opts: &Options, need: Need) -> Result<Option<Vec<CheckReport>>> {
    let bound = opts.bound.unwrap_or(inst.bounds.pd_bound);
    let ext_k = opts.ext_k.unwrap_or(inst.bounds.ext_k);
    let name = inst.name.as_str();
    let invertible = inst.group.as_ref().is_some_and(|g| g.order_invertible());
    Ok(Some(match step {
        Command::Validate => vec![validate_check(inst)],
        Command::Skew => {
            let Some(g) = &inst.group else { return missing(need, "group") };
            let (first, skew) = skew_algebra_check(g, name)?;
            let mut checks = vec![first];
            if let Some(e) = &inst.idempotent {
                checks.push(skew.corner_compat_check(e, name)?.0);
            }
            if invertible {
                let modules: Vec<_> = inst
                    .modules_over(Over::Algebra)
                    .map(|m| (m.name.clone(), m.module.clone(), m.linearization.clone()))
                    .collect();
                checks.push(induction_check(&skew, &modules, bound, opts.seed, name)?);
            } else if need == Need::Required {
                g.require_invertible_order()?;
            }
            checks
        }
        Command::Recollement => {
            let Some(data) = &inst.recollement else {
                return missing(need, "idempotent");
            };
            let mut r = CheckReport::new("recollement", name);
            r.hypothesis("e idempotent", true)
                .hypothesis("ΛeΛ two-sided", data.middle.is_two_sided_ideal(&data.ideal).is_ok())
                .hypothesis("eΛe valid", data.corner.algebra.validate().is_ok())
                .hypothesis("Λ/ΛeΛ valid", data.quotient.algebra.validate().is_ok())
                .measure("dim Λ", data.middle.dim())
                .measure("dim eΛe", data.corner.algebra.dim())
                .measure("dim ΛeΛ", data.ideal.dim())
                .measure("dim Λ/ΛeΛ", data.quotient.algebra.dim());
            r.expect_eq(
                "dim ΛeΛ + dim Λ/ΛeΛ",
                data.ideal.dim() + data.quotient.algebra.dim(),
                data.middle.dim(),
            );
            if data.middle.is_two_sided_ideal(&data.ideal).is_err() {
                r.fail("ΛeΛ is not a two-sided ideal");
            }
            vec![r]
        }
        Command::SingularEquiv => {
            let Some(data) = &inst.recollement else {
                return missing(need, "idempotent");
            };
            let mut checks = Vec::new();
            if need == Need::Required || inst.group.is_none() {
                let mut crit = singular_equivalence_criterion(data, bound, opts.seed, name)?;
                if need == Need::Optional {
                    crit.measure("criterion verdict", crit.verdict.to_string());
                    if crit.verdict == Verdict::Fail {
                        crit.verdict = Verdict::Pass;
                    }
                    crit.name = "singular-equiv (base only)".into();
                }
                checks.push(crit);
            }
            if let Some(g) = &inst.group {
                if invertible {
                    checks.push(equivariant_cross_check(g, &data.idempotent, bound, opts.seed, name)?);
                } else if need == Need::Required {
                    g.require_invertible_order()?;
                }
            }
            checks
        }
        Command::Gldim => {
            let g = inst.group_or_trivial();
            if !g.order_invertible() {
                if need == Need::Required {
                    g.require_invertible_order()?;
                }
                return Ok(None);
            }
            vec![gldim_cross_check(&g, bound, name)?]
        }
        Command::HomEmbedding => {
            let Some(data) = &inst.recollement else {
                return missing(need, "idempotent");
            };
            let g = inst.group_or_trivial();
            if !g.order_invertible() {
                if need == Need::Required {
                    g.require_invertible_order()?;
                }
                return Ok(None);
            }
            let mut tests: Vec<TestModule> = inst
                .modules_over(Over::Quotient)
                .map(|m| TestModule {
                    label: m.name.clone(),
                    module: m.module.clone(),
                    linearization: m.linearization.clone(),
                })
                .collect();
            if tests.is_empty() {
                tests = default_test_modules(data)?;
            }
            vec![homological_embedding_check(&g, &data.idempotent, ext_k, Some(tests), name)?]
        }
        Command::TorTransfer => {
            let Some(data) = &inst.recollement else {
                return missing(need, "idempotent");
            };
            let g = inst.group_or_trivial();
            if !g.order_invertible() {
                if need == Need::Required {
                    g.require_invertible_order()?;
                }
                return Ok(None);
            }
            let mut xs: Vec<(String, RightModule, Option<_>)> = inst
                .modules_over(Over::Corner)
                .map(|m| (m.name.clone(), m.module.clone(), m.linearization.clone()))
                .collect();
            if xs.is_empty() {
                xs.push(("top".into(), RightModule::regular(&data.corner_algebra).top()?, None));
            }
            let mut checks = Vec::new();
            for (label, x, lin) in xs {
                let mut r = tor_vanishing_transfer(&g, &data.idempotent, &x, lin.as_ref(), inst.bounds.tor_i, name)?;
                r.name = format!("tor-transfer {label}");
                checks.push(r);
            }
            checks
        }
        Command::Peirce => {
            let Some(t) = &inst.triangular else {
                return missing(need, "triangular");
            };
            let g = inst.group_or_trivial();
            let mut checks = vec![peirce_triangular_check(t, &g, name)?.0];
            if g.order_invertible() {
                checks.push(gldim_corollary_check(t, &g, bound, opts.seed, name)?);
            }
            checks
        }
        Command::All => unreachable!("expanded by run_command"),
    }))
}

fn validate_check(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new("validate", &inst.name);
    r.hypothesis("associative and unital", true)
        .measure("field", inst.field.to_string())
        .measure("dim", inst.algebra.dim());
    match inst.algebra.radical() {
        Ok(rad) => {
            r.measure("dim rad", rad.dim());
        }
        Err(e) => {
            r.measure("dim rad", e.to_string());
        }
    }
    if let Some(g) = &inst.group {
        r.hypothesis("group acts by automorphisms", true).measure("|G|", g.order());
    }
    if inst.idempotent.is_some() {
        r.hypothesis("idempotent", true);
        if inst.group.is_some() {
            r.hypothesis("idempotent fixed by G", true);
        }
    }
    if let Some(t) = &inst.triangular {
        let (dr, dn, ds) = t.dims();
        r.measure("dim R", dr).measure("dim N", dn).measure("dim S", ds);
    }
    r.measure(
        "modules",
        inst.modules
            .iter()
            .map(|m| format!("{} ({})", m.name, m.module.dim()))
            .collect::<Vec<_>>(),
    );
    r
}

/// The `*.json` files named by `paths`, directories expanded one level and sorted.
pub fn collect_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
                .filter_map(|d| d.ok().map(|d| d.path()))
                .filter(|q| q.is_file() && q.extension().is_some_and(|x| x == "json"))
                .collect();
            inner.sort();
            out.extend(inner);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Loads, builds and runs one file.
pub fn run_file(command: Command, path: &Path, opts: &Options) -> Result<Report> {
    let inst = load_spec(path)?.build()?;
    run_command(command, &inst, opts)
}

/// Entry point behind the binary; returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let opts = Options {
        bound: cli.bound,
        ext_k: cli.ext_k,
        seed: cli.seed,
    };
    let paths = match collect_paths(&cli.paths) {
        Ok(p) if !p.is_empty() => p,
        Ok(_) => {
            let _ = writeln!(stderr, "error: no instance files given");
            return 1;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let mut reports = Vec::new();
    let mut input_errors = 0;
    for p in &paths {
        match run_file(cli.command, p, &opts) {
            Ok(r) => reports.push(r),
            Err(e) => {
                input_errors += 1;
                let _ = writeln!(stderr, "error [{}]: {e}", p.display());
            }
        }
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    };
    match cli.format {
        Format::Json => {
            let _ = writeln!(stdout, "{json}");
        }
        Format::Table => {
            for r in &reports {
                let _ = write!(stdout, "{}", r.to_table());
            }
        }
    }
    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, format!("{json}\n")) {
            let _ = writeln!(stderr, "error: {}: {e}", out.display());
            return 1;
        }
    }
    let fails: usize = reports.iter().map(|r| r.count(Verdict::Fail)).sum();
    let inconclusive: usize = reports.iter().map(Report::inconclusive).sum();
    if inconclusive > 0 {
        let _ = writeln!(stderr, "warning: {inconclusive} inconclusive check(s)");
    }
    if input_errors > 0 {
        1
    } else if fails > 0 {
        let _ = writeln!(stderr, "{fails} failing check(s)");
        2
    } else {
        0
    }
}
