//! Command surface. [`run_command`] never panics and never exits; `main` does
//! the printing and the process exit.

use crate::constructions::{
    check_equivalent_axioms, factorize, lift, synthesize_telescope, LiftProblem, MATRIX_LABELS,
};
use crate::correspondence::{
    check_1cell, check_strict_unit_stability, dispcat_to_path, equip_id_types, left_adjoint_split, path_to_dispcat,
    roundtrip_disp, roundtrip_path, verify_coherence_closure, Cell,
};
use crate::dispcat::{canonical_structure, check_root, check_split, DispCat};
use crate::error::Error;
use crate::fincat::{FiniteCategory, MorId};
use crate::format::{self, Model};
use crate::pathcat::{check_dmpc_axioms, check_path_axioms, check_saturation, DisplayPathCat, HomotopyModel, PathCat};
use crate::report::{Finding, Node, Report};
use crate::syntaxmodel;
use crate::typeformers::{check_id_structure, check_lf, check_weak_stability_id, derive_id, Flavor, TypeModel};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pathwork", version, about = "Checks path categories, display map categories and their type formers")]
struct Cli {
    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Run on a single thread.
    #[arg(long, global = true)]
    seedless: bool,
    /// Enumeration depth for `counterexample`.
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Category laws of the file's composition table.
    Validate { file: PathBuf },
    #[command(subcommand)]
    /// Structural checks on a file.
    Check(CheckCmd),
    #[command(subcommand)]
    /// Type formers derived from the structure.
    Derive(DeriveCmd),
    /// Mapping path space factorization of a morphism.
    Factorize { file: PathBuf, morphism: String },
    /// Lifting problem given as `w,f,p,sigma`.
    Lift { file: PathBuf, square: String },
    #[command(subcommand)]
    /// Build path objects by search.
    Synthesize(SynthCmd),
    #[command(subcommand)]
    /// Move between path categories and display map categories.
    Translate(TranslateCmd),
    /// Both translations composed, compared with the input.
    Roundtrip { file: PathBuf },
    /// Left adjoint splitting of the chosen structure.
    Split { file: PathBuf },
    /// Coherence closure of the split structure.
    Coherence { file: PathBuf },
    /// The countermodel where transport is not derivable.
    Counterexample,
    /// The (PO, PF, F, T, L) vector.
    Matrix { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Path category axioms and path object saturation.
    PathAxioms { file: PathBuf },
    /// Display map path category axioms.
    Dmpc { file: PathBuf },
    /// Maps into the terminal object are fibrations.
    Root { file: PathBuf },
    /// The chosen reindexing is strictly functorial.
    Split { file: PathBuf },
    /// Finite products and dependent exponents along display maps.
    Lf { file: PathBuf },
    /// Identity types are weakly stable under reindexing.
    Stability { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum DeriveCmd {
    /// Identity types from path objects, with their flavour.
    IdTypes { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SynthCmd {
    /// Path object of the top of a telescope given as `d1,d2,...` from the root.
    Pf { file: PathBuf, tower: String },
}

#[derive(Subcommand, Debug)]
enum TranslateCmd {
    /// Path category to display map category.
    ToDisp { file: PathBuf },
    /// Display map category to path category.
    ToPath { file: PathBuf },
}

/// What a run produced. `report` is absent only for usage errors.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            report: None,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// A failure that is not a check verdict: bad input or bad arguments.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Run = std::result::Result<Node, Usage>;

pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    report: None,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let (name, input) = describe(&cli.cmd);
    let result = if cli.seedless {
        single_threaded(|| dispatch(&cli))
    } else {
        dispatch(&cli)
    };
    let verdict = match result {
        Ok(node) => node,
        Err(Usage(msg)) => {
            let mut out = Outcome::usage(format!("error: {msg}\n"));
            out.report = Some(Report::new(name, input, cli.seedless, Node::fail("input", msg)));
            write_report(&cli, &mut out);
            return out;
        }
    };
    let report = Report::new(name, input, cli.seedless, verdict);
    let mut out = Outcome {
        code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
        stdout: report.verdict.render(),
        stderr: String::new(),
        report: Some(report),
    };
    write_report(&cli, &mut out);
    out
}

fn write_report(cli: &Cli, out: &mut Outcome) {
    let (Some(path), Some(report)) = (&cli.report, &out.report) else {
        return;
    };
    if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
        out.stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
        out.code = EXIT_USAGE;
    }
}

#[cfg(feature = "parallel")]
fn single_threaded<F: FnOnce() -> Run + Send>(f: F) -> Run {
    match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool.install(f),
        Err(e) => Err(Usage(format!("cannot build thread pool: {e}"))),
    }
}

#[cfg(not(feature = "parallel"))]
fn single_threaded<F: FnOnce() -> Run>(f: F) -> Run {
    f()
}

fn describe(cmd: &Cmd) -> (String, Option<String>) {
    let file = |p: &PathBuf| Some(p.display().to_string());
    match cmd {
        Cmd::Validate { file: f } => ("validate".into(), file(f)),
        Cmd::Check(c) => match c {
            CheckCmd::PathAxioms { file: f } => ("check path-axioms".into(), file(f)),
            CheckCmd::Dmpc { file: f } => ("check dmpc".into(), file(f)),
            CheckCmd::Root { file: f } => ("check root".into(), file(f)),
            CheckCmd::Split { file: f } => ("check split".into(), file(f)),
            CheckCmd::Lf { file: f } => ("check lf".into(), file(f)),
            CheckCmd::Stability { file: f } => ("check stability".into(), file(f)),
        },
        Cmd::Derive(DeriveCmd::IdTypes { file: f }) => ("derive id-types".into(), file(f)),
        Cmd::Factorize { file: f, morphism } => (format!("factorize {morphism}"), file(f)),
        Cmd::Lift { file: f, square } => (format!("lift {square}"), file(f)),
        Cmd::Synthesize(SynthCmd::Pf { file: f, tower }) => (format!("synthesize pf {tower}"), file(f)),
        Cmd::Translate(TranslateCmd::ToDisp { file: f }) => ("translate to-disp".into(), file(f)),
        Cmd::Translate(TranslateCmd::ToPath { file: f }) => ("translate to-path".into(), file(f)),
        Cmd::Roundtrip { file: f } => ("roundtrip".into(), file(f)),
        Cmd::Split { file: f } => ("split".into(), file(f)),
        Cmd::Coherence { file: f } => ("coherence".into(), file(f)),
        Cmd::Counterexample => ("counterexample".into(), None),
        Cmd::Matrix { file: f } => ("matrix".into(), file(f)),
    }
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let m = load(file)?;
            let findings = m.cat.validate();
            let w = format!("{} objects, {} morphisms", m.cat.object_count(), m.cat.morphism_count());
            Ok(Node::leaf("validate", &findings, vec![w]))
        }
        Cmd::Check(CheckCmd::PathAxioms { file }) => path_axioms(&path_cat(&load(file)?)?),
        Cmd::Check(CheckCmd::Dmpc { file }) => {
            let m = load(file)?;
            let d = disp_cat(&m)?;
            let eq = match m.class("equivalence") {
                Some(e) => e.clone(),
                None => equip_id_types(&d).equivalences().cloned().unwrap_or_default(),
            };
            Ok(Node::leaf("dmpc", &check_dmpc_axioms(&d, &eq), vec![]))
        }
        Cmd::Check(CheckCmd::Root { file }) => {
            let d = disp_cat(&load(file)?)?;
            Ok(Node::leaf("root", &check_root(&d), vec![]))
        }
        Cmd::Check(CheckCmd::Split { file }) => {
            let d = disp_cat(&load(file)?)?;
            Ok(match check_split(&d) {
                Ok(f) => Node::leaf("split", &f, vec![]),
                Err(e) => Node::fail("split", e.to_string()),
            })
        }
        Cmd::Check(CheckCmd::Lf { file }) => {
            let d = disp_cat(&load(file)?)?;
            let rep = check_lf(&d);
            let c = d.cat();
            let witnesses = rep
                .exponents
                .iter()
                .filter_map(|e| {
                    e.witness
                        .map(|(pi, app)| format!("Pi({}, {}) = {} app {}", c.mor_name(e.a), c.mor_name(e.b), c.mor_name(pi), c.mor_name(app)))
                })
                .collect();
            let mut node = Node::leaf("lf", &rep.findings, witnesses);
            if !rep.holds() && node.pass {
                node = Node::fail("lf", "LF condition does not hold");
            }
            Ok(node)
        }
        Cmd::Check(CheckCmd::Stability { file }) => with_type_model(&load(file)?, stability),
        Cmd::Derive(DeriveCmd::IdTypes { file }) => with_type_model(&load(file)?, id_types),
        Cmd::Factorize { file, morphism } => {
            let m = load(file)?;
            let p = path_cat(&m)?;
            let f = m.cat.morphism_or_err(morphism)?;
            let c = p.cat();
            Ok(match factorize(&p, f) {
                Ok(fac) => {
                    let mut bad = Vec::new();
                    if c.compose(fac.p, fac.w) != f {
                        bad.push(Finding::new("factorization", "p ∘ w differs from f", c.names(&[fac.p, fac.w])));
                    }
                    if !p.fibrations().contains(fac.p) {
                        bad.push(Finding::new("factorization", "p is not a fibration", c.names(&[fac.p])));
                    }
                    if p.is_equivalence(fac.w) != Some(true) {
                        bad.push(Finding::new("factorization", "w is not an equivalence", c.names(&[fac.w])));
                    }
                    Node::leaf(
                        "factorize",
                        &bad,
                        vec![
                            format!("w = {}", c.mor_name(fac.w)),
                            format!("p = {}", c.mor_name(fac.p)),
                            format!("via {}", fac.path.describe(c)),
                        ],
                    )
                }
                Err(e) => Node::fail("factorize", e.to_string()),
            })
        }
        Cmd::Lift { file, square } => {
            let m = load(file)?;
            let p = path_cat(&m)?;
            let ids = morphism_list(&m.cat, square)?;
            let [w, f, q, sigma] = ids[..] else {
                return Err(Usage(format!("square `{square}` must be w,f,p,sigma")));
            };
            let prob = LiftProblem { w, f, p: q, sigma };
            let c = p.cat();
            Ok(match lift(&p, &prob) {
                Ok(sol) => Node::pass(
                    "lift",
                    vec![
                        format!("lift = {}", c.mor_name(sol.lift)),
                        format!("candidates = [{}]", c.names(&sol.candidates).join(", ")),
                    ],
                ),
                Err(e) => Node::fail("lift", e.to_string()),
            })
        }
        Cmd::Synthesize(SynthCmd::Pf { file, tower }) => {
            let m = load(file)?;
            let ids = morphism_list(&m.cat, tower)?;
            with_type_model(&m, |tm| {
                let c = tm.cat();
                Ok(match synthesize_telescope(tm, &ids) {
                    Ok(steps) => Node::pass(
                        "synthesize pf",
                        steps
                            .iter()
                            .map(|s| s.witness.describe(c))
                            .collect(),
                    ),
                    Err(e) => Node::fail("synthesize pf", e.to_string()),
                })
            })
        }
        Cmd::Translate(TranslateCmd::ToDisp { file }) => {
            let p = path_cat(&load(file)?)?;
            Ok(match path_to_dispcat(&p) {
                Ok(dm) => {
                    let c = dm.disp.cat();
                    Node::leaf(
                        "to-disp",
                        &dm.findings(),
                        vec![format!("display = [{}]", dm.disp.display().names(c).join(", "))],
                    )
                }
                Err(e) => Node::fail("to-disp", e.to_string()),
            })
        }
        Cmd::Translate(TranslateCmd::ToPath { file }) => {
            let d = disp_cat(&load(file)?)?;
            Ok(match dispcat_to_path(&d) {
                Ok(p) => {
                    let c = p.cat();
                    let eq = p.equivalences().map(|e| e.names(c)).unwrap_or_default();
                    Node::pass(
                        "to-path",
                        vec![
                            format!("fibrations = [{}]", p.fibrations().names(c).join(", ")),
                            format!("equivalences = [{}]", eq.join(", ")),
                        ],
                    )
                }
                Err(e) => Node::fail("to-path", e.to_string()),
            })
        }
        Cmd::Roundtrip { file } => {
            let m = load(file)?;
            let (label, res) = if m.class("fibration").is_some() && m.class("equivalence").is_some() {
                ("roundtrip path", roundtrip_path(&path_cat(&m)?))
            } else {
                ("roundtrip disp", roundtrip_disp(&disp_cat(&m)?))
            };
            Ok(match res {
                Ok(f) => Node::leaf(label, &f, vec!["componentwise equal".into()]),
                Err(e) => Node::fail(label, e.to_string()),
            })
        }
        Cmd::Split { file } => split(&structured(&load(file)?)?),
        Cmd::Coherence { file } => {
            let d = structured(&load(file)?)?;
            Ok(match left_adjoint_split(&d) {
                Ok(s) => verify_coherence_closure(&s.disp),
                Err(e) => Node::fail("coherence", e.to_string()),
            })
        }
        Cmd::Counterexample => Ok(syntaxmodel::counterexample_report(cli.depth)),
        Cmd::Matrix { file } => {
            let m = load(file)?;
            let d = disp_cat(&m)?;
            let eq = match m.class("equivalence") {
                Some(e) => e.clone(),
                None => equip_id_types(&d).equivalences().cloned().unwrap_or_default(),
            };
            let mx = check_equivalent_axioms(&d, &eq);
            if !mx.precondition.is_empty() {
                let cex: Vec<String> = mx.precondition.iter().map(|f| format!("precondition: {f}")).collect();
                return Ok(Node {
                    name: "matrix".into(),
                    pass: false,
                    witnesses: Vec::new(),
                    counterexamples: cex,
                    children: Vec::new(),
                });
            }
            let vector = mx.vector.unwrap_or_default();
            let row: Vec<String> = MATRIX_LABELS
                .iter()
                .zip(vector)
                .map(|(l, v)| format!("{l}={}", if v { 1 } else { 0 }))
                .collect();
            let mut node = Node::leaf("matrix", &[], vec![row.join(" ")]);
            if !mx.constant() {
                node = Node::fail("matrix", format!("vector not constant: {}", row.join(" ")));
                node.counterexamples.extend(mx.findings.iter().map(|f| f.to_string()));
            }
            Ok(node)
        }
    }
}

fn load(path: &PathBuf) -> std::result::Result<Model, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = format::parse(&text).map_err(|e| Usage(format!("{}:{e}", path.display())))?;
    let model = file.build().map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if let Some(f) = model.cat.validate().first() {
        return Err(Usage(format!("{}: not a category: {f}", path.display())));
    }
    Ok(model)
}

fn path_cat(m: &Model) -> std::result::Result<PathCat, Usage> {
    Ok(m.path_cat()?)
}

fn disp_cat(m: &Model) -> std::result::Result<DispCat, Usage> {
    Ok(m.disp_cat()?)
}

/// The file's structure if it has one, else the canonical choice.
fn structured(m: &Model) -> std::result::Result<DispCat, Usage> {
    let d = disp_cat(m)?;
    if d.structure().is_some() {
        return Ok(d);
    }
    let s = canonical_structure(&d)?;
    Ok(DispCat::structured(d.cat().clone(), d.display().clone(), s)?)
}

fn morphism_list(c: &FiniteCategory, list: &str) -> std::result::Result<Vec<MorId>, Usage> {
    list.split(',')
        .map(|n| c.morphism_or_err(n.trim()).map_err(Usage::from))
        .collect()
}

/// A path category when the file marks fibrations and equivalences, else the
/// display path category over its display maps.
fn with_type_model<F>(m: &Model, f: F) -> Run
where
    F: FnOnce(&dyn TypeModel) -> Run,
{
    if m.class("fibration").is_some() && m.class("equivalence").is_some() {
        let p = path_cat(m)?;
        return f(&p);
    }
    let d = disp_cat(m)?;
    let dp = match m.class("equivalence") {
        Some(eq) => DisplayPathCat::new(d, eq.clone()),
        None => equip_id_types(&d),
    };
    f(&dp)
}

fn path_axioms(p: &PathCat) -> Run {
    let axioms = Node::leaf("axioms", &check_path_axioms(p), vec![]);
    let saturation = Node::leaf("saturation", &check_saturation(p), vec![]);
    Ok(Node::group("path-axioms", vec![axioms, saturation]))
}

fn stability(m: &dyn TypeModel) -> Run {
    let c = m.cat();
    let rep = check_weak_stability_id(m);
    let mut witnesses = Vec::new();
    let mut bad = Vec::new();
    for e in &rep.entries {
        let label = format!("{} along {}", c.mor_name(e.ty), c.mor_name(e.sigma));
        match (e.positive(), e.phi, e.psi) {
            (true, Some(phi), Some(psi)) => {
                witnesses.push(format!("{label}: phi = {}, psi = {}", c.mor_name(phi), c.mor_name(psi)))
            }
            _ => bad.push(Finding::new(
                "weak-stability",
                e.failure.clone().unwrap_or_else(|| "comparison arrows missing".into()),
                c.names(&[e.ty, e.sigma]),
            )),
        }
    }
    Ok(Node::leaf("stability", &bad, witnesses))
}

fn id_types(m: &dyn TypeModel) -> Run {
    let c = m.cat();
    let mut children = Vec::new();
    for ty in m.types().iter() {
        let name = format!("Id {}", c.mor_name(ty));
        match derive_id(m, ty) {
            Ok(s) => {
                let f = check_id_structure(m.disp(), &s, Flavor::Axiomatic);
                let mut w = vec![format!(
                    "formation = {}, refl = {}, {} eliminations",
                    c.mor_name(s.formation),
                    c.mor_name(s.refl),
                    s.entries.len()
                )];
                for flavor in [Flavor::Intensional, Flavor::Extensional] {
                    if check_id_structure(m.disp(), &s, flavor).is_empty() {
                        w.push(flavor.name().to_string());
                    }
                }
                children.push(Node::leaf(name, &f, w));
            }
            Err(e) => children.push(Node::fail(name, e.to_string())),
        }
    }
    Ok(Node::group("id-types", children))
}

fn split(d: &DispCat) -> Run {
    let s = match left_adjoint_split(d) {
        Ok(s) => s,
        Err(e) => return Ok(Node::fail("split", e.to_string())),
    };
    let strict = match check_split(&s.disp) {
        Ok(f) => Node::leaf("strict reindexing", &f, vec![format!("{} split types", s.pairs.len())]),
        Err(e) => Node::fail("strict reindexing", e.to_string()),
    };
    let unit = Node::leaf("unit 1-cell", &check_1cell(&s.unit, Cell::Disp(d, &s.disp)), vec![]);
    let unit_type = Node::leaf("unit type stability", &check_strict_unit_stability(&s), vec![]);
    Ok(Node::group("split", vec![strict, unit, unit_type]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_subcommand_is_usage() {
        let out = run_command(["pathwork", "frobnicate"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.report.is_none());
    }

    #[test]
    fn counterexample_passes() {
        let out = run_command(["pathwork", "counterexample"]);
        assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
        assert!(out.stdout.contains("transport underivable"));
    }

    #[test]
    fn missing_file_is_usage() {
        let out = run_command(["pathwork", "validate", "/nonexistent/x.cat"]);
        assert_eq!(out.code, EXIT_USAGE);
    }
}
