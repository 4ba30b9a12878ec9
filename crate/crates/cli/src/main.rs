//! `oqa`: check, build, export and evaluate oriented quantum algebras and
//! related structures from JSON bundles or the built-in catalog.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oqa_core::catalog::{self, certify_object, compare_to_expected, to_matrix, FixtureObject, OrderingSpec};
use oqa_core::hopf::{bicrossed_coproduct, cor39_oqa, qt_bicrossed, qt_to_oqa};
use oqa_core::io::{object_from_json, object_to_json, substitute_object};
use oqa_core::nonuple::{build_thm35, build_thm36, build_thm37, derived_identities};
use oqa_core::oqa::{radford_double, tensor_oqa};
use oqa_core::report::{set_progress_hook, CheckReport};
use oqa_core::scalar::parse_rational;
use oqa_core::{Assignment, Error};

#[derive(Parser)]
#[command(
    name = "oqa",
    version,
    about = "Exact checks and constructions for oriented quantum algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a checker and print its per-axiom report. Exit 0 iff every verdict passes.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        /// Object reference: a file path, `-` for stdin, or `catalog:NAME`.
        subject: String,
        /// For `check expected`: the fixture holding the printed matrix.
        fixture: Option<String>,
        #[arg(long)]
        json: bool,
        /// Basis ordering for `check expected`.
        #[arg(long)]
        order: Option<String>,
    },
    /// Construct a new object from certified inputs and write it as JSON.
    Build {
        #[arg(value_enum)]
        what: BuildKind,
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export an object in another format.
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        subject: String,
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Substitute NAME=RATIONAL before exporting.
        #[arg(long = "set", value_name = "NAME=RATIONAL")]
        set: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Substitute parameter values, re-certify, and re-emit the object.
    Eval {
        subject: String,
        #[arg(long = "set", value_name = "NAME=RATIONAL", required = true)]
        set: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List or export built-in objects.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Oqa,
    Nonuple,
    /// Derived identities of a nonuple.
    Derived,
    Hopf,
    Qt,
    Weakr,
    /// Compare a computed matrix with a printed one.
    Expected,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Thm35,
    Thm36,
    Thm37,
    Radford,
    TensorOqa,
    Bicrossed,
    Cor39,
    QtOqa,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Matrix,
    Bundle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Export {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// How a command failed: a verdict failure (exit 1) or bad input (exit 2).
enum Failure {
    Verdict(Value),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

struct Loader {
    stdin_used: bool,
}

impl Loader {
    fn load(&mut self, reference: &str) -> Result<FixtureObject, Error> {
        if let Some(name) = reference.strip_prefix("catalog:") {
            return Ok(catalog::catalog_get(name)?.object);
        }
        let text = if reference == "-" {
            if self.stdin_used {
                return Err(Error::Input("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(reference).map_err(|e| Error::Input(format!("{reference}: {e}")))?
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{reference}: {e}")))?;
        object_from_json(&v)
    }

    /// Loads and certifies; a failed certification is an input error.
    fn load_certified(&mut self, reference: &str) -> Result<FixtureObject, Error> {
        let mut o = self.load(reference)?;
        if let Some(rep) = certify_object(&mut o) {
            if let Some(v) = rep.first_failure() {
                return Err(Error::Uncertified(format!("{reference}: {} fails at {v}", rep.subject)));
            }
        }
        Ok(o)
    }
}

fn wrong_kind(reference: &str, want: &str, got: &FixtureObject) -> Error {
    Error::Input(format!("{reference} is a {} bundle, expected {want}", got.kind()))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Input(format!("stdout: {e}")))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_assignment(items: &[String]) -> Result<Assignment, Error> {
    let mut a = Assignment::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("--set expects NAME=RATIONAL, got '{item}'")))?;
        a.insert(name.trim().to_string(), parse_rational(value.trim())?);
    }
    Ok(a)
}

fn ordering(order: Option<&str>) -> Result<OrderingSpec, Error> {
    order.map(str::parse).transpose().map(Option::unwrap_or_default)
}

fn verdict_failure(rep: &CheckReport) -> Value {
    let failed: Vec<&str> = rep
        .verdicts
        .iter()
        .filter(|v| !v.pass)
        .map(|v| v.axiom.as_str())
        .collect();
    let first = rep.first_failure().map(|v| v.to_json());
    json!({
        "error": {
            "kind": "verdict_failure",
            "subject": rep.subject,
            "failed": failed,
            "first": first,
        }
    })
}

fn finish_report(rep: &CheckReport, as_json: bool) -> Outcome {
    let text = if as_json {
        pretty(&rep.to_json())
    } else {
        format!("{rep}\n")
    };
    emit(&text, None)?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Verdict(verdict_failure(rep)))
    }
}

fn run_check(
    loader: &mut Loader,
    what: CheckKind,
    subject: &str,
    fixture: Option<&str>,
    as_json: bool,
    order: Option<&str>,
) -> Outcome {
    if !matches!(what, CheckKind::Expected) && fixture.is_some() {
        return Err(Error::Input("only `check expected` takes a second reference".into()).into());
    }
    let mut o = loader.load(subject)?;
    // Stream verdicts to stderr as they are decided; stdout stays deterministic.
    set_progress_hook(Some(Box::new(|v| eprintln!("  {v}"))));
    let rep = match (what, &mut o) {
        (CheckKind::Oqa, FixtureObject::Oqa(_))
        | (CheckKind::Nonuple, FixtureObject::Nonuple(_))
        | (CheckKind::Hopf, FixtureObject::Hopf(_))
        | (CheckKind::Qt, FixtureObject::Quasitriangular { .. })
        | (CheckKind::Weakr, FixtureObject::WeakR { .. }) => certify_object(&mut o).expect("checkable kind"),
        (CheckKind::Derived, FixtureObject::Nonuple(n)) => {
            let base = n.certify();
            if !base.passed() {
                base
            } else {
                derived_identities(n)?
            }
        }
        (CheckKind::Expected, _) => {
            let fixture = fixture.ok_or_else(|| Error::Input("`check expected` needs a fixture reference".into()))?;
            return check_expected(loader, o, subject, fixture, as_json, order);
        }
        (_, other) => {
            let want = match what {
                CheckKind::Oqa => "an oqa",
                CheckKind::Nonuple | CheckKind::Derived => "a nonuple",
                CheckKind::Hopf => "a hopf",
                CheckKind::Qt => "a qt",
                _ => "a weakr",
            };
            return Err(wrong_kind(subject, want, other).into());
        }
    };
    set_progress_hook(None);
    finish_report(&rep, as_json)
}

fn check_expected(
    loader: &mut Loader,
    computed: FixtureObject,
    subject: &str,
    fixture: &str,
    as_json: bool,
    order: Option<&str>,
) -> Outcome {
    let t = match computed {
        FixtureObject::Oqa(c) => c.r,
        FixtureObject::Tensor(t) => t,
        other => return Err(wrong_kind(subject, "an oqa or tensor", &other).into()),
    };
    let expected = match loader.load(fixture)? {
        FixtureObject::Matrix(e) => e,
        other => return Err(wrong_kind(fixture, "a matrix", &other).into()),
    };
    let spec = match order {
        Some(o) => o.parse()?,
        None => expected.ordering,
    };
    let diff = compare_to_expected(&t, &expected, spec)?;
    let text = if as_json {
        pretty(&diff.to_json())
    } else {
        diff.to_string()
    };
    emit(&text, None)?;
    if diff.fully_explained() {
        Ok(())
    } else {
        Err(Failure::Verdict(json!({
            "error": {
                "kind": "verdict_failure",
                "subject": format!("{subject} against {fixture}"),
                "undocumented_diffs": diff.undocumented().count(),
                "stale_typo_records": diff.stale_typos.len(),
            }
        })))
    }
}

fn arity(what: &str, inputs: &[String], allowed: &[usize]) -> Result<(), Error> {
    if allowed.contains(&inputs.len()) {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "build {what} takes {} reference(s), got {}",
            allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
            inputs.len()
        )))
    }
}

fn run_build(loader: &mut Loader, what: BuildKind, inputs: &[String], output: Option<&PathBuf>) -> Outcome {
    let mut load = |i: usize| loader.load_certified(&inputs[i]);
    let oqa = |o: FixtureObject, r: &str| match o {
        FixtureObject::Oqa(c) => Ok(c),
        other => Err(wrong_kind(r, "an oqa", &other)),
    };
    let nonuple = |o: FixtureObject, r: &str| match o {
        FixtureObject::Nonuple(n) => Ok(*n),
        other => Err(wrong_kind(r, "a nonuple", &other)),
    };
    let qt = |o: FixtureObject, r: &str| match o {
        FixtureObject::Quasitriangular { hopf, p } => Ok((hopf, p)),
        other => Err(wrong_kind(r, "a qt", &other)),
    };
    let weakr = |o: FixtureObject, r: &str| match o {
        FixtureObject::WeakR { h, hp, r: x } => Ok((h, hp, x)),
        other => Err(wrong_kind(r, "a weakr", &other)),
    };
    let built = match what {
        BuildKind::Thm35 => {
            arity("thm35", inputs, &[2])?;
            let a = nonuple(load(0)?, &inputs[0])?;
            let b = nonuple(load(1)?, &inputs[1])?;
            FixtureObject::Oqa(build_thm35(&a, &b)?)
        }
        BuildKind::Thm36 => {
            arity("thm36", inputs, &[1])?;
            FixtureObject::Oqa(build_thm36(&nonuple(load(0)?, &inputs[0])?)?)
        }
        BuildKind::Thm37 => {
            arity("thm37", inputs, &[1])?;
            FixtureObject::Oqa(build_thm37(&oqa(load(0)?, &inputs[0])?)?)
        }
        BuildKind::Radford => {
            arity("radford", inputs, &[1])?;
            FixtureObject::Oqa(radford_double(&oqa(load(0)?, &inputs[0])?)?)
        }
        BuildKind::TensorOqa => {
            arity("tensor-oqa", inputs, &[2])?;
            let a = oqa(load(0)?, &inputs[0])?;
            let b = oqa(load(1)?, &inputs[1])?;
            FixtureObject::Oqa(tensor_oqa(&a, &b)?)
        }
        BuildKind::QtOqa => {
            arity("qt-oqa", inputs, &[1])?;
            let (h, p) = qt(load(0)?, &inputs[0])?;
            FixtureObject::Oqa(qt_to_oqa(&h, &p)?)
        }
        BuildKind::Bicrossed => {
            arity("bicrossed", inputs, &[1, 3])?;
            let (h, hp, r) = weakr(load(0)?, &inputs[0])?;
            if inputs.len() == 1 {
                FixtureObject::Hopf(bicrossed_coproduct(&h, &hp, &r)?)
            } else {
                let (h1, p) = qt(load(1)?, &inputs[1])?;
                let (h2, pp) = qt(load(2)?, &inputs[2])?;
                same_hopf(&h, &h1, &inputs[1])?;
                same_hopf(&hp, &h2, &inputs[2])?;
                let (hopf, p) = qt_bicrossed(&h, &hp, &p, &pp, &r)?;
                FixtureObject::Quasitriangular { hopf, p }
            }
        }
        BuildKind::Cor39 => {
            arity("cor39", inputs, &[3])?;
            let (h, p) = qt(load(0)?, &inputs[0])?;
            let (hp, pp) = qt(load(1)?, &inputs[1])?;
            let (h1, h2, r) = weakr(load(2)?, &inputs[2])?;
            same_hopf(&h, &h1, &inputs[2])?;
            same_hopf(&hp, &h2, &inputs[2])?;
            FixtureObject::Oqa(cor39_oqa(&h, &hp, &p, &pp, &r)?)
        }
    };
    emit(&pretty(&object_to_json(&built)), output)?;
    Ok(())
}

fn same_hopf(a: &oqa_core::hopf::HopfAlgebra, b: &oqa_core::hopf::HopfAlgebra, r: &str) -> Result<(), Error> {
    let same = oqa_core::algebra::same_algebra(&a.algebra, &b.algebra)
        && a.delta == b.delta
        && a.counit == b.counit
        && a.antipode == b.antipode;
    if same {
        Ok(())
    } else {
        Err(Error::ComponentMismatch(format!(
            "{r} uses a different Hopf algebra than {}",
            a.name()
        )))
    }
}

fn run_export(
    loader: &mut Loader,
    what: ExportKind,
    subject: &str,
    order: Option<&str>,
    format: Format,
    set: &[String],
    output: Option<&PathBuf>,
) -> Outcome {
    let mut o = loader.load(subject)?;
    if !set.is_empty() {
        o = substitute_object(&o, &parse_assignment(set)?)?;
    }
    if let ExportKind::Bundle = what {
        emit(&pretty(&object_to_json(&o)), output)?;
        return Ok(());
    }
    let spec = ordering(order)?;
    let m = match o {
        FixtureObject::Oqa(c) => to_matrix(&c.r, spec)?,
        FixtureObject::Tensor(t) => to_matrix(&t, spec)?,
        FixtureObject::Matrix(e) => {
            if order.is_some() && spec != e.ordering {
                return Err(Error::Input(format!(
                    "{subject} is stored under {}; it cannot be reordered",
                    e.ordering
                ))
                .into());
            }
            e.matrix()?
        }
        other => return Err(wrong_kind(subject, "an oqa, tensor or matrix", &other).into()),
    };
    let text = match format {
        Format::Csv => m.to_csv(),
        Format::Json => {
            let mut v = m.to_json();
            v["ordering"] = json!(spec.to_string());
            pretty(&v)
        }
    };
    emit(&text, output)?;
    Ok(())
}

fn run_eval(loader: &mut Loader, subject: &str, set: &[String], output: Option<&PathBuf>) -> Outcome {
    let assignment = parse_assignment(set)?;
    let o = loader.load_certified(subject)?;
    let mut e = substitute_object(&o, &assignment)?;
    if let Some(rep) = certify_object(&mut e) {
        if !rep.passed() {
            eprintln!("{rep}");
            return Err(Failure::Verdict(verdict_failure(&rep)));
        }
    }
    emit(&pretty(&object_to_json(&e)), output)?;
    Ok(())
}

fn run_catalog(action: &CatalogAction) -> Outcome {
    match action {
        CatalogAction::List { json: as_json } => {
            let text = if *as_json {
                let entries: Vec<Value> = catalog::ENTRIES
                    .iter()
                    .map(|(n, d)| json!({ "name": n, "description": d }))
                    .collect();
                pretty(&Value::Array(entries))
            } else {
                let width = catalog::ENTRIES
                    .iter()
                    .map(|(n, _)| n.chars().count())
                    .max()
                    .unwrap_or(0);
                catalog::ENTRIES
                    .iter()
                    .map(|(n, d)| format!("{n:<width$}  {d}\n"))
                    .collect()
            };
            emit(&text, None)?;
        }
        CatalogAction::Export { name, output } => {
            let f = catalog::catalog_get(name)?;
            emit(&pretty(&object_to_json(&f.object)), output.as_ref())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let mut loader = Loader { stdin_used: false };
    match &cli.command {
        Command::Check {
            what,
            subject,
            fixture,
            json,
            order,
        } => run_check(&mut loader, *what, subject, fixture.as_deref(), *json, order.as_deref()),
        Command::Build { what, inputs, output } => run_build(&mut loader, *what, inputs, output.as_ref()),
        Command::Export {
            what,
            subject,
            order,
            format,
            set,
            output,
        } => run_export(
            &mut loader,
            *what,
            subject,
            order.as_deref(),
            *format,
            set,
            output.as_ref(),
        ),
        Command::Eval { subject, set, output } => run_eval(&mut loader, subject, set, output.as_ref()),
        Command::Catalog { action } => run_catalog(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(v)) => {
            eprintln!("{}", serde_json::to_string(&v).expect("JSON values serialize"));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            let v = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string(&v).expect("JSON values serialize"));
            ExitCode::from(2)
        }
    }
}
