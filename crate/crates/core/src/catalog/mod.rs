//! Built-in example objects and expected-output fixtures, looked up by
//! name. Every object is certified by its checker when it is loaded.

pub mod expected;
pub mod objects;

use std::path::PathBuf;

use serde_json::Value;

use crate::algebra::{matrix_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::hopf::{check_quasitriangular, check_weak_rmatrix, HopfAlgebra};
use crate::nonuple::Nonuple;
use crate::oqa::OqaCandidate;
use crate::report::CheckReport;
use crate::scalar::{parse_scalar, Scalar};
use crate::tensor::TensorElement;

pub use expected::{compare_to_expected, to_matrix, DiffReport, ExpectedMatrix, Matrix, OrderingSpec};

/// Environment variable naming a directory that overrides the bundled
/// fixture files.
pub const CATALOG_DIR_VAR: &str = "OQA_CATALOG_DIR";

#[derive(Clone, Debug)]
pub enum FixtureObject {
    Algebra(AlgebraRef),
    Oqa(OqaCandidate),
    Nonuple(Box<Nonuple>),
    Hopf(HopfAlgebra),
    /// A Hopf algebra with a quasitriangular element.
    Quasitriangular {
        hopf: HopfAlgebra,
        p: TensorElement,
    },
    /// Two Hopf algebras with a weak R-matrix between them.
    WeakR {
        h: HopfAlgebra,
        hp: HopfAlgebra,
        r: TensorElement,
    },
    Tensor(TensorElement),
    Matrix(Box<ExpectedMatrix>),
}

impl FixtureObject {
    pub fn kind(&self) -> &'static str {
        match self {
            FixtureObject::Algebra(_) => "algebra",
            FixtureObject::Oqa(_) => "oqa",
            FixtureObject::Nonuple(_) => "nonuple",
            FixtureObject::Hopf(_) => "hopf",
            FixtureObject::Quasitriangular { .. } => "qt",
            FixtureObject::WeakR { .. } => "weakr",
            FixtureObject::Tensor(_) => "tensor",
            FixtureObject::Matrix(_) => "matrix",
        }
    }
}

/// Runs the owning checker on `o`, marking it certified when it passes.
/// Algebras are validated on construction; tensors and matrices carry no
/// axioms, so those yield `None`.
pub fn certify_object(o: &mut FixtureObject) -> Option<CheckReport> {
    match o {
        FixtureObject::Oqa(c) => Some(c.certify()),
        FixtureObject::Nonuple(n) => Some(n.certify()),
        FixtureObject::Hopf(h) => Some(h.certify()),
        FixtureObject::Quasitriangular { hopf, p } => {
            let mut rep = hopf.certify();
            rep.absorb("", check_quasitriangular(hopf, p));
            rep.subject = format!("quasitriangular Hopf algebra {}", hopf.name());
            Some(rep)
        }
        FixtureObject::WeakR { h, hp, r } => {
            let mut rep = CheckReport::new(format!("weak R-matrix of ({}, {})", h.name(), hp.name()));
            rep.absorb("H:", h.certify());
            rep.absorb("H':", hp.certify());
            rep.absorb("", check_weak_rmatrix(h, hp, r));
            Some(rep)
        }
        FixtureObject::Algebra(_) | FixtureObject::Tensor(_) | FixtureObject::Matrix(_) => None,
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub object: FixtureObject,
    /// The report produced when the object was certified at load time.
    pub report: Option<CheckReport>,
}

/// Registered names with their argument forms and a short description.
pub const ENTRIES: &[(&str, &str)] = &[
    ("mn_oqa(n)", "matrix algebra M_n with p_{a,n} and D = U = f, n ≥ 2"),
    (
        "ex34_nonuple_case1",
        "nonuple on (M2, M3) with the first mixed element r",
    ),
    (
        "ex34_nonuple_case2",
        "nonuple on (M2, M3) with the second mixed element r",
    ),
    (
        "ex34_case2_r_inverse",
        "the inverse of the second mixed element as stated",
    ),
    (
        "ex45_H_oqa(nu)",
        "four-dimensional algebra with p(nu), D = id, U(x) = -x",
    ),
    ("ex45_Hprime_oqa", "KZ2 with p' and D' = U' = id"),
    (
        "ex45_nonuple(nu)",
        "nonuple on (H4, KZ2) with r = ½(1⊗1 + 1⊗t + g⊗1 − g⊗t)",
    ),
    (
        "sweedler4_hopf",
        "four-dimensional Hopf algebra, g group-like, x skew-primitive",
    ),
    ("kz2_hopf", "group algebra of Z2"),
    ("sweedler4_qt(nu)", "four-dimensional Hopf algebra with p(nu)"),
    ("kz2_qt", "KZ2 with p'"),
    ("ex45_weak_r", "weak R-matrix r between H4 and KZ2"),
    (
        "expected_ex41_alpha",
        "printed 36×36 matrix for the first mixed nonuple",
    ),
    ("expected_ex43_alpha", "printed 16×16 matrix for M2 with itself"),
    ("expected_ex45_alpha(nu)", "printed α̃ over (H4, KZ2, H4, KZ2)"),
    ("trivial_oqa(A)", "(A, 1⊗1, id, id) for A among K, KZ2, H4, M<n>"),
];

/// Splits `name(arg)` into `("name", Some("arg"))`.
fn split_call(text: &str) -> Result<(&str, Option<&str>)> {
    let text = text.trim();
    match text.find('(') {
        None => Ok((text, None)),
        Some(open) => {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Input(format!("unbalanced parentheses in '{text}'")))?;
            Ok((text[..open].trim(), Some(inner.trim())))
        }
    }
}

fn nu_arg(arg: Option<&str>) -> Result<Scalar> {
    parse_scalar(arg.unwrap_or("nu"), &["nu"])
}

fn no_arg(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::Input(format!("{name} takes no argument, got '{a}'"))),
    }
}

fn algebra_by_name(name: &str) -> Result<AlgebraRef> {
    match name {
        "K" => Ok(objects::ground_field()),
        "KZ2" => Ok(objects::kz2()),
        "H4" => Ok(objects::sweedler4()),
        _ => match name.strip_prefix('M').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=6).contains(&n) => Ok(matrix_algebra(n)),
            _ => Err(Error::Input(format!("unknown algebra '{name}'"))),
        },
    }
}

fn fatal(name: &str, report: &CheckReport) -> Error {
    let first = report.first_failure().map(|v| v.to_string()).unwrap_or_default();
    Error::Input(format!("catalog entry {name} failed certification: {first}"))
}

fn certified_oqa(name: &str, mut c: OqaCandidate) -> Result<Fixture> {
    let report = c.certify();
    if !report.passed() {
        return Err(fatal(name, &report));
    }
    Ok(Fixture {
        name: name.into(),
        object: FixtureObject::Oqa(c),
        report: Some(report),
    })
}

fn certified_nonuple(name: &str, mut n: Nonuple) -> Result<Fixture> {
    let report = n.certify();
    if !report.passed() {
        return Err(fatal(name, &report));
    }
    Ok(Fixture {
        name: name.into(),
        object: FixtureObject::Nonuple(Box::new(n)),
        report: Some(report),
    })
}

fn certified_hopf(name: &str, mut h: HopfAlgebra) -> Result<HopfAlgebra> {
    let report = h.certify();
    if !report.passed() {
        return Err(fatal(name, &report));
    }
    Ok(h)
}

fn plain(name: &str, object: FixtureObject) -> Fixture {
    Fixture {
        name: name.into(),
        object,
        report: None,
    }
}

/// Reads a fixture data file, preferring the directory named by
/// [`CATALOG_DIR_VAR`] over the bundled copy.
pub fn data_file(file: &str) -> Result<Value> {
    let text = match std::env::var_os(CATALOG_DIR_VAR) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            std::fs::read_to_string(&path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
        }
        None => match file {
            "expected_ex41_alpha.json" => include_str!("../../data/expected_ex41_alpha.json").to_string(),
            "expected_ex43_alpha.json" => include_str!("../../data/expected_ex43_alpha.json").to_string(),
            _ => return Err(Error::Input(format!("no bundled data file {file}"))),
        },
    };
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{file}: {e}")))
}

pub fn expected_matrix(name: &str) -> Result<ExpectedMatrix> {
    ExpectedMatrix::from_json(&data_file(&format!("{name}.json"))?)
}

/// Looks up `name`, builds the object and certifies it.
pub fn catalog_get(name: &str) -> Result<Fixture> {
    let (base, arg) = split_call(name)?;
    let full = name.trim();
    match base {
        "mn_oqa" => {
            let n: usize = arg
                .ok_or_else(|| Error::Input("mn_oqa needs a size, e.g. mn_oqa(2)".into()))?
                .parse()
                .map_err(|_| Error::Input(format!("bad size in '{full}'")))?;
            if !(2..=4).contains(&n) {
                return Err(Error::Input("mn_oqa is available for 2 ≤ n ≤ 4".into()));
            }
            certified_oqa(full, objects::mn_oqa(n)?)
        }
        "ex34_nonuple_case1" | "ex34_nonuple_case2" => {
            no_arg(base, arg)?;
            let case = if base.ends_with('1') { 1 } else { 2 };
            certified_nonuple(full, objects::ex34_nonuple(case)?)
        }
        "ex34_case2_r_inverse" => {
            no_arg(base, arg)?;
            Ok(plain(full, FixtureObject::Tensor(objects::ex34_case2_stated_inverse())))
        }
        "ex45_H_oqa" => certified_oqa(full, objects::ex45_h_oqa(&nu_arg(arg)?)?),
        "ex45_Hprime_oqa" => {
            no_arg(base, arg)?;
            certified_oqa(full, objects::ex45_hprime_oqa()?)
        }
        "ex45_nonuple" => certified_nonuple(full, objects::ex45_nonuple(&nu_arg(arg)?)?),
        "sweedler4_hopf" | "kz2_hopf" => {
            no_arg(base, arg)?;
            let h = if base == "kz2_hopf" {
                objects::kz2_hopf()
            } else {
                objects::sweedler4_hopf()
            };
            let h = certified_hopf(full, h)?;
            let report = Some(crate::hopf::check_hopf(&h));
            Ok(Fixture {
                name: full.into(),
                object: FixtureObject::Hopf(h),
                report,
            })
        }
        "sweedler4_qt" | "kz2_qt" => {
            let (h, p) = if base == "kz2_qt" {
                no_arg(base, arg)?;
                (objects::kz2_hopf(), objects::kz2_p())
            } else {
                (objects::sweedler4_hopf(), objects::sweedler_p(&nu_arg(arg)?))
            };
            let hopf = certified_hopf(full, h)?;
            let report = check_quasitriangular(&hopf, &p);
            if !report.passed() {
                return Err(fatal(full, &report));
            }
            Ok(Fixture {
                name: full.into(),
                object: FixtureObject::Quasitriangular { hopf, p },
                report: Some(report),
            })
        }
        "ex45_weak_r" => {
            no_arg(base, arg)?;
            let h = certified_hopf(full, objects::sweedler4_hopf())?;
            let hp = certified_hopf(full, objects::kz2_hopf())?;
            let r = objects::ex45_r();
            let report = check_weak_rmatrix(&h, &hp, &r);
            if !report.passed() {
                return Err(fatal(full, &report));
            }
            Ok(Fixture {
                name: full.into(),
                object: FixtureObject::WeakR { h, hp, r },
                report: Some(report),
            })
        }
        "expected_ex41_alpha" | "expected_ex43_alpha" => {
            no_arg(base, arg)?;
            Ok(plain(full, FixtureObject::Matrix(Box::new(expected_matrix(base)?))))
        }
        "expected_ex45_alpha" => Ok(plain(
            full,
            FixtureObject::Tensor(objects::expected_ex45_alpha(&nu_arg(arg)?)),
        )),
        "trivial_oqa" => {
            let a = algebra_by_name(arg.ok_or_else(|| Error::Input("trivial_oqa needs an algebra name".into()))?)?;
            certified_oqa(full, objects::trivial_oqa(&a)?)
        }
        _ => Err(Error::Input(format!("unknown catalog entry '{base}'"))),
    }
}
