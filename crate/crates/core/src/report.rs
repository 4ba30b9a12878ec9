//! Per-axiom verdicts produced by the checkers.

use std::cell::RefCell;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::scalar::Scalar;
use crate::tensor::{Difference, TensorElement};

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// First coefficient at which the two sides differ.
    Coefficient {
        index: Vec<String>,
        left: Scalar,
        right: Scalar,
    },
    Message(String),
}

impl From<Difference> for Witness {
    fn from(d: Difference) -> Self {
        Witness::Coefficient {
            index: d.index,
            left: d.left,
            right: d.right,
        }
    }
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Coefficient { index, left, right } => json!({
                "index": index,
                "left": left.to_string(),
                "right": right.to_string(),
            }),
            Witness::Message(m) => json!({ "message": m }),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Coefficient { index, left, right } => {
                write!(f, "at {}: {} != {}", index.join("⊗"), left, right)
            }
            Witness::Message(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub axiom: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("axiom".into(), Value::String(self.axiom.clone()));
        m.insert("pass".into(), Value::Bool(self.pass));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.to_json());
        }
        Value::Object(m)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.axiom)?;
        if let Some(w) = &self.witness {
            write!(f, "  ({w})")?;
        }
        Ok(())
    }
}

type Hook = Box<dyn Fn(&Verdict)>;

thread_local! {
    static PROGRESS: RefCell<Option<Hook>> = const { RefCell::new(None) };
}

/// Installs a callback invoked on this thread for every verdict recorded,
/// as it is recorded. Returns the previous hook.
pub fn set_progress_hook(hook: Option<Hook>) -> Option<Hook> {
    PROGRESS.with(|p| std::mem::replace(&mut *p.borrow_mut(), hook))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub subject: String,
    pub verdicts: Vec<Verdict>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            verdicts: Vec::new(),
        }
    }

    pub fn push(&mut self, verdict: Verdict) {
        PROGRESS.with(|p| {
            if let Some(h) = &*p.borrow() {
                h(&verdict);
            }
        });
        self.verdicts.push(verdict);
    }

    pub fn pass(&mut self, axiom: impl Into<String>) {
        self.push(Verdict {
            axiom: axiom.into(),
            pass: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: Witness) {
        self.push(Verdict {
            axiom: axiom.into(),
            pass: false,
            witness: Some(witness),
        });
    }

    pub fn flag(&mut self, axiom: impl Into<String>, ok: bool, why: impl FnOnce() -> String) {
        if ok {
            self.pass(axiom);
        } else {
            self.fail(axiom, Witness::Message(why()));
        }
    }

    /// Records an equation `left = right` between tensors; a computation
    /// error is recorded as a failure carrying the error message.
    pub fn equation(&mut self, axiom: impl Into<String>, sides: crate::Result<(TensorElement, TensorElement)>) {
        match sides {
            Ok((l, r)) => match l.first_difference(&r) {
                None if l == r => self.pass(axiom),
                None => self.fail(axiom, Witness::Message("legs of the two sides differ".into())),
                Some(d) => self.fail(axiom, d.into()),
            },
            Err(e) => self.fail(axiom, error_witness(&e)),
        }
    }

    /// Appends all verdicts of `other`, each axiom prefixed by `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut v in other.verdicts {
            v.axiom = format!("{prefix}{}", v.axiom);
            self.verdicts.push(v);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "pass": self.passed(),
            "verdicts": self.verdicts.iter().map(Verdict::to_json).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn error_witness(e: &Error) -> Witness {
    Witness::Message(format!("{} ({})", e, e.kind()))
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for v in &self.verdicts {
            writeln!(f, "  {v}")?;
        }
        write!(f, "{}", if self.passed() { "certified" } else { "not certified" })
    }
}
