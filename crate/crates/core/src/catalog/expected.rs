//! Expected-output matrices transcribed from printed tables, the basis
//! orderings used to flatten computed tensors into matrices, and the
//! entrywise comparison between the two.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::Construction;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};
use crate::tensor::TensorElement;

/// Order of the `E_ij` basis inside a matrix-algebra leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryOrder {
    RowMajor,
    ColumnMajor,
}

/// Which leg of a pair `h⊗h'` varies slowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    FirstMajor,
    SecondMajor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderingSpec {
    pub entries: EntryOrder,
    pub pairs: PairOrder,
}

impl OrderingSpec {
    /// The ordering under which the printed matrices are reproduced.
    pub const FROZEN: OrderingSpec = OrderingSpec {
        entries: EntryOrder::RowMajor,
        pairs: PairOrder::FirstMajor,
    };

    pub fn all() -> [OrderingSpec; 4] {
        let mut out = [Self::FROZEN; 4];
        let mut k = 0;
        for entries in [EntryOrder::RowMajor, EntryOrder::ColumnMajor] {
            for pairs in [PairOrder::FirstMajor, PairOrder::SecondMajor] {
                out[k] = OrderingSpec { entries, pairs };
                k += 1;
            }
        }
        out
    }
}

impl Default for OrderingSpec {
    fn default() -> Self {
        Self::FROZEN
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.entries {
            EntryOrder::RowMajor => "row-major",
            EntryOrder::ColumnMajor => "column-major",
        };
        let p = match self.pairs {
            PairOrder::FirstMajor => "first-major",
            PairOrder::SecondMajor => "second-major",
        };
        write!(f, "{e},{p}")
    }
}

impl FromStr for OrderingSpec {
    type Err = Error;

    /// Comma-separated words from `row-major`/`column-major` and
    /// `first-major`/`second-major`; omitted parts take the frozen default.
    fn from_str(text: &str) -> Result<Self> {
        let mut spec = Self::FROZEN;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "row-major" => spec.entries = EntryOrder::RowMajor,
                "column-major" => spec.entries = EntryOrder::ColumnMajor,
                "first-major" => spec.pairs = PairOrder::FirstMajor,
                "second-major" => spec.pairs = PairOrder::SecondMajor,
                other => return Err(Error::Input(format!("unknown ordering '{other}'"))),
            }
        }
        Ok(spec)
    }
}

/// A sparse square matrix of scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub size: usize,
    pub cells: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.cells.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn map_cells(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        let mut cells = BTreeMap::new();
        for (k, v) in &self.cells {
            let w = f(v)?;
            if !w.is_zero() {
                cells.insert(*k, w);
            }
        }
        Ok(Matrix { size: self.size, cells })
    }

    /// One line per row, cells separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        json!({ "size": self.size, "rows": rows })
    }
}

/// Position of basis index `k` of one leg under `entries`.
fn leg_position(t: &TensorElement, leg: usize, k: usize, entries: EntryOrder) -> usize {
    match (t.legs()[leg].construction(), entries) {
        (Construction::Matrix(n), EntryOrder::ColumnMajor) => (k % n) * n + k / n,
        _ => k,
    }
}

/// Flattens a tensor with an even number of (ungrouped) legs into a square
/// matrix: the first half of the legs indexes rows, the second half columns.
pub fn to_matrix(t: &TensorElement, ordering: OrderingSpec) -> Result<Matrix> {
    let u = t.ungroup();
    let k = u.num_legs();
    if !k.is_multiple_of(2) {
        return Err(Error::ShapeMismatch(format!(
            "cannot split {k} legs into rows and columns"
        )));
    }
    let half = k / 2;
    let dims: Vec<usize> = u.legs().iter().map(|l| l.dim()).collect();
    if dims[..half] != dims[half..] {
        return Err(Error::ShapeMismatch("row and column legs differ in dimension".into()));
    }
    let size: usize = dims[..half].iter().product();
    let combine = |idx: &[usize], offset: usize| -> usize {
        let order: Vec<usize> = match ordering.pairs {
            PairOrder::FirstMajor => (0..half).collect(),
            PairOrder::SecondMajor => (0..half).rev().collect(),
        };
        order.iter().fold(0, |acc, &l| {
            acc * dims[offset + l] + leg_position(&u, offset + l, idx[offset + l], ordering.entries)
        })
    };
    let cells = u
        .terms()
        .iter()
        .map(|(idx, c)| ((combine(idx, 0), combine(idx, half)), c.clone()))
        .collect();
    Ok(Matrix { size, cells })
}

/// A printed cell that disagrees with the computed matrix while the
/// computed tensor satisfies every axiom.
#[derive(Clone, Debug, PartialEq)]
pub struct SuspectedTypo {
    pub row: usize,
    pub col: usize,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

/// A printed matrix as stored in a fixture file.
#[derive(Clone, Debug)]
pub struct ExpectedMatrix {
    pub name: String,
    pub description: String,
    /// Cells in the printed symbols, before substitution.
    pub printed: Matrix,
    pub substitute: Vec<(String, Scalar)>,
    pub ordering: OrderingSpec,
    pub amendments: Vec<String>,
    pub suspected_typos: Vec<SuspectedTypo>,
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("fixture lacks '{key}'")))
}

fn str_of(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::Input(format!("expected a string, found {v}")))
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Input(format!("expected a non-negative integer, found {v}")))
}

fn array_of(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Input(format!("expected an array, found {v}")))
}

impl ExpectedMatrix {
    pub fn from_json(v: &Value) -> Result<Self> {
        let params: Vec<String> = array_of(field(v, "params")?)?
            .iter()
            .map(|p| str_of(p).map(String::from))
            .collect::<Result<_>>()?;
        let pr: Vec<&str> = params.iter().map(String::as_str).collect();
        let parse = |t: &str| parse_scalar(t, &pr);
        let size = usize_of(field(v, "size")?)?;
        let mut amendments = Vec::new();
        let mut cells = BTreeMap::new();
        let mut put = |i: usize, j: usize, text: &str| -> Result<()> {
            if i >= size || j >= size {
                return Err(Error::Input(format!(
                    "cell ({}, {}) outside a {size}x{size} matrix",
                    i + 1,
                    j + 1
                )));
            }
            let c = parse(text)?;
            if !c.is_zero() && cells.insert((i, j), c).is_some() {
                return Err(Error::Input(format!("cell ({}, {}) given twice", i + 1, j + 1)));
            }
            Ok(())
        };

        if let Some(rows) = v.get("rows") {
            let mut rows: Vec<Vec<String>> = array_of(rows)?
                .iter()
                .map(|r| array_of(r)?.iter().map(|c| str_of(c).map(String::from)).collect())
                .collect::<Result<_>>()?;
            for a in array_of(v.get("amendments").unwrap_or(&json!([])))? {
                let row = usize_of(field(a, "row")?)?;
                let at = usize_of(field(a, "insert_zero_at")?)?;
                let why = str_of(field(a, "reason")?)?;
                let r = rows
                    .get_mut(row.wrapping_sub(1))
                    .ok_or_else(|| Error::Input(format!("amendment names missing row {row}")))?;
                if at == 0 || at > r.len() + 1 {
                    return Err(Error::Input(format!("amendment column {at} out of range")));
                }
                r.insert(at - 1, "0".into());
                amendments.push(format!("row {row}: zero inserted at column {at}; {why}"));
            }
            if rows.len() != size {
                return Err(Error::Input(format!("{} rows for a {size}x{size} matrix", rows.len())));
            }
            for (i, r) in rows.iter().enumerate() {
                if r.len() != size {
                    return Err(Error::Input(format!(
                        "row {} has {} entries, expected {size}",
                        i + 1,
                        r.len()
                    )));
                }
                for (j, c) in r.iter().enumerate() {
                    put(i, j, c)?;
                }
            }
        } else {
            let bs = usize_of(field(v, "block_size")?)?;
            let blocks = field(v, "blocks")?
                .as_object()
                .ok_or_else(|| Error::Input("'blocks' must be an object".into()))?;
            for (name, entries) in blocks {
                let (bi, bj) = two_digits(name.strip_prefix('A'), name)?;
                for e in array_of(entries)? {
                    let value = str_of(field(e, "value")?)?;
                    for cell in array_of(field(e, "cells")?)? {
                        let cell = str_of(cell)?;
                        let (i, j) = two_digits(cell.strip_prefix('b'), cell)?;
                        if i >= bs || j >= bs {
                            return Err(Error::Input(format!("{cell} outside a {bs}x{bs} block")));
                        }
                        put(bi * bs + i, bj * bs + j, value)?;
                    }
                }
            }
        }

        let mut substitute = Vec::new();
        if let Some(obj) = v.get("substitute").and_then(Value::as_object) {
            for (k, t) in obj {
                substitute.push((k.clone(), parse(str_of(t)?)?));
            }
        }
        let mut suspected_typos = Vec::new();
        for t in array_of(v.get("suspected_typos").unwrap_or(&json!([])))? {
            suspected_typos.push(SuspectedTypo {
                row: usize_of(field(t, "row")?)?,
                col: usize_of(field(t, "col")?)?,
                printed: str_of(field(t, "printed")?)?.into(),
                computed: str_of(field(t, "computed")?)?.into(),
                note: str_of(field(t, "note")?)?.into(),
            });
        }
        let ordering = match v.get("ordering") {
            Some(o) => str_of(o)?.parse()?,
            None => OrderingSpec::FROZEN,
        };
        Ok(ExpectedMatrix {
            name: str_of(field(v, "name")?)?.into(),
            description: v.get("description").and_then(Value::as_str).unwrap_or_default().into(),
            printed: Matrix { size, cells },
            substitute,
            ordering,
            amendments,
            suspected_typos,
        })
    }

    /// The printed matrix with the substitutions applied.
    pub fn matrix(&self) -> Result<Matrix> {
        self.printed.map_cells(|c| {
            self.substitute
                .iter()
                .try_fold(c.clone(), |acc, (name, value)| acc.substitute_scalar(name, value))
        })
    }

    fn typo_at(&self, row: usize, col: usize) -> Option<&SuspectedTypo> {
        self.suspected_typos.iter().find(|t| t.row == row && t.col == col)
    }
}

/// `"12"` → `(0, 1)`.
fn two_digits(digits: Option<&str>, whole: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("cannot read '{whole}' as a two-digit position"));
    let d = digits.ok_or_else(bad)?.as_bytes();
    if d.len() != 2 || !d.iter().all(|c| (b'1'..=b'9').contains(c)) {
        return Err(bad());
    }
    Ok(((d[0] - b'1') as usize, (d[1] - b'1') as usize))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellDiff {
    /// One-based row and column.
    pub row: usize,
    pub col: usize,
    pub expected: Scalar,
    pub computed: Scalar,
    /// Whether the fixture records this cell as a suspected printing error.
    pub documented: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffReport {
    pub fixture: String,
    pub ordering: OrderingSpec,
    pub size: usize,
    pub diffs: Vec<CellDiff>,
    /// Documented suspected typos whose cell now agrees, so the record is stale.
    pub stale_typos: Vec<(usize, usize)>,
}

impl DiffReport {
    pub fn is_exact(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn undocumented(&self) -> impl Iterator<Item = &CellDiff> {
        self.diffs.iter().filter(|d| !d.documented)
    }

    /// Every difference is a documented suspected typo and no record is stale.
    pub fn fully_explained(&self) -> bool {
        self.undocumented().next().is_none() && self.stale_typos.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixture": self.fixture,
            "ordering": self.ordering.to_string(),
            "size": self.size,
            "exact": self.is_exact(),
            "diffs": self.diffs.iter().map(|d| json!({
                "row": d.row,
                "col": d.col,
                "expected": d.expected.to_string(),
                "computed": d.computed.to_string(),
                "documented": d.documented,
            })).collect::<Vec<_>>(),
            "stale_typos": self.stale_typos.iter().map(|(r, c)| json!([r, c])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} under {}: {} differing cell(s)",
            self.fixture,
            self.ordering,
            self.diffs.len()
        )?;
        for d in &self.diffs {
            writeln!(
                f,
                "  ({}, {}): expected {}, computed {}{}",
                d.row,
                d.col,
                d.expected,
                d.computed,
                if d.documented { "  [suspected typo]" } else { "" }
            )?;
        }
        for (r, c) in &self.stale_typos {
            writeln!(f, "  ({r}, {c}): recorded typo no longer differs")?;
        }
        Ok(())
    }
}

/// Entrywise exact comparison of `computed` (flattened under `ordering`)
/// against the fixture matrix after substitution.
pub fn compare_to_expected(
    computed: &TensorElement,
    expected: &ExpectedMatrix,
    ordering: OrderingSpec,
) -> Result<DiffReport> {
    let got = to_matrix(computed, ordering)?;
    let want = expected.matrix()?;
    if got.size != want.size {
        return Err(Error::DimensionMismatch {
            expected: want.size,
            got: got.size,
        });
    }
    let keys: std::collections::BTreeSet<(usize, usize)> = got.cells.keys().chain(want.cells.keys()).copied().collect();
    let diffs: Vec<CellDiff> = keys
        .into_iter()
        .filter_map(|(i, j)| {
            let (e, c) = (want.get(i, j), got.get(i, j));
            (e != c).then(|| CellDiff {
                row: i + 1,
                col: j + 1,
                expected: e,
                computed: c,
                documented: expected.typo_at(i + 1, j + 1).is_some(),
            })
        })
        .collect();
    let stale_typos = expected
        .suspected_typos
        .iter()
        .filter(|t| !diffs.iter().any(|d| d.row == t.row && d.col == t.col))
        .map(|t| (t.row, t.col))
        .collect();
    Ok(DiffReport {
        fixture: expected.name.clone(),
        ordering,
        size: want.size,
        diffs,
        stale_typos,
    })
}
