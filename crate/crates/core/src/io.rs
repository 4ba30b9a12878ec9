//! JSON encoding and decoding of algebras, maps, tensors and the bundles
//! built from them. Encoding is deterministic: basis order, term order and
//! key order are fixed.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{matrix_algebra, opposite, tensor_algebra, Algebra, AlgebraMap, AlgebraRef, Construction};
use crate::catalog::{ExpectedMatrix, FixtureObject};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::SparseVec;
use crate::nonuple::Nonuple;
use crate::oqa::OqaCandidate;
use crate::scalar::{parse_scalar, Assignment, Scalar};
use crate::tensor::TensorElement;

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| bad(format!("expected a string, found {v}")))
}

fn as_obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("expected an object, found {v}")))
}

fn as_arr(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("expected an array, found {v}")))
}

fn sorted_union(lists: impl IntoIterator<Item = Vec<String>>) -> Vec<String> {
    let mut out: Vec<String> = lists.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    out
}

fn vec_params(v: &SparseVec) -> Vec<String> {
    sorted_union(v.iter().map(|(_, c)| c.params()))
}

fn map_params(m: &AlgebraMap) -> Vec<String> {
    sorted_union(m.images().iter().map(vec_params))
}

// ---------------------------------------------------------------- encoding

pub fn vec_to_json(a: &Algebra, v: &SparseVec) -> Value {
    let mut m = Map::new();
    for (k, c) in v {
        m.insert(a.label(*k).to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

pub fn algebra_to_json(a: &AlgebraRef) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(a.name()));
    m.insert("params".into(), json!(a.params()));
    m.insert("basis".into(), json!(a.basis()));
    m.insert("unit".into(), vec_to_json(a, a.unit()));
    let mut mul = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let out = a.mul_basis(i, j);
            if !out.is_empty() {
                mul.push(json!({ "l": a.label(i), "r": a.label(j), "out": vec_to_json(a, out) }));
            }
        }
    }
    m.insert("mul".into(), Value::Array(mul));
    match a.construction() {
        Construction::Generic => {}
        Construction::Matrix(n) => {
            m.insert("construction".into(), json!({ "kind": "matrix", "n": n }));
        }
        Construction::Tensor(x, y) => {
            m.insert(
                "construction".into(),
                json!({ "kind": "tensor", "factors": [algebra_to_json(x), algebra_to_json(y)] }),
            );
        }
        Construction::Opposite(x) => {
            m.insert(
                "construction".into(),
                json!({ "kind": "opposite", "of": algebra_to_json(x) }),
            );
        }
    }
    Value::Object(m)
}

pub fn map_to_json(m: &AlgebraMap) -> Value {
    let src = m.source();
    let mut images = Map::new();
    for (i, v) in m.images().iter().enumerate() {
        images.insert(src.label(i).to_string(), vec_to_json(m.target(), v));
    }
    json!({ "images": images })
}

pub fn tensor_to_json(t: &TensorElement) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|(idx, c)| json!({ "idx": t.labels(idx), "c": c.to_string() }))
        .collect();
    json!({
        "legs": t.legs().iter().map(|l| l.name()).collect::<Vec<_>>(),
        "terms": terms,
    })
}

pub fn oqa_to_json(c: &OqaCandidate) -> Value {
    let params = sorted_union([c.algebra.params(), c.r.params(), map_params(&c.d), map_params(&c.u)]);
    json!({
        "kind": "oqa",
        "params": params,
        "algebra": algebra_to_json(&c.algebra),
        "r": tensor_to_json(&c.r),
        "D": map_to_json(&c.d),
        "U": map_to_json(&c.u),
    })
}

pub fn nonuple_to_json(n: &Nonuple) -> Value {
    let params = sorted_union([
        n.h.params(),
        n.hp.params(),
        n.p.params(),
        n.pp.params(),
        n.r.params(),
        map_params(&n.d),
        map_params(&n.u),
        map_params(&n.dp),
        map_params(&n.up),
    ]);
    json!({
        "kind": "nonuple",
        "params": params,
        "H": algebra_to_json(&n.h),
        "H'": algebra_to_json(&n.hp),
        "p": tensor_to_json(&n.p),
        "p'": tensor_to_json(&n.pp),
        "r": tensor_to_json(&n.r),
        "D": map_to_json(&n.d),
        "U": map_to_json(&n.u),
        "D'": map_to_json(&n.dp),
        "U'": map_to_json(&n.up),
    })
}

fn hopf_params(h: &HopfAlgebra) -> Vec<String> {
    sorted_union(
        [h.algebra.params(), map_params(&h.antipode)]
            .into_iter()
            .chain(h.delta.iter().map(|d| d.params()))
            .chain(h.counit.iter().map(|c| c.params())),
    )
}

pub fn hopf_to_json(h: &HopfAlgebra) -> Value {
    let a = &h.algebra;
    let Value::Object(mut m) = algebra_to_json(a) else {
        unreachable!("algebra encodes as an object")
    };
    m.insert("params".into(), json!(hopf_params(h)));
    let mut delta = Map::new();
    let mut counit = Map::new();
    for i in 0..a.dim() {
        delta.insert(a.label(i).to_string(), tensor_to_json(&h.delta[i]));
        counit.insert(a.label(i).to_string(), json!(h.counit[i].to_string()));
    }
    m.insert("delta".into(), Value::Object(delta));
    m.insert("counit".into(), Value::Object(counit));
    m.insert("antipode".into(), map_to_json(&h.antipode));
    let mut out = Map::new();
    out.insert("kind".into(), json!("hopf"));
    out.extend(m);
    Value::Object(out)
}

fn with_kind(kind: &str, params: Vec<String>, rest: Value) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("params".into(), json!(params));
    if let Value::Object(r) = rest {
        m.extend(r);
    }
    Value::Object(m)
}

fn tensor_bundle(t: &TensorElement) -> Value {
    let mut algebras: Vec<AlgebraRef> = Vec::new();
    for l in t.legs() {
        if !algebras.iter().any(|a| a.name() == l.name()) {
            algebras.push(l.clone());
        }
    }
    let Value::Object(body) = tensor_to_json(t) else {
        unreachable!("tensor encodes as an object")
    };
    let mut m = Map::new();
    m.insert(
        "algebras".into(),
        Value::Array(algebras.iter().map(algebra_to_json).collect()),
    );
    m.extend(body);
    with_kind("tensor", t.params(), Value::Object(m))
}

fn matrix_bundle(e: &ExpectedMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..e.printed.size)
        .map(|i| (0..e.printed.size).map(|j| e.printed.get(i, j).to_string()).collect())
        .collect();
    let subst: Map<String, Value> = e
        .substitute
        .iter()
        .map(|(k, v)| (k.clone(), json!(v.to_string())))
        .collect();
    let params = sorted_union(
        e.printed
            .cells
            .values()
            .map(|c| c.params())
            .chain(e.substitute.iter().map(|(k, v)| {
                let mut p = v.params();
                p.push(k.clone());
                p
            })),
    );
    json!({
        "kind": "matrix",
        "name": e.name,
        "description": e.description,
        "params": params,
        "substitute": subst,
        "size": e.printed.size,
        "ordering": e.ordering.to_string(),
        "rows": rows,
        "applied_amendments": e.amendments,
        "suspected_typos": e.suspected_typos.iter().map(|t| json!({
            "row": t.row, "col": t.col, "printed": t.printed, "computed": t.computed, "note": t.note,
        })).collect::<Vec<_>>(),
    })
}

pub fn object_to_json(o: &FixtureObject) -> Value {
    match o {
        FixtureObject::Algebra(a) => with_kind("algebra", a.params(), algebra_to_json(a)),
        FixtureObject::Oqa(c) => oqa_to_json(c),
        FixtureObject::Nonuple(n) => nonuple_to_json(n),
        FixtureObject::Hopf(h) => hopf_to_json(h),
        FixtureObject::Quasitriangular { hopf, p } => json!({
            "kind": "qt",
            "params": sorted_union([hopf_params(hopf), p.params()]),
            "hopf": hopf_to_json(hopf),
            "p": tensor_to_json(p),
        }),
        FixtureObject::WeakR { h, hp, r } => json!({
            "kind": "weakr",
            "params": sorted_union([hopf_params(h), hopf_params(hp), r.params()]),
            "H": hopf_to_json(h),
            "H'": hopf_to_json(hp),
            "r": tensor_to_json(r),
        }),
        FixtureObject::Tensor(t) => tensor_bundle(t),
        FixtureObject::Matrix(e) => matrix_bundle(e),
    }
}

// ---------------------------------------------------------------- decoding

/// Decoding state: the parameter names allowed in scalars and the algebras
/// seen so far, by name.
pub struct Decoder {
    params: Vec<String>,
    algebras: BTreeMap<String, AlgebraRef>,
}

impl Decoder {
    pub fn new(params: Vec<String>) -> Self {
        Decoder {
            params,
            algebras: BTreeMap::new(),
        }
    }

    /// Reads the `params` list of a bundle, if present.
    pub fn for_bundle(v: &Value) -> Result<Self> {
        let params = match v.get("params") {
            Some(p) => as_arr(p)?
                .iter()
                .map(|x| as_str(x).map(String::from))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        Ok(Decoder::new(params))
    }

    pub fn scalar(&self, v: &Value) -> Result<Scalar> {
        let names: Vec<&str> = self.params.iter().map(String::as_str).collect();
        match v {
            Value::String(s) => parse_scalar(s, &names),
            Value::Number(n) => parse_scalar(&n.to_string(), &names),
            other => Err(bad(format!("expected a scalar string, found {other}"))),
        }
    }

    fn vec_in(&self, a: &Algebra, v: &Value) -> Result<SparseVec> {
        self.vec_over(a.basis(), a.name(), v)
    }

    fn vec_over(&self, basis: &[String], name: &str, v: &Value) -> Result<SparseVec> {
        as_obj(v)?
            .iter()
            .map(|(label, c)| {
                let k = basis
                    .iter()
                    .position(|b| b == label)
                    .ok_or_else(|| bad(format!("unknown basis label '{label}' in {name}")))?;
                Ok((k, self.scalar(c)?))
            })
            .collect()
    }

    fn register(&mut self, a: AlgebraRef) -> Result<AlgebraRef> {
        if let Some(old) = self.algebras.get(a.name()) {
            if **old != *a {
                return Err(bad(format!("two different algebras named '{}'", a.name())));
            }
            return Ok(old.clone());
        }
        self.algebras.insert(a.name().to_string(), a.clone());
        Ok(a)
    }

    pub fn algebra(&mut self, v: &Value) -> Result<AlgebraRef> {
        let name = as_str(get(v, "name")?)?;
        if let Some(p) = v.get("params") {
            for x in as_arr(p)? {
                let x = as_str(x)?;
                if !self.params.iter().any(|q| q == x) {
                    self.params.push(x.to_string());
                }
            }
        }
        let basis: Vec<String> = as_arr(get(v, "basis")?)?
            .iter()
            .map(|b| as_str(b).map(String::from))
            .collect::<Result<_>>()?;
        let idx = |l: &str| {
            basis
                .iter()
                .position(|b| b == l)
                .ok_or_else(|| bad(format!("unknown basis label '{l}' in {name}")))
        };
        let unit = self.vec_over(&basis, name, get(v, "unit")?)?;
        let mut products = Vec::new();
        for e in as_arr(get(v, "mul")?)? {
            let l = idx(as_str(get(e, "l")?)?)?;
            let r = idx(as_str(get(e, "r")?)?)?;
            products.push(((l, r), self.vec_over(&basis, name, get(e, "out")?)?));
        }
        let table = Algebra::new(name, basis, products, unit)?;
        let built = match v.get("construction") {
            None => table,
            Some(c) => {
                let rebuilt = match as_str(get(c, "kind")?)? {
                    "matrix" => {
                        let n = get(c, "n")?
                            .as_u64()
                            .ok_or_else(|| bad("matrix size must be an integer"))?;
                        matrix_algebra(n as usize)
                    }
                    "tensor" => {
                        let f = as_arr(get(c, "factors")?)?;
                        if f.len() != 2 {
                            return Err(bad("a tensor construction has two factors"));
                        }
                        let x = self.algebra(&f[0])?;
                        let y = self.algebra(&f[1])?;
                        tensor_algebra(&x, &y)
                    }
                    "opposite" => opposite(&self.algebra(get(c, "of")?)?),
                    other => return Err(bad(format!("unknown construction '{other}'"))),
                };
                if *rebuilt != *table {
                    return Err(bad(format!(
                        "algebra '{name}' does not match its declared construction"
                    )));
                }
                rebuilt
            }
        };
        self.register(built)
    }

    pub fn algebra_named(&self, name: &str) -> Result<AlgebraRef> {
        self.algebras
            .get(name)
            .cloned()
            .ok_or_else(|| bad(format!("algebra '{name}' is not defined in this bundle")))
    }

    pub fn map(&self, source: &AlgebraRef, target: &AlgebraRef, v: &Value) -> Result<AlgebraMap> {
        let images = as_obj(get(v, "images")?)?;
        let mut out = vec![Vec::new(); source.dim()];
        let mut seen = vec![false; source.dim()];
        for (label, img) in images {
            let k = source
                .index_of(label)
                .ok_or_else(|| bad(format!("unknown basis label '{label}' in {}", source.name())))?;
            out[k] = self.vec_in(target, img)?;
            seen[k] = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(bad(format!("map has no image for '{}'", source.label(k))));
        }
        AlgebraMap::linear(source, target, out)
    }

    pub fn tensor(&self, v: &Value) -> Result<TensorElement> {
        let legs = as_arr(get(v, "legs")?)?
            .iter()
            .map(|l| self.algebra_named(as_str(l)?))
            .collect::<Result<Vec<_>>>()?;
        let mut terms = Vec::new();
        for t in as_arr(get(v, "terms")?)? {
            let idx = as_arr(get(t, "idx")?)?;
            if idx.len() != legs.len() {
                return Err(bad(format!(
                    "term index {} does not match {} legs",
                    Value::Array(idx.clone()),
                    legs.len()
                )));
            }
            let k = idx
                .iter()
                .zip(&legs)
                .map(|(l, a)| {
                    let l = as_str(l)?;
                    a.index_of(l)
                        .ok_or_else(|| bad(format!("unknown basis label '{l}' in {}", a.name())))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((k, self.scalar(get(t, "c")?)?));
        }
        TensorElement::new(legs, terms)
    }

    pub fn oqa(&mut self, v: &Value) -> Result<OqaCandidate> {
        let a = self.algebra(get(v, "algebra")?)?;
        let r = self.tensor(get(v, "r")?)?;
        let d = self.map(&a, &a, get(v, "D")?)?;
        let u = self.map(&a, &a, get(v, "U")?)?;
        OqaCandidate::new(a, r, d, u)
    }

    pub fn nonuple(&mut self, v: &Value) -> Result<Nonuple> {
        let h = self.algebra(get(v, "H")?)?;
        let hp = self.algebra(get(v, "H'")?)?;
        Nonuple::new(
            h.clone(),
            hp.clone(),
            self.tensor(get(v, "p")?)?,
            self.tensor(get(v, "p'")?)?,
            self.tensor(get(v, "r")?)?,
            self.map(&h, &h, get(v, "D")?)?,
            self.map(&h, &h, get(v, "U")?)?,
            self.map(&hp, &hp, get(v, "D'")?)?,
            self.map(&hp, &hp, get(v, "U'")?)?,
        )
    }

    pub fn hopf(&mut self, v: &Value) -> Result<HopfAlgebra> {
        let a = self.algebra(v)?;
        let delta_obj = as_obj(get(v, "delta")?)?;
        let counit_obj = as_obj(get(v, "counit")?)?;
        let mut delta = Vec::with_capacity(a.dim());
        let mut counit = Vec::with_capacity(a.dim());
        for i in 0..a.dim() {
            let l = a.label(i);
            let d = delta_obj
                .get(l)
                .ok_or_else(|| bad(format!("no coproduct given for '{l}'")))?;
            delta.push(self.tensor(d)?);
            counit.push(match counit_obj.get(l) {
                Some(c) => self.scalar(c)?,
                None => Scalar::zero(),
            });
        }
        let s = self.map(&a, &a, get(v, "antipode")?)?;
        HopfAlgebra::new(a, delta, counit, s)
    }

    /// Decodes any bundle by its `kind` field. Bundles without `kind` are
    /// recognised by their fields.
    pub fn object(&mut self, v: &Value) -> Result<FixtureObject> {
        let kind = match v.get("kind").and_then(Value::as_str) {
            Some(k) => k.to_string(),
            None => guess_kind(v)?.to_string(),
        };
        Ok(match kind.as_str() {
            "algebra" => FixtureObject::Algebra(self.algebra(v)?),
            "oqa" => FixtureObject::Oqa(self.oqa(v)?),
            "nonuple" => FixtureObject::Nonuple(Box::new(self.nonuple(v)?)),
            "hopf" => FixtureObject::Hopf(self.hopf(v)?),
            "qt" => {
                let hopf = self.hopf(get(v, "hopf")?)?;
                let p = self.tensor(get(v, "p")?)?;
                FixtureObject::Quasitriangular { hopf, p }
            }
            "weakr" => {
                let h = self.hopf(get(v, "H")?)?;
                let hp = self.hopf(get(v, "H'")?)?;
                let r = self.tensor(get(v, "r")?)?;
                FixtureObject::WeakR { h, hp, r }
            }
            "tensor" => {
                if let Some(algs) = v.get("algebras") {
                    for a in as_arr(algs)? {
                        self.algebra(a)?;
                    }
                }
                FixtureObject::Tensor(self.tensor(v)?)
            }
            "matrix" => FixtureObject::Matrix(Box::new(matrix_from_bundle(v)?)),
            other => return Err(bad(format!("unknown bundle kind '{other}'"))),
        })
    }
}

fn guess_kind(v: &Value) -> Result<&'static str> {
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("H'") && has("p'") {
        "nonuple"
    } else if has("algebra") && has("r") {
        "oqa"
    } else if has("delta") {
        "hopf"
    } else if has("hopf") {
        "qt"
    } else if has("H'") {
        "weakr"
    } else if has("terms") {
        "tensor"
    } else if has("rows") || has("blocks") {
        "matrix"
    } else if has("basis") {
        "algebra"
    } else {
        return Err(bad("cannot tell what kind of object this is"));
    })
}

/// Matrix bundles written by [`object_to_json`] already carry the applied
/// amendments; they are read back without re-applying them.
fn matrix_from_bundle(v: &Value) -> Result<ExpectedMatrix> {
    let mut stripped = v.clone();
    let applied = v.get("applied_amendments").cloned();
    if let Some(m) = stripped.as_object_mut() {
        m.remove("applied_amendments");
    }
    let mut e = ExpectedMatrix::from_json(&stripped)?;
    if let Some(a) = applied {
        e.amendments = as_arr(&a)?
            .iter()
            .map(|x| as_str(x).map(String::from))
            .collect::<Result<_>>()?;
    }
    Ok(e)
}

pub fn object_from_json(v: &Value) -> Result<FixtureObject> {
    Decoder::for_bundle(v)?.object(v)
}

// ---------------------------------------------------------------- substitution

struct Substituter<'a> {
    assignment: &'a Assignment,
    algebras: BTreeMap<String, AlgebraRef>,
}

impl Substituter<'_> {
    fn scalar(&self, c: &Scalar) -> Result<Scalar> {
        c.substitute(self.assignment)
    }

    fn vec(&self, v: &SparseVec) -> Result<SparseVec> {
        v.iter().map(|(k, c)| Ok((*k, self.scalar(c)?))).collect()
    }

    fn algebra(&mut self, a: &AlgebraRef) -> Result<AlgebraRef> {
        if a.params().is_empty() {
            return Ok(a.clone());
        }
        if let Some(b) = self.algebras.get(a.name()) {
            return Ok(b.clone());
        }
        let mut products = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                products.push(((i, j), self.vec(a.mul_basis(i, j))?));
            }
        }
        let b = Algebra::new(a.name(), a.basis().to_vec(), products, self.vec(a.unit())?)?;
        self.algebras.insert(a.name().to_string(), b.clone());
        Ok(b)
    }

    fn tensor(&mut self, t: &TensorElement) -> Result<TensorElement> {
        let legs = t.legs().iter().map(|l| self.algebra(l)).collect::<Result<Vec<_>>>()?;
        t.map_coeffs(|c| self.scalar(c))?.relabel_legs(legs)
    }

    fn map(&mut self, m: &AlgebraMap) -> Result<AlgebraMap> {
        let s = self.algebra(m.source())?;
        let t = self.algebra(m.target())?;
        m.map_coefficients(&|c| self.scalar(c), &s, &t)
    }

    fn hopf(&mut self, h: &HopfAlgebra) -> Result<HopfAlgebra> {
        let a = self.algebra(&h.algebra)?;
        let delta = h.delta.iter().map(|d| self.tensor(d)).collect::<Result<Vec<_>>>()?;
        let counit = h.counit.iter().map(|c| self.scalar(c)).collect::<Result<Vec<_>>>()?;
        let s = self.map(&h.antipode)?;
        HopfAlgebra::new(a, delta, counit, s)
    }
}

/// Substitutes rational values for parameters everywhere in `o`. The result
/// is not certified.
pub fn substitute_object(o: &FixtureObject, assignment: &Assignment) -> Result<FixtureObject> {
    let mut s = Substituter {
        assignment,
        algebras: BTreeMap::new(),
    };
    Ok(match o {
        FixtureObject::Algebra(a) => FixtureObject::Algebra(s.algebra(a)?),
        FixtureObject::Oqa(c) => {
            let a = s.algebra(&c.algebra)?;
            FixtureObject::Oqa(OqaCandidate::new(a, s.tensor(&c.r)?, s.map(&c.d)?, s.map(&c.u)?)?)
        }
        FixtureObject::Nonuple(n) => FixtureObject::Nonuple(Box::new(Nonuple::new(
            s.algebra(&n.h)?,
            s.algebra(&n.hp)?,
            s.tensor(&n.p)?,
            s.tensor(&n.pp)?,
            s.tensor(&n.r)?,
            s.map(&n.d)?,
            s.map(&n.u)?,
            s.map(&n.dp)?,
            s.map(&n.up)?,
        )?)),
        FixtureObject::Hopf(h) => FixtureObject::Hopf(s.hopf(h)?),
        FixtureObject::Quasitriangular { hopf, p } => FixtureObject::Quasitriangular {
            hopf: s.hopf(hopf)?,
            p: s.tensor(p)?,
        },
        FixtureObject::WeakR { h, hp, r } => FixtureObject::WeakR {
            h: s.hopf(h)?,
            hp: s.hopf(hp)?,
            r: s.tensor(r)?,
        },
        FixtureObject::Tensor(t) => FixtureObject::Tensor(s.tensor(t)?),
        FixtureObject::Matrix(e) => {
            let mut e = (**e).clone();
            e.printed = e.printed.map_cells(|c| s.scalar(c))?;
            e.substitute = e
                .substitute
                .iter()
                .map(|(k, v)| Ok((k.clone(), s.scalar(v)?)))
                .collect::<Result<_>>()?;
            FixtureObject::Matrix(Box::new(e))
        }
    })
}
