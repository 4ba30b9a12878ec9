//! Finite-dimensional unital associative algebras given by structure
//! constants, their elements, and linear maps between them.

mod map;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use map::{maps_commute, tensor_map, AlgebraMap};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;

pub type AlgebraRef = Arc<Algebra>;

/// How the algebra was built. Used to recover component indices when
/// reordering bases for export.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Generic,
    /// `M_n(K)` with basis `E_ij` in row-major order.
    Matrix(usize),
    /// Tensor product; basis is lexicographic with the first factor major.
    Tensor(AlgebraRef, AlgebraRef),
    Opposite(AlgebraRef),
}

#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    basis: Vec<String>,
    /// `mul[i * dim + j]` is the product `e_i e_j`.
    mul: Vec<SparseVec>,
    unit: SparseVec,
    construction: Construction,
}

impl Algebra {
    /// Validates associativity and the unit laws on every basis triple.
    ///
    /// `products` lists the nonzero products `e_l e_r`; absent pairs multiply
    /// to zero.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        products: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        unit: SparseVec,
    ) -> Result<AlgebraRef> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::BadShape("empty basis".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for b in &basis {
            if !seen.insert(b) {
                return Err(Error::BadShape(format!("duplicate basis label `{b}`")));
            }
        }
        let mut mul = vec![Vec::new(); dim * dim];
        for ((l, r), out) in products {
            if l >= dim || r >= dim || out.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::BadShape(format!("product index out of range ({l}, {r})")));
            }
            mul[l * dim + r] = normalize(out);
        }
        if unit.iter().any(|(k, _)| *k >= dim) {
            return Err(Error::BadShape("unit index out of range".into()));
        }
        let alg = Algebra {
            name: name.into(),
            basis,
            mul,
            unit: normalize(unit),
            construction: Construction::Generic,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn with_construction(mut self, c: Construction) -> Self {
        self.construction = c;
        self
    }

    /// Re-checks the unit laws and associativity exhaustively.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            let e = self.basis_vec(i);
            if self.mul_vecs(&self.unit, &e) != e || self.mul_vecs(&e, &self.unit) != e {
                return Err(Error::BadUnit(self.basis[i].clone()));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = &self.mul[i * dim + j];
                for k in 0..dim {
                    let left = self.mul_vecs(ij, &self.basis_vec(k));
                    let jk = &self.mul[j * dim + k];
                    let right = self.mul_vecs(&self.basis_vec(i), jk);
                    if left != right {
                        return Err(Error::NonAssociative {
                            i: self.basis[i].clone(),
                            j: self.basis[j].clone(),
                            k: self.basis[k].clone(),
                            left: self.fmt_vec(&left),
                            right: self.fmt_vec(&right),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    /// Structure constants of `e_i e_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.dim() + j]
    }

    /// Parameters occurring in the structure constants or the unit.
    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .mul
            .iter()
            .chain(std::iter::once(&self.unit))
            .flat_map(|v| v.iter().flat_map(|(_, s)| s.params()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn basis_vec(&self, i: usize) -> SparseVec {
        vec![(i, Scalar::one())]
    }

    pub(crate) fn mul_vecs(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.mul_basis(*i, *j) {
                    *acc.entry(*k).or_default() += &xy * c;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub(crate) fn fmt_vec(&self, v: &SparseVec) -> String {
        fmt_combination(v.iter().map(|(i, c)| (self.basis[*i].as_str(), c)))
    }

    /// Tablewise equality of structure constants and unit (names ignored).
    pub fn same_table(&self, other: &Algebra) -> bool {
        self.basis == other.basis && self.unit == other.unit && self.mul == other.mul
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_table(other)
    }
}

/// Whether two references denote the same algebra.
pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn normalize(v: SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in v {
        *acc.entry(k).or_default() += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn fmt_combination<'a>(terms: impl Iterator<Item = (&'a str, &'a Scalar)>) -> String {
    let parts: Vec<String> = terms
        .map(|(label, c)| {
            if c.is_one() {
                label.to_string()
            } else {
                format!("({c})*{label}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The full matrix algebra `M_n(K)`.
pub fn matrix_algebra(n: usize) -> AlgebraRef {
    assert!(n >= 1, "matrix size must be positive");
    let label = |i: usize, j: usize| {
        if n < 10 {
            format!("E{}{}", i + 1, j + 1)
        } else {
            format!("E{}_{}", i + 1, j + 1)
        }
    };
    let idx = |i: usize, j: usize| i * n + j;
    let basis: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| label(i, j))
        .collect();
    let mut mul = vec![Vec::new(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                // E_ij E_jm = E_im
                mul[idx(i, j) * n * n + idx(j, m)] = vec![(idx(i, m), Scalar::one())];
            }
        }
    }
    let unit = (0..n).map(|i| (idx(i, i), Scalar::one())).collect();
    let alg = Algebra {
        name: format!("M{n}"),
        basis,
        mul,
        unit,
        construction: Construction::Generic,
    }
    .with_construction(Construction::Matrix(n));
    debug_assert!(alg.validate().is_ok());
    Arc::new(alg)
}

/// Same basis, reversed multiplication.
pub fn opposite(a: &AlgebraRef) -> AlgebraRef {
    let dim = a.dim();
    let mut mul = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            mul[i * dim + j] = a.mul_basis(j, i).clone();
        }
    }
    let (name, construction) = match &a.construction {
        Construction::Opposite(inner) => (inner.name.clone(), inner.construction.clone()),
        _ => (format!("{}^op", a.name), Construction::Opposite(a.clone())),
    };
    Arc::new(Algebra {
        name,
        basis: a.basis.clone(),
        mul,
        unit: a.unit.clone(),
        construction,
    })
}

/// `A ⊗ B` with componentwise multiplication; index of `(i, j)` is `i * dim B + j`.
pub fn tensor_algebra(a: &AlgebraRef, b: &AlgebraRef) -> AlgebraRef {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let basis: Vec<String> = (0..da)
        .flat_map(|i| (0..db).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", a.basis[i], b.basis[j]))
        .collect();
    let mut mul = vec![Vec::new(); dim * dim];
    for i1 in 0..da {
        for j1 in 0..db {
            for i2 in 0..da {
                let pa = a.mul_basis(i1, i2);
                if pa.is_empty() {
                    continue;
                }
                for j2 in 0..db {
                    let pb = b.mul_basis(j1, j2);
                    let mut out = Vec::with_capacity(pa.len() * pb.len());
                    for (ka, ca) in pa {
                        for (kb, cb) in pb {
                            out.push((ka * db + kb, ca * cb));
                        }
                    }
                    mul[(i1 * db + j1) * dim + (i2 * db + j2)] = out;
                }
            }
        }
    }
    let mut unit = Vec::new();
    for (ka, ca) in &a.unit {
        for (kb, cb) in &b.unit {
            unit.push((ka * db + kb, ca * cb));
        }
    }
    unit.sort_by_key(|(k, _)| *k);
    Arc::new(Algebra {
        name: format!("{}⊗{}", a.name, b.name),
        basis,
        mul,
        unit,
        construction: Construction::Tensor(a.clone(), b.clone()),
    })
}

/// Left-nested tensor product `((A₁ ⊗ A₂) ⊗ A₃) ⊗ …`; its basis order is
/// lexicographic in the factors.
pub fn tensor_algebra_many(factors: &[AlgebraRef]) -> AlgebraRef {
    let mut it = factors.iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, f| tensor_algebra(&acc, f))
}

/// An element of an algebra as a sparse coefficient vector.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: AlgebraRef,
    coeffs: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn new(algebra: &AlgebraRef, coeffs: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in coeffs {
            if i >= algebra.dim() {
                return Err(Error::PositionOutOfRange(format!(
                    "basis index {i} in algebra {} of dimension {}",
                    algebra.name,
                    algebra.dim()
                )));
            }
            *map.entry(i).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Element {
            algebra: algebra.clone(),
            coeffs: map,
        })
    }

    pub fn zero(algebra: &AlgebraRef) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &AlgebraRef) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: algebra.unit.iter().cloned().collect(),
        }
    }

    pub fn basis(algebra: &AlgebraRef, i: usize) -> Self {
        assert!(i < algebra.dim());
        Element {
            algebra: algebra.clone(),
            coeffs: [(i, Scalar::one())].into_iter().collect(),
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Scalar> {
        &self.coeffs
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!(
                "{} vs {}",
                self.algebra.name, other.algebra.name
            )))
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let v = self.algebra.mul_vecs(&self.to_sparse(), &other.to_sparse());
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: v.into_iter().collect(),
        })
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Element::new(
            &self.algebra,
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(k, v)| (*k, v.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Two-sided inverse, found by solving `L_u v = 1` exactly for the left
    /// multiplication matrix `L_u` and then verified on both sides.
    pub fn invert(&self) -> Result<Element> {
        let alg = &self.algebra;
        let dim = alg.dim();
        let u = self.to_sparse();
        let columns: Vec<SparseVec> = (0..dim).map(|j| alg.mul_vecs(&u, &alg.basis_vec(j))).collect();
        let sol = linalg::solve(dim, &columns, std::slice::from_ref(&alg.unit)).map_err(|e| match e {
            Error::Singular => Error::NotInvertible,
            other => other,
        })?;
        let v = Element::new(alg, sol.into_iter().next().unwrap())?;
        let one = Element::one(alg);
        if self.mul(&v)? != one || v.mul(self)? != one {
            return Err(Error::NotInvertible);
        }
        Ok(v)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            fmt_combination(self.coeffs.iter().map(|(k, c)| (self.algebra.basis[*k].as_str(), c)))
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim() -> AlgebraRef {
        Algebra::new(
            "K",
            vec!["1".into()],
            [((0, 0), vec![(0, Scalar::one())])],
            vec![(0, Scalar::one())],
        )
        .unwrap()
    }

    pub(crate) fn group_algebra_z2() -> AlgebraRef {
        let one = Scalar::one;
        Algebra::new(
            "KZ2",
            vec!["1".into(), "t".into()],
            [
                ((0, 0), vec![(0, one())]),
                ((0, 1), vec![(1, one())]),
                ((1, 0), vec![(1, one())]),
                ((1, 1), vec![(0, one())]),
            ],
            vec![(0, one())],
        )
        .unwrap()
    }

    #[test]
    fn field_as_algebra() {
        assert_eq!(one_dim().dim(), 1);
    }

    #[test]
    fn group_algebra_is_valid() {
        assert_eq!(group_algebra_z2().dim(), 2);
    }

    #[test]
    fn bad_unit_detected() {
        // x·x = x, x·1 = 0 but 1 is declared the unit
        let r = Algebra::new(
            "bad",
            vec!["1".into(), "x".into()],
            [
                ((0, 0), vec![(0, Scalar::one())]),
                ((0, 1), vec![(1, Scalar::one())]),
                ((1, 1), vec![(1, Scalar::one())]),
            ],
            vec![(0, Scalar::one())],
        );
        assert_eq!(r.unwrap_err(), Error::BadUnit("x".into()));
    }

    #[test]
    fn non_associative_detected() {
        // e·e = 2·e with unit e... use basis {1, x} with x·x = 1 + x but (x x) x != x (x x) cannot fail;
        // instead break associativity with x·y = x, y·x = y, x·x = y, y·y = x.
        let one = Scalar::one;
        let r = Algebra::new(
            "nonassoc",
            vec!["1".into(), "x".into(), "y".into()],
            [
                ((0, 0), vec![(0, one())]),
                ((0, 1), vec![(1, one())]),
                ((0, 2), vec![(2, one())]),
                ((1, 0), vec![(1, one())]),
                ((2, 0), vec![(2, one())]),
                ((1, 1), vec![(2, one())]),
                ((1, 2), vec![(1, one())]),
                ((2, 1), vec![(2, one())]),
                ((2, 2), vec![(1, one())]),
            ],
            vec![(0, one())],
        );
        assert!(matches!(r, Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn matrix_units_multiply() {
        let m2 = matrix_algebra(2);
        let e = |l: &str| Element::basis(&m2, m2.index_of(l).unwrap());
        assert_eq!(e("E12").mul(&e("E21")).unwrap(), e("E11"));
        assert!(e("E12").mul(&e("E12")).unwrap().is_zero());
        let m3 = matrix_algebra(3);
        let unit: Vec<&str> = m3.unit().iter().map(|(k, _)| m3.label(*k)).collect();
        assert_eq!(unit, ["E11", "E22", "E33"]);
    }

    #[test]
    fn opposite_reverses_products() {
        let m2 = matrix_algebra(2);
        let op = opposite(&m2);
        op.validate().unwrap();
        let (i12, i21, i22) = (1, 2, 3);
        assert_eq!(op.mul_basis(i12, i21), &vec![(i22, Scalar::one())]);
        assert!(opposite(&op).same_table(&m2));
        let kz2 = group_algebra_z2();
        assert!(opposite(&kz2).same_table(&kz2));
    }

    #[test]
    fn tensor_with_field_and_dimensions() {
        let k = one_dim();
        let m2 = matrix_algebra(2);
        let km2 = tensor_algebra(&k, &m2);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(km2.mul_basis(i, j), m2.mul_basis(i, j));
            }
        }
        let m3 = matrix_algebra(3);
        let t = tensor_algebra(&m2, &m3);
        assert_eq!(t.dim(), 36);
        t.validate().unwrap();
        // (E11⊗E'11)(E12⊗E'12) = E12⊗E'12
        let i = |a: usize, b: usize| a * 9 + b;
        assert_eq!(t.mul_basis(i(0, 0), i(1, 1)), &vec![(i(1, 1), Scalar::one())]);
        // (E12⊗E'12)(E11⊗E'11) = 0
        assert!(t.mul_basis(i(1, 1), i(0, 0)).is_empty());
    }

    #[test]
    fn invert_unit_and_group_like() {
        let kz2 = group_algebra_z2();
        let one = Element::one(&kz2);
        assert_eq!(one.invert().unwrap(), one);
        // (1 + 2t)^-1 = (-1 + 2t)/3
        let u = Element::new(&kz2, [(0, Scalar::one()), (1, Scalar::from_int(2))]).unwrap();
        let v = u.invert().unwrap();
        assert_eq!(v.coeff(0), Scalar::ratio(-1, 3));
        assert_eq!(v.coeff(1), Scalar::ratio(2, 3));
        let idem = Element::new(&kz2, [(0, Scalar::one()), (1, Scalar::one())]).unwrap();
        assert_eq!(idem.invert(), Err(Error::NotInvertible));
    }
}
