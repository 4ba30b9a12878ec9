//! Elements of finite tensor products `A₁ ⊗ … ⊗ A_k` stored sparsely over
//! multi-indices of basis positions.

mod contract;

use std::collections::BTreeMap;
use std::fmt;

pub use contract::{contract, Copy, Side};

use crate::algebra::{same_algebra, tensor_algebra_many, AlgebraMap, AlgebraRef, Construction, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;

pub type MultiIndex = Vec<usize>;

#[derive(Clone, Debug)]
pub struct TensorElement {
    legs: Vec<AlgebraRef>,
    terms: BTreeMap<MultiIndex, Scalar>,
}

/// First multi-index at which two tensors disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Difference {
    pub index: Vec<String>,
    pub left: Scalar,
    pub right: Scalar,
}

impl TensorElement {
    pub fn new(legs: Vec<AlgebraRef>, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::ShapeMismatch("a tensor needs at least one leg".into()));
        }
        let mut map: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.len() != legs.len() {
                return Err(Error::ShapeMismatch(format!(
                    "index of length {} for a tensor with {} legs",
                    idx.len(),
                    legs.len()
                )));
            }
            for (i, (&k, leg)) in idx.iter().zip(&legs).enumerate() {
                if k >= leg.dim() {
                    return Err(Error::PositionOutOfRange(format!(
                        "basis index {k} on leg {i} ({}, dimension {})",
                        leg.name(),
                        leg.dim()
                    )));
                }
            }
            *map.entry(idx).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(TensorElement { legs, terms: map })
    }

    pub(crate) fn from_map(legs: Vec<AlgebraRef>, mut terms: BTreeMap<MultiIndex, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        TensorElement { legs, terms }
    }

    pub fn zero(legs: Vec<AlgebraRef>) -> Self {
        TensorElement {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(legs: Vec<AlgebraRef>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Scalar::one());
        for leg in &legs {
            let mut next = BTreeMap::new();
            for (idx, c) in &terms {
                for (k, u) in leg.unit() {
                    let mut i: MultiIndex = idx.clone();
                    i.push(*k);
                    next.insert(i, c * u);
                }
            }
            terms = next;
        }
        TensorElement::from_map(legs, terms)
    }

    /// `x₁ ⊗ … ⊗ x_k`.
    pub fn pure(factors: &[Element]) -> Self {
        let legs: Vec<AlgebraRef> = factors.iter().map(|e| e.algebra().clone()).collect();
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Scalar::one());
        for f in factors {
            let mut next = BTreeMap::new();
            for (idx, c) in &terms {
                for (k, u) in f.coeffs() {
                    let mut i: MultiIndex = idx.clone();
                    i.push(*k);
                    next.insert(i, c * u);
                }
            }
            terms = next;
        }
        TensorElement::from_map(legs, terms)
    }

    pub fn legs(&self) -> &[AlgebraRef] {
        &self.legs
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.values().flat_map(|c| c.params()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter()
            .zip(&self.legs)
            .map(|(&k, leg)| leg.label(k).to_string())
            .collect()
    }

    fn check_legs(&self, other: &TensorElement) -> Result<()> {
        if self.legs.len() != other.legs.len() || !self.legs.iter().zip(&other.legs).all(|(a, b)| same_algebra(a, b)) {
            return Err(Error::LegMismatch(format!(
                "[{}] vs [{}]",
                leg_names(&self.legs),
                leg_names(&other.legs)
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_legs(other)?;
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            *terms.entry(k.clone()).or_default() += v;
        }
        Ok(TensorElement::from_map(self.legs.clone(), terms))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement::from_map(
            self.legs.clone(),
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        )
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Componentwise product in `A₁ ⊗ … ⊗ A_k`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_legs(other)?;
        let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                let xy = x * y;
                self.expand_product(i, j, &xy, &mut acc);
            }
        }
        Ok(TensorElement::from_map(self.legs.clone(), acc))
    }

    fn expand_product(&self, i: &[usize], j: &[usize], c: &Scalar, acc: &mut BTreeMap<MultiIndex, Scalar>) {
        let mut partial: Vec<(MultiIndex, Scalar)> = vec![(Vec::with_capacity(i.len()), c.clone())];
        for (leg, (&a, &b)) in self.legs.iter().zip(i.iter().zip(j)) {
            let prod = leg.mul_basis(a, b);
            if prod.is_empty() {
                return;
            }
            if prod.len() == 1 {
                let (k, d) = &prod[0];
                for (idx, v) in &mut partial {
                    idx.push(*k);
                    if !d.is_one() {
                        *v = &*v * d;
                    }
                }
            } else {
                let mut next = Vec::with_capacity(partial.len() * prod.len());
                for (idx, v) in &partial {
                    for (k, d) in prod {
                        let mut n = idx.clone();
                        n.push(*k);
                        next.push((n, v * d));
                    }
                }
                partial = next;
            }
        }
        for (idx, v) in partial {
            *acc.entry(idx).or_default() += v;
        }
    }

    /// Applies `maps[i]` on leg `i`; the result lives on the maps' targets.
    pub fn apply_maps(&self, maps: &[&AlgebraMap]) -> Result<TensorElement> {
        if maps.len() != self.legs.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for a tensor with {} legs",
                maps.len(),
                self.legs.len()
            )));
        }
        for (i, (m, leg)) in maps.iter().zip(&self.legs).enumerate() {
            if !same_algebra(m.source(), leg) {
                return Err(Error::AlgebraMismatch(format!(
                    "map on leg {i} starts at {} but the leg is {}",
                    m.source().name(),
                    leg.name()
                )));
            }
        }
        let legs: Vec<AlgebraRef> = maps.iter().map(|m| m.target().clone()).collect();
        let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let mut partial: Vec<(MultiIndex, Scalar)> = vec![(Vec::new(), c.clone())];
            for (m, &k) in maps.iter().zip(idx) {
                let img = m.image(k);
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (p, v) in &partial {
                    for (t, d) in img {
                        let mut n = p.clone();
                        n.push(*t);
                        next.push((n, v * d));
                    }
                }
                partial = next;
            }
            for (p, v) in partial {
                *acc.entry(p).or_default() += v;
            }
        }
        Ok(TensorElement::from_map(legs, acc))
    }

    /// Applies `map` on one leg and the identity elsewhere.
    pub fn apply_map_on(&self, leg: usize, map: &AlgebraMap) -> Result<TensorElement> {
        if leg >= self.legs.len() {
            return Err(Error::PositionOutOfRange(format!("leg {leg}")));
        }
        let ids: Vec<AlgebraMap> = self.legs.iter().map(AlgebraMap::identity).collect();
        let maps: Vec<&AlgebraMap> = (0..self.legs.len())
            .map(|i| if i == leg { map } else { &ids[i] })
            .collect();
        self.apply_maps(&maps)
    }

    /// Leg `k` of the result is leg `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<TensorElement> {
        let n = self.legs.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::ShapeMismatch(format!(
                "{perm:?} is not a permutation of {n} legs"
            )));
        }
        let legs = perm.iter().map(|&p| self.legs[p].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| (perm.iter().map(|&p| idx[p]).collect(), c.clone()))
            .collect();
        Ok(TensorElement::from_map(legs, terms))
    }

    /// The flip `τ` on a two-leg tensor.
    pub fn flip(&self) -> Result<TensorElement> {
        if self.legs.len() != 2 {
            return Err(Error::ShapeMismatch("flip needs exactly two legs".into()));
        }
        self.permute(&[1, 0])
    }

    /// Places leg `i` of `self` at position `positions[i]` of a tensor with
    /// legs `target`, filling the remaining legs with `1`.
    pub fn embed(&self, target: &[AlgebraRef], positions: &[usize]) -> Result<TensorElement> {
        if positions.len() != self.legs.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} positions for {} legs",
                positions.len(),
                self.legs.len()
            )));
        }
        let mut used = vec![false; target.len()];
        for (i, &p) in positions.iter().enumerate() {
            if p >= target.len() {
                return Err(Error::PositionOutOfRange(format!(
                    "position {p} in a tensor of {} legs",
                    target.len()
                )));
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(Error::PositionOutOfRange(format!("position {p} used twice")));
            }
            if !same_algebra(&target[p], &self.legs[i]) {
                return Err(Error::AlgebraMismatch(format!(
                    "leg {i} is {} but position {p} is {}",
                    self.legs[i].name(),
                    target[p].name()
                )));
            }
        }
        let rest: Vec<usize> = (0..target.len()).filter(|p| !used[*p]).collect();
        let rest_legs: Vec<AlgebraRef> = rest.iter().map(|&p| target[p].clone()).collect();
        let ones = (!rest_legs.is_empty()).then(|| TensorElement::one(rest_legs));
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            match &ones {
                Some(ones) => {
                    for (oidx, u) in &ones.terms {
                        let mut full = vec![0; target.len()];
                        for (i, &p) in positions.iter().enumerate() {
                            full[p] = idx[i];
                        }
                        for (j, &p) in rest.iter().enumerate() {
                            full[p] = oidx[j];
                        }
                        terms.insert(full, c * u);
                    }
                }
                None => {
                    let mut full = vec![0; target.len()];
                    for (i, &p) in positions.iter().enumerate() {
                        full[p] = idx[i];
                    }
                    terms.insert(full, c.clone());
                }
            }
        }
        Ok(TensorElement::from_map(target.to_vec(), terms))
    }

    /// `self ⊗ other` with legs concatenated.
    pub fn outer(&self, other: &TensorElement) -> TensorElement {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        let mut terms = BTreeMap::new();
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                let mut k = i.clone();
                k.extend_from_slice(j);
                terms.insert(k, x * y);
            }
        }
        TensorElement::from_map(legs, terms)
    }

    /// Merges consecutive blocks of legs (sizes in `blocks`) into single
    /// legs over the corresponding tensor-product algebras.
    pub fn group(&self, blocks: &[usize]) -> Result<TensorElement> {
        if blocks.iter().sum::<usize>() != self.legs.len() || blocks.contains(&0) {
            return Err(Error::NonConsecutiveGrouping);
        }
        let mut legs = Vec::with_capacity(blocks.len());
        let mut start = 0;
        let mut ranges = Vec::new();
        for &b in blocks {
            legs.push(tensor_algebra_many(&self.legs[start..start + b]));
            ranges.push(start..start + b);
            start += b;
        }
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let merged = ranges
                    .iter()
                    .map(|r| r.clone().fold(0usize, |acc, l| acc * self.legs[l].dim() + idx[l]))
                    .collect();
                (merged, c.clone())
            })
            .collect();
        Ok(TensorElement::from_map(legs, terms))
    }

    /// Inverse of [`group`](Self::group): every leg built as a tensor product
    /// is split into its factors, recursively.
    pub fn ungroup(&self) -> TensorElement {
        let mut out = self.clone();
        while let Some(pos) = out
            .legs
            .iter()
            .position(|l| matches!(l.construction(), Construction::Tensor(..)))
        {
            out = out.split_leg(pos);
        }
        out
    }

    fn split_leg(&self, pos: usize) -> TensorElement {
        let Construction::Tensor(a, b) = self.legs[pos].construction() else {
            return self.clone();
        };
        let db = b.dim();
        let mut legs = self.legs[..pos].to_vec();
        legs.push(a.clone());
        legs.push(b.clone());
        legs.extend(self.legs[pos + 1..].iter().cloned());
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let mut n = idx[..pos].to_vec();
                n.push(idx[pos] / db);
                n.push(idx[pos] % db);
                n.extend_from_slice(&idx[pos + 1..]);
                (n, c.clone())
            })
            .collect();
        TensorElement::from_map(legs, terms)
    }

    /// Two-sided inverse in `A₁ ⊗ … ⊗ A_k`, by an exact sparse solve of
    /// `self · u = 1` checked against `u · self = 1`.
    pub fn invert(&self) -> Result<TensorElement> {
        let dims: Vec<usize> = self.legs.iter().map(|l| l.dim()).collect();
        let n: usize = dims.iter().product();
        let flat = |idx: &[usize]| idx.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i);
        let unflat = |mut f: usize| {
            let mut idx = vec![0; dims.len()];
            for k in (0..dims.len()).rev() {
                idx[k] = f % dims[k];
                f /= dims[k];
            }
            idx
        };
        let mut columns: Vec<SparseVec> = Vec::with_capacity(n);
        for col in 0..n {
            let e = unflat(col);
            let mut acc = BTreeMap::new();
            for (i, x) in &self.terms {
                self.expand_product(i, &e, x, &mut acc);
            }
            columns.push(
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (flat(&k), v))
                    .collect(),
            );
        }
        let one = TensorElement::one(self.legs.clone());
        let rhs: SparseVec = one.terms.iter().map(|(k, v)| (flat(k), v.clone())).collect();
        let sol = linalg::solve(n, &columns, &[rhs]).map_err(|e| match e {
            Error::Singular => Error::NotInvertible,
            other => other,
        })?;
        let inv = TensorElement::from_map(
            self.legs.clone(),
            sol.into_iter()
                .next()
                .unwrap()
                .into_iter()
                .map(|(f, v)| (unflat(f), v))
                .collect(),
        );
        if inv.mul(self)? != one || self.mul(&inv)? != one {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    /// Whether `self · other = 1 = other · self`.
    pub fn is_inverse_of(&self, other: &TensorElement) -> Result<bool> {
        let one = TensorElement::one(self.legs.clone());
        Ok(self.mul(other)? == one && other.mul(self)? == one)
    }

    pub fn first_difference(&self, other: &TensorElement) -> Option<Difference> {
        let keys: std::collections::BTreeSet<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (l, r) = (self.coeff(k), other.coeff(k));
            (l != r).then(|| Difference {
                index: self.labels(k),
                left: l,
                right: r,
            })
        })
    }

    /// Rewrites every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<TensorElement> {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| Ok((k.clone(), f(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(TensorElement::from_map(self.legs.clone(), terms))
    }

    /// Same coefficients over a different (but same-shaped) list of legs.
    pub fn relabel_legs(&self, legs: Vec<AlgebraRef>) -> Result<TensorElement> {
        if legs.len() != self.legs.len() || legs.iter().zip(&self.legs).any(|(a, b)| a.dim() != b.dim()) {
            return Err(Error::LegMismatch(format!(
                "cannot move [{}] onto [{}]",
                leg_names(&self.legs),
                leg_names(&legs)
            )));
        }
        Ok(TensorElement {
            legs,
            terms: self.terms.clone(),
        })
    }
}

pub(crate) fn leg_names(legs: &[AlgebraRef]) -> String {
    legs.iter().map(|l| l.name()).collect::<Vec<_>>().join(", ")
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.check_legs(other).is_ok() && self.terms == other.terms
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let label = self.labels(k).join("⊗");
                if c.is_one() {
                    label
                } else {
                    format!("({c})*{label}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, tensor_algebra};
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t, &["a"]).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let m2 = matrix_algebra(2);
        let legs = vec![m2.clone(), m2.clone()];
        let t = TensorElement::new(legs.clone(), [(vec![0, 3], s("a")), (vec![1, 2], Scalar::one())]).unwrap();
        let one = TensorElement::one(legs);
        assert_eq!(one.num_terms(), 4);
        assert_eq!(t.mul(&one).unwrap(), t);
        assert_eq!(one.mul(&t).unwrap(), t);
    }

    #[test]
    fn flip_and_embed() {
        let m2 = matrix_algebra(2);
        let m3 = matrix_algebra(3);
        let t = TensorElement::new(vec![m2.clone(), m3.clone()], [(vec![1, 5], Scalar::one())]).unwrap();
        let f = t.flip().unwrap();
        assert_eq!(f.coeff(&[5, 1]), Scalar::one());
        let e = t.embed(&[m2.clone(), m2.clone(), m3.clone()], &[1, 2]).unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.coeff(&[0, 1, 5]), Scalar::one());
        assert_eq!(e.coeff(&[3, 1, 5]), Scalar::one());
        assert!(t.embed(&[m3.clone(), m2.clone()], &[0, 1]).is_err());
    }

    #[test]
    fn group_matches_tensor_algebra_index() {
        let m2 = matrix_algebra(2);
        let m3 = matrix_algebra(3);
        let t = TensorElement::new(vec![m2.clone(), m3.clone()], [(vec![1, 5], Scalar::one())]).unwrap();
        let g = t.group(&[2]).unwrap();
        assert!(g.legs()[0].same_table(&tensor_algebra(&m2, &m3)));
        assert_eq!(g.coeff(&[9 + 5]), Scalar::one());
        assert_eq!(g.ungroup(), t);
        assert_eq!(t.group(&[1, 0, 1]), Err(Error::NonConsecutiveGrouping));
    }

    #[test]
    fn invert_simple_r_matrix() {
        // p = sum of a E_ii⊗E_ii + (a - a^-1) E12⊗E21 + E11⊗E22 + E22⊗E11
        let m2 = matrix_algebra(2);
        let p = TensorElement::new(
            vec![m2.clone(), m2.clone()],
            [
                (vec![0, 0], s("a")),
                (vec![3, 3], s("a")),
                (vec![1, 2], s("a - a^-1")),
                (vec![0, 3], Scalar::one()),
                (vec![3, 0], Scalar::one()),
            ],
        )
        .unwrap();
        let inv = p.invert().unwrap();
        assert_eq!(inv.coeff(&[0, 0]), s("a^-1"));
        assert_eq!(inv.coeff(&[1, 2]), s("a^-1 - a"));
        assert_eq!(inv.num_terms(), 5);
    }

    #[test]
    fn non_invertible_detected() {
        let m2 = matrix_algebra(2);
        let t = TensorElement::new(vec![m2.clone(), m2.clone()], [(vec![0, 0], Scalar::one())]).unwrap();
        assert_eq!(t.invert(), Err(Error::NotInvertible));
    }
}
