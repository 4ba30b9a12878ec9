use std::collections::BTreeMap;
use std::sync::Arc;

use super::{same_algebra, tensor_algebra, AlgebraRef, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;

/// A linear map between algebras given by the images of basis elements.
///
/// Maps built with [`AlgebraMap::algebra_map`] are verified to be unital and
/// multiplicative; [`AlgebraMap::linear`] performs no structural check and is
/// used for antipodes and counits.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: AlgebraRef,
    target: AlgebraRef,
    images: Vec<SparseVec>,
    inverse: Option<Arc<Vec<SparseVec>>>,
}

impl AlgebraMap {
    pub fn linear(source: &AlgebraRef, target: &AlgebraRef, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                got: images.len(),
            });
        }
        let images: Vec<SparseVec> = images.into_iter().map(super::normalize).collect();
        if images.iter().flatten().any(|(k, _)| *k >= target.dim()) {
            return Err(Error::PositionOutOfRange("image index exceeds target dimension".into()));
        }
        Ok(AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images,
            inverse: None,
        })
    }

    /// Unital algebra morphism. With `require_automorphism` the map must be
    /// an endomorphism with a linear inverse, which is computed eagerly.
    #[allow(clippy::self_named_constructors)]
    pub fn algebra_map(
        source: &AlgebraRef,
        target: &AlgebraRef,
        images: Vec<SparseVec>,
        require_automorphism: bool,
    ) -> Result<Self> {
        let mut m = Self::linear(source, target, images)?;
        if m.apply_vec(source.unit()) != *target.unit() {
            return Err(Error::NotUnital);
        }
        let dim = source.dim();
        for i in 0..dim {
            for j in 0..dim {
                let lhs = m.apply_vec(source.mul_basis(i, j));
                let rhs = target.mul_vecs(&m.images[i], &m.images[j]);
                if lhs != rhs {
                    return Err(Error::NotMultiplicative(
                        source.label(i).to_string(),
                        source.label(j).to_string(),
                    ));
                }
            }
        }
        if require_automorphism {
            if !same_algebra(source, target) {
                return Err(Error::AlgebraMismatch(format!(
                    "automorphism needs equal source and target, got {} and {}",
                    source.name(),
                    target.name()
                )));
            }
            m.compute_inverse()?;
        }
        Ok(m)
    }

    pub fn identity(a: &AlgebraRef) -> Self {
        let images = (0..a.dim()).map(|i| vec![(i, Scalar::one())]).collect::<Vec<_>>();
        AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            inverse: Some(Arc::new(images.clone())),
            images,
        }
    }

    /// Computes and caches the linear inverse.
    pub fn compute_inverse(&mut self) -> Result<&Self> {
        if self.inverse.is_none() {
            if self.source.dim() != self.target.dim() {
                return Err(Error::Singular);
            }
            let n = self.target.dim();
            let rhs: Vec<SparseVec> = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
            let inv = linalg::solve(n, &self.images, &rhs)?;
            self.inverse = Some(Arc::new(inv));
        }
        Ok(self)
    }

    /// The linear inverse as a map from target to source.
    pub fn inverse(&self) -> Result<AlgebraMap> {
        let mut me = self.clone();
        me.compute_inverse()?;
        let inv = me.inverse.clone().unwrap();
        Ok(AlgebraMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images: (*inv).clone(),
            inverse: Some(Arc::new(self.images.clone())),
        })
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        same_algebra(&self.source, &self.target)
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, v)| v.len() == 1 && v[0].0 == i && v[0].1.is_one())
    }

    pub(crate) fn apply_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in v {
            for (k, d) in &self.images[*i] {
                *acc.entry(*k).or_default() += c * d;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_algebra(x.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch(format!(
                "map from {} applied to element of {}",
                self.source.name(),
                x.algebra().name()
            )));
        }
        Element::new(&self.target, self.apply_vec(&x.to_sparse()))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        if !same_algebra(first.target(), &self.source) {
            return Err(Error::AlgebraMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                first.source.name(),
                first.target.name()
            )));
        }
        let images = first.images.iter().map(|v| self.apply_vec(v)).collect();
        let inverse = match (&self.inverse, &first.inverse) {
            (Some(a), Some(b)) => {
                let tmp = AlgebraMap {
                    source: self.target.clone(),
                    target: first.target.clone(),
                    images: (**a).clone(),
                    inverse: None,
                };
                let back = AlgebraMap {
                    source: first.target.clone(),
                    target: first.source.clone(),
                    images: (**b).clone(),
                    inverse: None,
                };
                Some(Arc::new(tmp.images.iter().map(|v| back.apply_vec(v)).collect()))
            }
            _ => None,
        };
        Ok(AlgebraMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
            inverse,
        })
    }

    /// Linear-map equality (images compared basis by basis).
    pub fn same_images(&self, other: &AlgebraMap) -> bool {
        same_algebra(&self.source, &other.source)
            && same_algebra(&self.target, &other.target)
            && self.images == other.images
    }

    /// Rewrites every coefficient (for parameter substitution).
    pub fn map_coefficients(
        &self,
        f: &dyn Fn(&Scalar) -> Result<Scalar>,
        source: &AlgebraRef,
        target: &AlgebraRef,
    ) -> Result<AlgebraMap> {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|(k, c)| Ok((*k, f(c)?))).collect::<Result<SparseVec>>())
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::linear(source, target, images)
    }
}

impl PartialEq for AlgebraMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_images(other)
    }
}

/// `f ⊗ g` on the tensor product algebras. Endomorphisms stay
/// endomorphisms of a single shared carrier.
pub fn tensor_map(f: &AlgebraMap, g: &AlgebraMap) -> AlgebraMap {
    let source = tensor_algebra(&f.source, &g.source);
    let target = if same_algebra(&f.source, &f.target) && same_algebra(&g.source, &g.target) {
        source.clone()
    } else {
        tensor_algebra(&f.target, &g.target)
    };
    let pair = |a: &[SparseVec], b: &[SparseVec], db: usize| -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                let mut v = Vec::with_capacity(x.len() * y.len());
                for (i, c) in x {
                    for (j, d) in y {
                        v.push((i * db + j, c * d));
                    }
                }
                v.sort_by_key(|(k, _)| *k);
                out.push(v);
            }
        }
        out
    };
    let images = pair(&f.images, &g.images, g.target.dim());
    let inverse = match (&f.inverse, &g.inverse) {
        (Some(fi), Some(gi)) => Some(Arc::new(pair(fi, gi, g.source.dim()))),
        _ => None,
    };
    AlgebraMap {
        source,
        target,
        images,
        inverse,
    }
}

/// Whether `f ∘ g = g ∘ f` as linear endomorphisms.
pub fn maps_commute(f: &AlgebraMap, g: &AlgebraMap) -> Result<bool> {
    Ok(f.compose(g)?.same_images(&g.compose(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t, &["a"]).unwrap()
    }

    /// `E_ij ↦ a^(i-j) E_ij` on `M_n`.
    fn conj(n: usize) -> AlgebraMap {
        let m = matrix_algebra(n);
        let images = (0..n * n)
            .map(|k| {
                let (i, j) = ((k / n) as i32, (k % n) as i32);
                vec![(k, Scalar::param("a").pow(i - j).unwrap())]
            })
            .collect();
        AlgebraMap::algebra_map(&m, &m, images, true).unwrap()
    }

    #[test]
    fn conjugation_is_automorphism() {
        let f = conj(2);
        let inv = f.inverse().unwrap();
        assert!(inv.compose(&f).unwrap().is_identity());
        assert_eq!(inv.image(1), &vec![(1, s("a"))]);
    }

    #[test]
    fn transpose_is_not_multiplicative() {
        let m = matrix_algebra(2);
        let images = vec![
            vec![(0, Scalar::one())],
            vec![(2, Scalar::one())],
            vec![(1, Scalar::one())],
            vec![(3, Scalar::one())],
        ];
        assert!(matches!(
            AlgebraMap::algebra_map(&m, &m, images, false),
            Err(Error::NotMultiplicative(..))
        ));
    }

    #[test]
    fn zero_map_not_unital() {
        let m = matrix_algebra(2);
        assert_eq!(
            AlgebraMap::algebra_map(&m, &m, vec![vec![]; 4], false).unwrap_err(),
            Error::NotUnital
        );
    }

    #[test]
    fn tensor_of_automorphisms() {
        let f = conj(2);
        let g = conj(3);
        let fg = tensor_map(&f, &g);
        assert_eq!(fg.source().dim(), 36);
        // E12⊗E'13 ↦ a^-1 · a^-2
        assert_eq!(fg.image(9 + 2), &vec![(9 + 2, s("a^-3"))]);
        let checked = AlgebraMap::algebra_map(fg.source(), fg.target(), fg.images().to_vec(), true).unwrap();
        assert_eq!(checked.inverse().unwrap(), fg.inverse().unwrap());
    }

    #[test]
    fn non_commuting_permutations() {
        // conjugation by the swap matrix and transpose-like swap of E11/E22 only via conjugation by diag(1, a)
        let m = matrix_algebra(2);
        let swap = AlgebraMap::algebra_map(
            &m,
            &m,
            vec![
                vec![(3, Scalar::one())],
                vec![(2, Scalar::one())],
                vec![(1, Scalar::one())],
                vec![(0, Scalar::one())],
            ],
            true,
        )
        .unwrap();
        assert!(!maps_commute(&swap, &conj(2)).unwrap());
    }

    #[test]
    fn commuting_maps() {
        let f = conj(3);
        let id = AlgebraMap::identity(f.source());
        assert!(maps_commute(&f, &id).unwrap());
        assert!(maps_commute(&f, &f.inverse().unwrap()).unwrap());
    }
}
