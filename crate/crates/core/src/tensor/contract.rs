//! Evaluation of Sweedler-style formulas such as `R_l r_j ⊗ R^l r_k ⊗ r^k r^j`.
//!
//! A formula is a sequence of copies of tensors. Every leg of a copy is
//! multiplied into one output leg, either on the right or on the left of
//! what that output leg already holds. Output legs nobody touches hold `1`.
//! Terms are collected after each copy, so intermediate sizes stay bounded
//! by the output dimension.

use std::collections::{BTreeMap, HashMap};

use super::{leg_names, MultiIndex, TensorElement};
use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const UNTOUCHED: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `out ← out · x`
    Right,
    /// `out ← x · out`
    Left,
}

/// One copy of a tensor in a formula: leg `i` goes to output leg
/// `places[i].0` on side `places[i].1`.
#[derive(Clone, Debug)]
pub struct Copy<'a> {
    pub tensor: &'a TensorElement,
    pub places: Vec<(usize, Side)>,
}

impl<'a> Copy<'a> {
    /// All legs multiplied on the right.
    pub fn right(tensor: &'a TensorElement, outs: &[usize]) -> Self {
        Copy {
            tensor,
            places: outs.iter().map(|&o| (o, Side::Right)).collect(),
        }
    }

    pub fn new(tensor: &'a TensorElement, places: &[(usize, Side)]) -> Self {
        Copy {
            tensor,
            places: places.to_vec(),
        }
    }
}

pub fn contract(out_legs: &[AlgebraRef], copies: &[Copy<'_>]) -> Result<TensorElement> {
    for (n, c) in copies.iter().enumerate() {
        if c.places.len() != c.tensor.num_legs() {
            return Err(Error::ShapeMismatch(format!(
                "copy {n} places {} legs of a {}-leg tensor",
                c.places.len(),
                c.tensor.num_legs()
            )));
        }
        for (i, &(o, _)) in c.places.iter().enumerate() {
            let Some(out) = out_legs.get(o) else {
                return Err(Error::PositionOutOfRange(format!("output leg {o} in copy {n}")));
            };
            if !same_algebra(out, &c.tensor.legs()[i]) {
                return Err(Error::LegMismatch(format!(
                    "copy {n} leg {i} is {} but output leg {o} is {} (copy legs [{}])",
                    c.tensor.legs()[i].name(),
                    out.name(),
                    leg_names(c.tensor.legs())
                )));
            }
        }
    }

    let mut state: HashMap<MultiIndex, Scalar> = HashMap::new();
    state.insert(vec![UNTOUCHED; out_legs.len()], Scalar::one());
    for copy in copies {
        let mut next: HashMap<MultiIndex, Scalar> = HashMap::with_capacity(state.len());
        let terms: Vec<(&MultiIndex, &Scalar)> = copy.tensor.terms().iter().collect();
        for (key, c) in &state {
            for &(tidx, d) in terms.iter() {
                place(out_legs, key, tidx, &copy.places, &mut |k, coef| {
                    let v = match coef {
                        Some(e) => &(c * d) * &e,
                        None => c * d,
                    };
                    match next.entry(k) {
                        std::collections::hash_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += v;
                        }
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            slot.insert(v);
                        }
                    }
                });
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }

    let mut result: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (key, c) in state {
        let mut partial = vec![(key, c)];
        for (leg, out) in out_legs.iter().enumerate() {
            if partial[0].0[leg] != UNTOUCHED {
                continue;
            }
            let mut expanded = Vec::with_capacity(partial.len() * out.unit().len());
            for (k, v) in &partial {
                for (u, e) in out.unit() {
                    let mut k = k.clone();
                    k[leg] = *u;
                    expanded.push((k, v * e));
                }
            }
            partial = expanded;
        }
        for (k, v) in partial {
            *result.entry(k).or_default() += v;
        }
    }
    Ok(TensorElement::from_map(out_legs.to_vec(), result))
}

/// Multiplies one tensor term into a state key; `emit` receives each
/// resulting key with the product of structure constants (`None` for 1).
fn place(
    out_legs: &[AlgebraRef],
    key: &MultiIndex,
    tidx: &MultiIndex,
    places: &[(usize, Side)],
    emit: &mut dyn FnMut(MultiIndex, Option<Scalar>),
) {
    let mut partial: Vec<(MultiIndex, Option<Scalar>)> = vec![(key.clone(), None)];
    for (&x, &(o, side)) in tidx.iter().zip(places) {
        let cur = partial[0].0[o];
        if cur == UNTOUCHED && partial.len() == 1 {
            partial[0].0[o] = x;
            continue;
        }
        let mut next = Vec::new();
        for (k, coef) in partial {
            let cur = k[o];
            if cur == UNTOUCHED {
                let mut k = k;
                k[o] = x;
                next.push((k, coef));
                continue;
            }
            let prod = match side {
                Side::Right => out_legs[o].mul_basis(cur, x),
                Side::Left => out_legs[o].mul_basis(x, cur),
            };
            for (r, e) in prod {
                let mut k2 = k.clone();
                k2[o] = *r;
                let c2 = match (&coef, e.is_one()) {
                    (None, true) => None,
                    (None, false) => Some(e.clone()),
                    (Some(c), true) => Some(c.clone()),
                    (Some(c), false) => Some(c * e),
                };
                next.push((k2, c2));
            }
        }
        if next.is_empty() {
            return;
        }
        partial = next;
    }
    for (k, c) in partial {
        emit(k, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;

    #[test]
    fn reproduces_plain_multiplication() {
        let m2 = matrix_algebra(2);
        let legs = vec![m2.clone(), m2.clone()];
        let t = TensorElement::new(
            legs.clone(),
            [
                (vec![0, 1], Scalar::from_int(2)),
                (vec![1, 2], Scalar::one()),
                (vec![3, 3], Scalar::one()),
            ],
        )
        .unwrap();
        let u = TensorElement::new(
            legs.clone(),
            [(vec![2, 0], Scalar::one()), (vec![3, 2], Scalar::from_int(-1))],
        )
        .unwrap();
        let prod = contract(&legs, &[Copy::right(&t, &[0, 1]), Copy::right(&u, &[0, 1])]).unwrap();
        assert_eq!(prod, t.mul(&u).unwrap());
        // prepending the first copy reverses the order
        let rev = contract(
            &legs,
            &[
                Copy::right(&u, &[0, 1]),
                Copy::new(&t, &[(0, Side::Left), (1, Side::Left)]),
            ],
        )
        .unwrap();
        assert_eq!(rev, prod);
    }

    #[test]
    fn untouched_legs_hold_the_unit() {
        let m2 = matrix_algebra(2);
        let legs = vec![m2.clone(), m2.clone(), m2.clone()];
        let t = TensorElement::new(vec![m2.clone(), m2.clone()], [(vec![1, 2], Scalar::one())]).unwrap();
        let r13 = contract(&legs, &[Copy::right(&t, &[0, 2])]).unwrap();
        assert_eq!(r13, t.embed(&legs, &[0, 2]).unwrap());
    }

    #[test]
    fn copy_legs_may_share_output() {
        // m(t) = t_1 t_2 collapses both legs onto one output leg
        let m2 = matrix_algebra(2);
        let t = TensorElement::new(vec![m2.clone(), m2.clone()], [(vec![1, 2], Scalar::one())]).unwrap();
        let m = contract(std::slice::from_ref(&m2), &[Copy::right(&t, &[0, 0])]).unwrap();
        assert_eq!(m.coeff(&[0]), Scalar::one());
        assert_eq!(m.num_terms(), 1);
    }
}
