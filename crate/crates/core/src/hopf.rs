//! Hopf algebras given by structure constants, quasitriangular structures,
//! weak R-matrices between two Hopf algebras and the bicrossed coproduct.

use std::collections::BTreeMap;

use crate::algebra::{same_algebra, tensor_algebra, tensor_map, AlgebraMap, AlgebraRef, Element};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::nonuple::{alpha_thm35, build_thm36, Nonuple};
use crate::oqa::OqaCandidate;
use crate::report::{error_witness, CheckReport, Witness};
use crate::scalar::Scalar;
use crate::tensor::{contract, Copy, Side, TensorElement};

use Side::{Left, Right};

pub mod axiom {
    pub const COASSOCIATIVE: &str = "coassociativity";
    pub const COUNIT_LEFT: &str = "counit-left";
    pub const COUNIT_RIGHT: &str = "counit-right";
    pub const DELTA_MULTIPLICATIVE: &str = "coproduct-multiplicative";
    pub const DELTA_UNITAL: &str = "coproduct-unital";
    pub const COUNIT_MULTIPLICATIVE: &str = "counit-multiplicative";
    pub const COUNIT_UNITAL: &str = "counit-unital";
    pub const ANTIPODE_LEFT: &str = "antipode-left";
    pub const ANTIPODE_RIGHT: &str = "antipode-right";
    pub const ANTIPODE_BIJECTIVE: &str = "antipode-bijective";

    pub const P_INVERTIBLE: &str = "p-invertible";
    pub const QT_DELTA_LEFT: &str = "Eq2.9";
    pub const QT_DELTA_RIGHT: &str = "Eq2.10";
    pub const QT_COCOMMUTES: &str = "Eq2.11";
    pub const QT_COUNIT_LEFT: &str = "Eq2.12-left";
    pub const QT_COUNIT_RIGHT: &str = "Eq2.12-right";

    pub const R_INVERTIBLE: &str = "r-invertible";
    pub const WEAK_DELTA_LEFT: &str = "Eq2.13";
    pub const WEAK_DELTA_RIGHT: &str = "Eq2.14";
    pub const WEAK_INVERSE_S: &str = "Eq2.15-S";
    pub const WEAK_INVERSE_SINV: &str = "Eq2.15-Sinv";
    pub const WEAK_S_FIXES_R: &str = "Eq2.16";

    pub const SBAR_INVERSE_CONJUGATE: &str = "Eq3.13";
    pub const SBAR_INVERSE_TWISTED: &str = "Eq3.14";
    pub const SBAR_SQUARE: &str = "Sbar^-2=S^-2⊗S'^-2";
}

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub algebra: AlgebraRef,
    /// `Δ(e_i)` for every basis element.
    pub delta: Vec<TensorElement>,
    pub counit: Vec<Scalar>,
    pub antipode: AlgebraMap,
    antipode_inv: Option<AlgebraMap>,
    certified: bool,
}

impl HopfAlgebra {
    pub fn new(
        algebra: AlgebraRef,
        delta: Vec<TensorElement>,
        counit: Vec<Scalar>,
        antipode: AlgebraMap,
    ) -> Result<Self> {
        let dim = algebra.dim();
        if delta.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: delta.len(),
            });
        }
        if counit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: counit.len(),
            });
        }
        for d in &delta {
            if d.num_legs() != 2 || !d.legs().iter().all(|l| same_algebra(l, &algebra)) {
                return Err(Error::LegMismatch(format!(
                    "coproduct values must lie in {0}⊗{0}",
                    algebra.name()
                )));
            }
        }
        if !same_algebra(antipode.source(), &algebra) || !same_algebra(antipode.target(), &algebra) {
            return Err(Error::AlgebraMismatch("antipode must be an endomorphism".into()));
        }
        Ok(HopfAlgebra {
            algebra,
            delta,
            counit,
            antipode,
            antipode_inv: None,
            certified: false,
        })
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn certify(&mut self) -> CheckReport {
        let rep = check_hopf(self);
        self.certified = rep.passed();
        if self.certified {
            self.antipode_inv = self.antipode.inverse().ok();
        }
        rep
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::Uncertified(format!("Hopf algebra {}", self.name())))
        }
    }

    pub fn antipode_inverse(&self) -> Result<AlgebraMap> {
        match &self.antipode_inv {
            Some(m) => Ok(m.clone()),
            None => self.antipode.inverse(),
        }
    }

    /// `S⁻²`, certified as an algebra automorphism.
    pub fn antipode_inverse_squared(&self) -> Result<AlgebraMap> {
        let si = self.antipode_inverse()?;
        let sq = si.compose(&si)?;
        AlgebraMap::algebra_map(&self.algebra, &self.algebra, sq.images().to_vec(), true)
    }

    /// `Δ` extended linearly to a coefficient vector.
    pub fn coproduct(&self, x: &SparseVec) -> TensorElement {
        let legs = vec![self.algebra.clone(), self.algebra.clone()];
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (i, c) in x {
            for (k, v) in self.delta[*i].terms() {
                *acc.entry(k.clone()).or_default() += c * v;
            }
        }
        TensorElement::new(legs, acc.into_iter().filter(|(_, v)| !v.is_zero())).expect("indices in range")
    }

    pub fn counit_of(&self, x: &SparseVec) -> Scalar {
        x.iter().map(|(i, c)| c * &self.counit[*i]).sum()
    }
}

fn same_hopf_carrier(t: &TensorElement, leg: usize, h: &HopfAlgebra) -> Result<()> {
    if leg >= t.num_legs() {
        return Err(Error::PositionOutOfRange(format!("leg {leg}")));
    }
    if !same_algebra(&t.legs()[leg], &h.algebra) {
        return Err(Error::AlgebraMismatch(format!(
            "leg {leg} is {} but the coproduct belongs to {}",
            t.legs()[leg].name(),
            h.name()
        )));
    }
    Ok(())
}

/// Replaces leg `leg` of `t` by the two legs of its coproduct.
pub fn coproduct_on_leg(t: &TensorElement, leg: usize, h: &HopfAlgebra) -> Result<TensorElement> {
    same_hopf_carrier(t, leg, h)?;
    let mut legs = t.legs().to_vec();
    legs.insert(leg + 1, h.algebra.clone());
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (idx, c) in t.terms() {
        for (pair, d) in h.delta[idx[leg]].terms() {
            let mut k = idx[..leg].to_vec();
            k.extend_from_slice(pair);
            k.extend_from_slice(&idx[leg + 1..]);
            *acc.entry(k).or_default() += c * d;
        }
    }
    TensorElement::new(legs, acc)
}

/// Applies the counit on leg `leg`, removing it. A one-leg input yields a
/// one-leg tensor over the field-free unit, so it is returned as a scalar
/// multiple of the remaining legs only when at least two legs exist.
pub fn counit_on_leg(t: &TensorElement, leg: usize, h: &HopfAlgebra) -> Result<TensorElement> {
    same_hopf_carrier(t, leg, h)?;
    if t.num_legs() < 2 {
        return Err(Error::ShapeMismatch("counit needs a leg to keep".into()));
    }
    let mut legs = t.legs().to_vec();
    legs.remove(leg);
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (idx, c) in t.terms() {
        let e = &h.counit[idx[leg]];
        if e.is_zero() {
            continue;
        }
        let mut k = idx.clone();
        k.remove(leg);
        *acc.entry(k).or_default() += c * e;
    }
    TensorElement::new(legs, acc)
}

/// `m(t)` for a two-leg tensor over one algebra.
fn multiply_out(t: &TensorElement) -> Result<TensorElement> {
    contract(&t.legs()[..1], &[Copy::right(t, &[0, 0])])
}

fn as_one_leg(a: &AlgebraRef, v: SparseVec) -> TensorElement {
    TensorElement::new(vec![a.clone()], v.into_iter().map(|(k, c)| (vec![k], c))).expect("in range")
}

/// Standard Hopf axioms, each verified on every basis element (pair).
pub fn check_hopf(h: &HopfAlgebra) -> CheckReport {
    let mut rep = CheckReport::new(format!("Hopf algebra {}", h.name()));
    let a = &h.algebra;
    let dim = a.dim();
    let basis = |i: usize| -> SparseVec { vec![(i, Scalar::one())] };

    let first = |mut f: Box<dyn FnMut(usize) -> Result<Option<Witness>> + '_>| -> Option<Witness> {
        for i in 0..dim {
            match f(i) {
                Ok(None) => {}
                Ok(Some(w)) => return Some(w),
                Err(e) => return Some(error_witness(&e)),
            }
        }
        None
    };
    let with_basis = |i: usize, w: Witness| -> Witness {
        match w {
            Witness::Coefficient { mut index, left, right } => {
                index.insert(0, format!("{}:", a.label(i)));
                Witness::Coefficient { index, left, right }
            }
            other => other,
        }
    };
    let record = |rep: &mut CheckReport, id: &str, w: Option<Witness>| match w {
        None => rep.pass(id),
        Some(w) => rep.fail(id, w),
    };
    let diff = |l: &TensorElement, r: &TensorElement| -> Option<Witness> {
        if l == r {
            None
        } else {
            Some(
                l.first_difference(r)
                    .map(Witness::from)
                    .unwrap_or_else(|| Witness::Message("legs differ".into())),
            )
        }
    };

    let w = first(Box::new(|i| {
        let d = &h.delta[i];
        let l = coproduct_on_leg(d, 0, h)?;
        let r = coproduct_on_leg(d, 1, h)?;
        Ok(diff(&l, &r).map(|w| with_basis(i, w)))
    }));
    record(&mut rep, axiom::COASSOCIATIVE, w);

    for (id, leg) in [(axiom::COUNIT_LEFT, 0), (axiom::COUNIT_RIGHT, 1)] {
        let w = first(Box::new(|i| {
            let l = counit_on_leg(&h.delta[i], leg, h)?;
            Ok(diff(&l, &as_one_leg(a, basis(i))).map(|w| with_basis(i, w)))
        }));
        record(&mut rep, id, w);
    }

    let mut w = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            let l = h.coproduct(a.mul_basis(i, j));
            match h.delta[i].mul(&h.delta[j]) {
                Ok(r) => {
                    if let Some(x) = diff(&l, &r) {
                        w = Some(with_basis(j, with_basis(i, x)));
                        break 'outer;
                    }
                }
                Err(e) => {
                    w = Some(error_witness(&e));
                    break 'outer;
                }
            }
        }
    }
    record(&mut rep, axiom::DELTA_MULTIPLICATIVE, w);
    let one2 = TensorElement::one(vec![a.clone(), a.clone()]);
    record(&mut rep, axiom::DELTA_UNITAL, diff(&h.coproduct(a.unit()), &one2));

    let mut w = None;
    'outer2: for i in 0..dim {
        for j in 0..dim {
            let l = h.counit_of(a.mul_basis(i, j));
            let r = &h.counit[i] * &h.counit[j];
            if l != r {
                w = Some(Witness::Message(format!(
                    "ε({}·{}) = {l} but ε({})ε({}) = {r}",
                    a.label(i),
                    a.label(j),
                    a.label(i),
                    a.label(j)
                )));
                break 'outer2;
            }
        }
    }
    record(&mut rep, axiom::COUNIT_MULTIPLICATIVE, w);
    let eu = h.counit_of(a.unit());
    rep.flag(axiom::COUNIT_UNITAL, eu.is_one(), || format!("ε(1) = {eu}"));

    let id = AlgebraMap::identity(a);
    for (axiom_id, left_map) in [(axiom::ANTIPODE_LEFT, true), (axiom::ANTIPODE_RIGHT, false)] {
        let w = first(Box::new(|i| {
            let maps: [&AlgebraMap; 2] = if left_map {
                [&h.antipode, &id]
            } else {
                [&id, &h.antipode]
            };
            let m = multiply_out(&h.delta[i].apply_maps(&maps)?)?;
            let unit: SparseVec = a.unit().iter().map(|(k, c)| (*k, c * &h.counit[i])).collect();
            Ok(diff(&m, &as_one_leg(a, unit)).map(|w| with_basis(i, w)))
        }));
        record(&mut rep, axiom_id, w);
    }

    match h.antipode.inverse() {
        Ok(_) => rep.pass(axiom::ANTIPODE_BIJECTIVE),
        Err(e) => rep.fail(axiom::ANTIPODE_BIJECTIVE, error_witness(&e)),
    }
    rep
}

/// `r₁₃ r₂₃` over the legs `(A, B, C)` of a two-leg `r ∈ A⊗C` and `s ∈ B⊗C`.
fn thirteen_twentythree(r: &TensorElement, s: &TensorElement) -> Result<TensorElement> {
    let legs = vec![r.legs()[0].clone(), s.legs()[0].clone(), r.legs()[1].clone()];
    contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(s, &[1, 2])])
}

/// `r₁₃ r₁₂` over `(A, B, C)` for `r ∈ A⊗C`, `s ∈ A⊗B`.
fn thirteen_twelve(r: &TensorElement, s: &TensorElement) -> Result<TensorElement> {
    let legs = vec![r.legs()[0].clone(), s.legs()[1].clone(), r.legs()[1].clone()];
    contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(s, &[0, 1])])
}

pub fn check_quasitriangular(h: &HopfAlgebra, p: &TensorElement) -> CheckReport {
    let mut rep = CheckReport::new(format!("quasitriangular structure on {}", h.name()));
    let legs_ok = p.num_legs() == 2 && p.legs().iter().all(|l| same_algebra(l, &h.algebra));
    if !legs_ok {
        rep.fail(axiom::P_INVERTIBLE, Witness::Message("p must lie in H⊗H".into()));
        return rep;
    }
    match p.invert() {
        Ok(_) => rep.pass(axiom::P_INVERTIBLE),
        Err(e) => rep.fail(axiom::P_INVERTIBLE, error_witness(&e)),
    }
    rep.equation(
        axiom::QT_DELTA_LEFT,
        (|| Ok((coproduct_on_leg(p, 0, h)?, thirteen_twentythree(p, p)?)))(),
    );
    rep.equation(
        axiom::QT_DELTA_RIGHT,
        (|| Ok((coproduct_on_leg(p, 1, h)?, thirteen_twelve(p, p)?)))(),
    );
    let mut w = None;
    for i in 0..h.algebra.dim() {
        let d = &h.delta[i];
        let sides = (|| Ok::<_, Error>((d.flip()?.mul(p)?, p.mul(d)?)))();
        match sides {
            Ok((l, r)) if l != r => {
                let mut x: Witness = l.first_difference(&r).map(Witness::from).unwrap();
                if let Witness::Coefficient { index, .. } = &mut x {
                    index.insert(0, format!("{}:", h.algebra.label(i)));
                }
                w = Some(x);
                break;
            }
            Ok(_) => {}
            Err(e) => {
                w = Some(error_witness(&e));
                break;
            }
        }
    }
    match w {
        None => rep.pass(axiom::QT_COCOMMUTES),
        Some(w) => rep.fail(axiom::QT_COCOMMUTES, w),
    }
    let one = TensorElement::one(vec![h.algebra.clone()]);
    rep.equation(axiom::QT_COUNIT_LEFT, counit_on_leg(p, 0, h).map(|x| (x, one.clone())));
    rep.equation(axiom::QT_COUNIT_RIGHT, counit_on_leg(p, 1, h).map(|x| (x, one.clone())));
    rep
}

pub fn check_weak_rmatrix(h: &HopfAlgebra, hp: &HopfAlgebra, r: &TensorElement) -> CheckReport {
    let mut rep = CheckReport::new(format!("weak R-matrix of ({}, {})", h.name(), hp.name()));
    let legs_ok =
        r.num_legs() == 2 && same_algebra(&r.legs()[0], &h.algebra) && same_algebra(&r.legs()[1], &hp.algebra);
    if !legs_ok {
        rep.fail(axiom::R_INVERTIBLE, Witness::Message("r must lie in H⊗H'".into()));
        return rep;
    }
    let r_inv = r.invert();
    match &r_inv {
        Ok(_) => rep.pass(axiom::R_INVERTIBLE),
        Err(e) => rep.fail(axiom::R_INVERTIBLE, error_witness(e)),
    }
    // (Δ⊗id)(r) = r_i ⊗ r_j ⊗ r^i r^j ; (id⊗Δ)(r) = r_i r_j ⊗ r^j ⊗ r^i
    rep.equation(
        axiom::WEAK_DELTA_LEFT,
        (|| Ok((coproduct_on_leg(r, 0, h)?, thirteen_twentythree(r, r)?)))(),
    );
    rep.equation(
        axiom::WEAK_DELTA_RIGHT,
        (|| {
            let legs = vec![h.algebra.clone(), hp.algebra.clone(), hp.algebra.clone()];
            let right = contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(r, &[0, 1])])?;
            Ok((coproduct_on_leg(r, 1, hp)?, right))
        })(),
    );
    if rep.passed() {
        let ri = r_inv.expect("checked above");
        let id_h = AlgebraMap::identity(&h.algebra);
        let id_hp = AlgebraMap::identity(&hp.algebra);
        rep.equation(
            axiom::WEAK_INVERSE_S,
            r.apply_maps(&[&h.antipode, &id_hp]).map(|x| (x, ri.clone())),
        );
        rep.equation(
            axiom::WEAK_INVERSE_SINV,
            hp.antipode_inverse()
                .and_then(|si| r.apply_maps(&[&id_h, &si]))
                .map(|x| (x, ri.clone())),
        );
        rep.equation(
            axiom::WEAK_S_FIXES_R,
            r.apply_maps(&[&h.antipode, &hp.antipode]).map(|x| (x, r.clone())),
        );
    }
    rep
}

/// `(A, p, id, S⁻²)`.
pub fn qt_to_oqa(h: &HopfAlgebra, p: &TensorElement) -> Result<OqaCandidate> {
    let rep = check_quasitriangular(h, p);
    if let Some(v) = rep.first_failure() {
        return Err(Error::Uncertified(format!(
            "quasitriangular check fails at {}",
            v.axiom
        )));
    }
    let u = h.antipode_inverse_squared()?;
    OqaCandidate::new(h.algebra.clone(), p.clone(), AlgebraMap::identity(&h.algebra), u)
}

/// Bicrossed coproduct Hopf algebra on `H ⊗ H'` twisted by the weak R-matrix `r`.
pub fn bicrossed_coproduct(h: &HopfAlgebra, hp: &HopfAlgebra, r: &TensorElement) -> Result<HopfAlgebra> {
    let rep = check_weak_rmatrix(h, hp, r);
    if let Some(v) = rep.first_failure() {
        return Err(Error::Uncertified(format!("weak R-matrix check fails at {}", v.axiom)));
    }
    let big_r = r.invert()?;
    let carrier = tensor_algebra(&h.algebra, &hp.algebra);
    let (dh, dhp) = (h.algebra.dim(), hp.algebra.dim());
    let legs4 = vec![
        h.algebra.clone(),
        hp.algebra.clone(),
        h.algebra.clone(),
        hp.algebra.clone(),
    ];
    let legs2 = vec![carrier.clone(), carrier.clone()];

    // Δ̄(h⊗h') = h_1 ⊗ r^i h'_1 R^l ⊗ r_i h_2 R_l ⊗ h'_2
    let mut delta = Vec::with_capacity(dh * dhp);
    for i in 0..dh {
        for j in 0..dhp {
            let t = contract(
                &legs4,
                &[
                    Copy::right(&h.delta[i], &[0, 2]),
                    Copy::right(&hp.delta[j], &[1, 3]),
                    Copy::new(r, &[(2, Left), (1, Left)]),
                    Copy::new(&big_r, &[(2, Right), (1, Right)]),
                ],
            )?;
            delta.push(t.group(&[2, 2])?.relabel_legs(legs2.clone())?);
        }
    }
    let counit = (0..dh)
        .flat_map(|i| (0..dhp).map(move |j| (i, j)))
        .map(|(i, j)| &h.counit[i] * &hp.counit[j])
        .collect();
    let antipode = bicrossed_antipode(h, hp, r, &big_r, &carrier)?;
    HopfAlgebra::new(carrier, delta, counit, antipode)
}

/// `R (a) r` for a flattened `a` in `H⊗H'`, all as elements of the carrier.
fn conjugate(
    carrier: &AlgebraRef,
    left: &TensorElement,
    middle: &SparseVec,
    right: &TensorElement,
) -> Result<SparseVec> {
    let flat = |t: &TensorElement| -> Result<Element> {
        let g = t.group(&[2])?;
        Element::new(carrier, g.terms().iter().map(|(k, c)| (k[0], c.clone())))
    };
    let m = Element::new(carrier, middle.iter().cloned())?;
    Ok(flat(left)?.mul(&m)?.mul(&flat(right)?)?.to_sparse())
}

fn bicrossed_antipode(
    h: &HopfAlgebra,
    hp: &HopfAlgebra,
    r: &TensorElement,
    big_r: &TensorElement,
    carrier: &AlgebraRef,
) -> Result<AlgebraMap> {
    let s = tensor_map(&h.antipode, &hp.antipode);
    let images = (0..carrier.dim())
        .map(|k| conjugate(carrier, big_r, s.image(k), r))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap::linear(carrier, carrier, images)
}

/// The quasitriangular structure `[p, p']` on the bicrossed coproduct.
pub fn qt_bicrossed(
    h: &HopfAlgebra,
    hp: &HopfAlgebra,
    p: &TensorElement,
    pp: &TensorElement,
    r: &TensorElement,
) -> Result<(HopfAlgebra, TensorElement)> {
    for (hopf, x) in [(h, p), (hp, pp)] {
        let rep = check_quasitriangular(hopf, x);
        if let Some(v) = rep.first_failure() {
            return Err(Error::Uncertified(format!(
                "quasitriangular check on {} fails at {}",
                hopf.name(),
                v.axiom
            )));
        }
    }
    let bic = bicrossed_coproduct(h, hp, r)?;
    let big_r = r.invert()?;
    let legs = vec![bic.algebra.clone(), bic.algebra.clone()];
    let bracket = alpha_thm35(p, pp, r, &big_r)?.group(&[2, 2])?.relabel_legs(legs)?;
    Ok((bic, bracket))
}

/// Checks that `S̄⁻¹` (by linear inversion) agrees with its two closed forms
/// and that `S̄⁻² = S⁻² ⊗ S'⁻²` on every basis element.
pub fn check_bicrossed_antipode(h: &HopfAlgebra, hp: &HopfAlgebra, r: &TensorElement) -> Result<CheckReport> {
    let bic = bicrossed_coproduct(h, hp, r)?;
    let carrier = bic.algebra.clone();
    let big_r = r.invert()?;
    let sbar_inv = bic.antipode.inverse()?;
    let s_inv = tensor_map(&h.antipode_inverse()?, &hp.antipode_inverse()?);
    let mut rep = CheckReport::new(format!("bicrossed antipode on {}", carrier.name()));

    let mut conj = Vec::new();
    let mut twisted = Vec::new();
    for k in 0..carrier.dim() {
        conj.push(conjugate(&carrier, &big_r, s_inv.image(k), r)?);
        let inner = conjugate(&carrier, r, &vec![(k, Scalar::one())], &big_r)?;
        twisted.push(s_inv.apply_vec(&inner));
    }
    let compare = |rep: &mut CheckReport, id: &str, images: &[SparseVec], expect: &AlgebraMap| match (0..carrier.dim())
        .find(|&k| &images[k] != expect.image(k))
    {
        None => rep.pass(id),
        Some(k) => rep.fail(
            id,
            Witness::Message(format!(
                "differs on basis element {}: {} vs {}",
                carrier.label(k),
                carrier.fmt_vec(&images[k]),
                carrier.fmt_vec(expect.image(k))
            )),
        ),
    };
    compare(&mut rep, axiom::SBAR_INVERSE_CONJUGATE, &conj, &sbar_inv);
    compare(&mut rep, axiom::SBAR_INVERSE_TWISTED, &twisted, &sbar_inv);
    let sbar_m2 = sbar_inv.compose(&sbar_inv)?;
    let s_m2 = tensor_map(&h.antipode_inverse_squared()?, &hp.antipode_inverse_squared()?);
    compare(&mut rep, axiom::SBAR_SQUARE, sbar_m2.images(), &s_m2);
    Ok(rep)
}

/// The OQA on `H ⊗ H'` obtained from two quasitriangular Hopf algebras and
/// a weak R-matrix through the nonuple `(A, A', p, p', r, id, S⁻², id, S'⁻²)`.
pub fn cor39_oqa(
    h: &HopfAlgebra,
    hp: &HopfAlgebra,
    p: &TensorElement,
    pp: &TensorElement,
    r: &TensorElement,
) -> Result<OqaCandidate> {
    qt_bicrossed(h, hp, p, pp, r)?;
    let mut n = cor39_nonuple(h, hp, p, pp, r)?;
    let rep = n.certify();
    if let Some(v) = rep.first_failure() {
        return Err(Error::Uncertified(format!("nonuple check fails at {}", v.axiom)));
    }
    let anti = check_bicrossed_antipode(h, hp, r)?;
    if let Some(v) = anti.first_failure() {
        return Err(Error::Uncertified(format!(
            "bicrossed antipode check fails at {}",
            v.axiom
        )));
    }
    build_thm36(&n)
}

/// `(A, A', p, p', r, id, S⁻², id, S'⁻²)`, not yet certified.
pub fn cor39_nonuple(
    h: &HopfAlgebra,
    hp: &HopfAlgebra,
    p: &TensorElement,
    pp: &TensorElement,
    r: &TensorElement,
) -> Result<Nonuple> {
    Nonuple::new(
        h.algebra.clone(),
        hp.algebra.clone(),
        p.clone(),
        pp.clone(),
        r.clone(),
        AlgebraMap::identity(&h.algebra),
        h.antipode_inverse_squared()?,
        AlgebraMap::identity(&hp.algebra),
        hp.antipode_inverse_squared()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn kz2(antipode_t: SparseVec) -> HopfAlgebra {
        let one = Scalar::one;
        let a = Algebra::new(
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
        .unwrap();
        let legs = vec![a.clone(), a.clone()];
        let delta = vec![
            TensorElement::new(legs.clone(), [(vec![0, 0], one())]).unwrap(),
            TensorElement::new(legs, [(vec![1, 1], one())]).unwrap(),
        ];
        let s = AlgebraMap::linear(&a, &a, vec![vec![(0, one())], antipode_t]).unwrap();
        HopfAlgebra::new(a, delta, vec![one(), one()], s).unwrap()
    }

    #[test]
    fn group_algebra_is_hopf() {
        let mut h = kz2(vec![(1, Scalar::one())]);
        let rep = h.certify();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn zero_antipode_fails() {
        let h = kz2(vec![]);
        let rep = check_hopf(&h);
        assert!(!rep.get(axiom::ANTIPODE_LEFT).unwrap().pass);
        assert!(!rep.get(axiom::ANTIPODE_BIJECTIVE).unwrap().pass);
        assert!(rep.get(axiom::COASSOCIATIVE).unwrap().pass);
    }

    #[test]
    fn unit_r_matrix_on_cocommutative() {
        let h = kz2(vec![(1, Scalar::one())]);
        let one = TensorElement::one(vec![h.algebra.clone(), h.algebra.clone()]);
        assert!(check_quasitriangular(&h, &one).passed());
        assert!(check_weak_rmatrix(&h, &h, &one).passed());
    }
}
