//! OQA nonuples `(H, H', p, p', r, D, U, D', U')` and the tensor-product
//! OQA constructions they feed.

use crate::algebra::{maps_commute, same_algebra, tensor_map, AlgebraMap, AlgebraRef};
use crate::error::{Error, Result};
use crate::oqa::{inverse_twist, OqaCandidate};
use crate::report::{error_witness, CheckReport, Witness};
use crate::tensor::{contract, Copy, Side, TensorElement};

use Side::{Left, Right};

pub mod axiom {
    pub const R_INVERTIBLE: &str = "r-invertible";
    pub const MIXED_INVERSE_LEFT: &str = "Eq3.1-left";
    pub const MIXED_INVERSE_RIGHT: &str = "Eq3.1-right";
    pub const D_FIXES_R: &str = "Eq3.2-D";
    pub const U_FIXES_R: &str = "Eq3.2-U";
    pub const P_R_R: &str = "Eq3.3";
    pub const R_R_PPRIME: &str = "Eq3.4";
    pub const DERIVED_HHH: &str = "Eq3.5";
    pub const DERIVED_HPP: &str = "Eq3.6";
    pub const DERIVED_PHH: &str = "Eq3.7";
    pub const DERIVED_PPH: &str = "Eq3.8";
    pub const COMPAT_Q_PPRIME: &str = "Eq3.9";
    pub const COMPAT_Q_P: &str = "Eq3.10";
    pub const COMPAT_Q_PPRIME_DERIVED: &str = "Eq3.11";
    pub const COMPAT_Q_P_DERIVED: &str = "Eq3.12";
    pub const ALPHA_INVERSE: &str = "closed-form-inverse";
}

#[derive(Clone, Debug)]
pub struct Nonuple {
    pub h: AlgebraRef,
    pub hp: AlgebraRef,
    pub p: TensorElement,
    pub pp: TensorElement,
    pub r: TensorElement,
    pub d: AlgebraMap,
    pub u: AlgebraMap,
    pub dp: AlgebraMap,
    pub up: AlgebraMap,
    inverses: Option<Inverses>,
    certified: bool,
}

/// Verified inverses `P`, `P'`, `R`.
#[derive(Clone, Debug)]
pub struct Inverses {
    pub p: TensorElement,
    pub pp: TensorElement,
    pub r: TensorElement,
}

impl Nonuple {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        h: AlgebraRef,
        hp: AlgebraRef,
        p: TensorElement,
        pp: TensorElement,
        r: TensorElement,
        d: AlgebraMap,
        u: AlgebraMap,
        dp: AlgebraMap,
        up: AlgebraMap,
    ) -> Result<Self> {
        let on = |t: &TensorElement, a: &AlgebraRef, b: &AlgebraRef| {
            t.num_legs() == 2 && same_algebra(&t.legs()[0], a) && same_algebra(&t.legs()[1], b)
        };
        if !on(&p, &h, &h) || !on(&pp, &hp, &hp) || !on(&r, &h, &hp) {
            return Err(Error::LegMismatch(format!(
                "need p ∈ {0}⊗{0}, p' ∈ {1}⊗{1}, r ∈ {0}⊗{1}",
                h.name(),
                hp.name()
            )));
        }
        for (name, m, a) in [("D", &d, &h), ("U", &u, &h), ("D'", &dp, &hp), ("U'", &up, &hp)] {
            if !same_algebra(m.source(), a) || !same_algebra(m.target(), a) {
                return Err(Error::AlgebraMismatch(format!(
                    "{name} is not an endomorphism of {}",
                    a.name()
                )));
            }
        }
        Ok(Nonuple {
            h,
            hp,
            p,
            pp,
            r,
            d,
            u,
            dp,
            up,
            inverses: None,
            certified: false,
        })
    }

    /// `(H, H, p, p, p, D, U, D, U)`.
    pub fn diagonal(c: &OqaCandidate) -> Result<Self> {
        Nonuple::new(
            c.algebra.clone(),
            c.algebra.clone(),
            c.r.clone(),
            c.r.clone(),
            c.r.clone(),
            c.d.clone(),
            c.u.clone(),
            c.d.clone(),
            c.u.clone(),
        )
    }

    pub fn component_h(&self) -> Result<OqaCandidate> {
        let c = OqaCandidate::new(self.h.clone(), self.p.clone(), self.d.clone(), self.u.clone())?;
        Ok(match &self.inverses {
            Some(i) => c.with_r_inverse(i.p.clone()),
            None => c,
        })
    }

    pub fn component_hp(&self) -> Result<OqaCandidate> {
        let c = OqaCandidate::new(self.hp.clone(), self.pp.clone(), self.dp.clone(), self.up.clone())?;
        Ok(match &self.inverses {
            Some(i) => c.with_r_inverse(i.pp.clone()),
            None => c,
        })
    }

    /// Supplies candidate inverses; they are verified before use.
    pub fn with_inverses(mut self, inv: Inverses) -> Self {
        self.inverses = Some(inv);
        self
    }

    /// Inverses of `p`, `p'`, `r`, each verified two-sidedly.
    pub fn inverses(&self) -> Result<Inverses> {
        let pick = |cached: Option<&TensorElement>, t: &TensorElement| -> Result<TensorElement> {
            if let Some(c) = cached {
                if c.is_inverse_of(t)? {
                    return Ok(c.clone());
                }
            }
            t.invert()
        };
        let c = self.inverses.as_ref();
        Ok(Inverses {
            p: pick(c.map(|i| &i.p), &self.p)?,
            pp: pick(c.map(|i| &i.pp), &self.pp)?,
            r: pick(c.map(|i| &i.r), &self.r)?,
        })
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn certify(&mut self) -> CheckReport {
        let rep = check_nonuple(self);
        self.certified = rep.passed();
        if self.certified {
            self.inverses = self.inverses().ok();
        }
        rep
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::Uncertified(format!(
                "nonuple on {}, {}",
                self.h.name(),
                self.hp.name()
            )))
        }
    }

    fn legs(&self, which: [bool; 3]) -> Vec<AlgebraRef> {
        which
            .iter()
            .map(|&prime| if prime { self.hp.clone() } else { self.h.clone() })
            .collect()
    }
}

/// `p_i r_k ⊗ p^i r_s ⊗ r^k r^s` and `r_k p_i ⊗ r_s p^i ⊗ r^s r^k` over `H, H, H'`.
fn p_r_r_sides(n: &Nonuple) -> Result<(TensorElement, TensorElement)> {
    let legs = n.legs([false, false, true]);
    let (p, r) = (&n.p, &n.r);
    let left = contract(
        &legs,
        &[
            Copy::right(p, &[0, 1]),
            Copy::right(r, &[0, 2]),
            Copy::right(r, &[1, 2]),
        ],
    )?;
    let right = contract(
        &legs,
        &[
            Copy::right(r, &[0, 2]),
            Copy::new(r, &[(1, Right), (2, Left)]),
            Copy::right(p, &[0, 1]),
        ],
    )?;
    Ok((left, right))
}

/// `r_k r_s ⊗ r^k p'_j ⊗ r^s p'^j` and `r_s r_k ⊗ p'_j r^k ⊗ p'^j r^s` over `H, H', H'`.
fn r_r_pp_sides(n: &Nonuple) -> Result<(TensorElement, TensorElement)> {
    let legs = n.legs([false, true, true]);
    let (pp, r) = (&n.pp, &n.r);
    let left = contract(
        &legs,
        &[
            Copy::right(r, &[0, 1]),
            Copy::right(r, &[0, 2]),
            Copy::right(pp, &[1, 2]),
        ],
    )?;
    let right = contract(
        &legs,
        &[
            Copy::right(r, &[0, 1]),
            Copy::new(r, &[(0, Left), (2, Right)]),
            Copy::new(pp, &[(1, Left), (2, Left)]),
        ],
    )?;
    Ok((left, right))
}

pub fn check_nonuple(n: &Nonuple) -> CheckReport {
    let mut rep = CheckReport::new(format!("nonuple on {}, {}", n.h.name(), n.hp.name()));
    match n.component_h() {
        Ok(c) => rep.absorb("H:", crate::oqa::check_oqa(&c)),
        Err(e) => rep.fail("H:component", error_witness(&e)),
    }
    match n.component_hp() {
        Ok(c) => rep.absorb("H':", crate::oqa::check_oqa(&c)),
        Err(e) => rep.fail("H':component", error_witness(&e)),
    }
    let r_inv = match &n.inverses {
        Some(i) if i.r.is_inverse_of(&n.r).unwrap_or(false) => Ok(i.r.clone()),
        _ => n.r.invert(),
    };
    match &r_inv {
        Ok(_) => rep.pass(axiom::R_INVERTIBLE),
        Err(e) => rep.fail(axiom::R_INVERTIBLE, error_witness(e)),
    }
    match &r_inv {
        Ok(ri) => {
            let sides = inverse_twist(&n.r, ri, &n.d, &n.up);
            let one = TensorElement::one(n.r.legs().to_vec());
            rep.equation(axiom::MIXED_INVERSE_LEFT, sides.clone().map(|(l, _)| (l, one.clone())));
            rep.equation(axiom::MIXED_INVERSE_RIGHT, sides.map(|(_, r)| (r, one)));
        }
        Err(_) => {
            let w = Witness::Message("needs an inverse of r".into());
            rep.fail(axiom::MIXED_INVERSE_LEFT, w.clone());
            rep.fail(axiom::MIXED_INVERSE_RIGHT, w);
        }
    }
    rep.equation(
        axiom::D_FIXES_R,
        n.r.apply_maps(&[&n.d, &n.dp]).map(|x| (x, n.r.clone())),
    );
    rep.equation(
        axiom::U_FIXES_R,
        n.r.apply_maps(&[&n.u, &n.up]).map(|x| (x, n.r.clone())),
    );
    rep.equation(axiom::P_R_R, p_r_r_sides(n));
    rep.equation(axiom::R_R_PPRIME, r_r_pp_sides(n));
    rep
}

/// `(H, H', p, p', r, U, D, U', D')`.
pub fn swap_nonuple_orientation(n: &Nonuple) -> Result<Nonuple> {
    n.require_certified()?;
    let mut out = n.clone();
    std::mem::swap(&mut out.d, &mut out.u);
    std::mem::swap(&mut out.dp, &mut out.up);
    out.certified = false;
    Ok(out)
}

/// The four identities every nonuple satisfies as a consequence of its axioms.
pub fn derived_identities(n: &Nonuple) -> Result<CheckReport> {
    n.require_certified()?;
    let inv = n.inverses()?;
    let (p, pp, r) = (&n.p, &n.pp, &n.r);
    let (big_p, big_pp, big_r) = (&inv.p, &inv.pp, &inv.r);
    let mut rep = CheckReport::new(format!("derived identities on {}, {}", n.h.name(), n.hp.name()));

    // r_s ⊗ r_k ⊗ r^s r^k = P_l r_s p_i ⊗ P^l r_k p^i ⊗ r^k r^s
    let legs = n.legs([false, false, true]);
    let sides = (|| {
        let left = contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(r, &[1, 2])])?;
        let right = contract(
            &legs,
            &[
                Copy::right(big_p, &[0, 1]),
                Copy::right(r, &[0, 2]),
                Copy::new(r, &[(1, Right), (2, Left)]),
                Copy::right(p, &[0, 1]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::DERIVED_HHH, sides);

    // r_k ⊗ p'_j ⊗ r^k p'^j = R_l r_s r_k ⊗ R^l p'_j r^k ⊗ p'^j r^s
    let legs = n.legs([false, true, true]);
    let sides = (|| {
        let left = contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(pp, &[1, 2])])?;
        let right = contract(
            &legs,
            &[
                Copy::right(big_r, &[0, 1]),
                Copy::right(r, &[0, 2]),
                Copy::new(pp, &[(1, Right), (2, Left)]),
                Copy::right(r, &[0, 1]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::DERIVED_HPP, sides);

    // R^l ⊗ p_i ⊗ R_l p^i = r^k R^m R^l ⊗ r_k p_i R_l ⊗ p^i R_m
    let legs = n.legs([true, false, false]);
    let sides = (|| {
        let left = contract(&legs, &[Copy::right(big_r, &[2, 0]), Copy::right(p, &[1, 2])])?;
        let right = contract(
            &legs,
            &[
                Copy::right(r, &[1, 0]),
                Copy::right(big_r, &[2, 0]),
                Copy::new(p, &[(1, Right), (2, Left)]),
                Copy::right(big_r, &[1, 0]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::DERIVED_PHH, sides);

    // R^m ⊗ R^l ⊗ R_m R_l = P'_n R^m p'_j ⊗ P'^n R^l p'^j ⊗ R_l R_m
    let legs = n.legs([true, true, false]);
    let sides = (|| {
        let left = contract(&legs, &[Copy::right(big_r, &[2, 0]), Copy::right(big_r, &[2, 1])])?;
        let right = contract(
            &legs,
            &[
                Copy::right(big_pp, &[0, 1]),
                Copy::right(big_r, &[2, 0]),
                Copy::new(big_r, &[(2, Left), (1, Right)]),
                Copy::right(pp, &[0, 1]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::DERIVED_PPH, sides);
    Ok(rep)
}

fn same_components(a: &Nonuple, b: &Nonuple) -> Result<()> {
    let mismatch = |what: &str| Err(Error::ComponentMismatch(what.to_string()));
    if !same_algebra(&a.h, &b.h) {
        return mismatch("H");
    }
    if !same_algebra(&a.hp, &b.hp) {
        return mismatch("H'");
    }
    if a.p != b.p {
        return mismatch("p");
    }
    if a.pp != b.pp {
        return mismatch("p'");
    }
    for (name, x, y) in [
        ("D", &a.d, &b.d),
        ("U", &a.u, &b.u),
        ("D'", &a.dp, &b.dp),
        ("U'", &a.up, &b.up),
    ] {
        if !x.same_images(y) {
            return mismatch(name);
        }
    }
    Ok(())
}

/// Compatibility of two weak R-matrices `r`, `q` sharing all other data.
pub fn check_pair_compat(n_r: &Nonuple, n_q: &Nonuple) -> Result<CheckReport> {
    n_r.require_certified()?;
    n_q.require_certified()?;
    same_components(n_r, n_q)?;
    let inv_r = n_r.inverses()?;
    let inv_q = n_q.inverses()?;
    let (p, pp, r, q) = (&n_r.p, &n_r.pp, &n_r.r, &n_q.r);
    let (big_r, big_q) = (&inv_r.r, &inv_q.r);
    let mut rep = CheckReport::new(format!("pair compatibility on {}, {}", n_r.h.name(), n_r.hp.name()));

    // Q^t p'_j ⊗ Q_t r_k ⊗ p'^j r^k = p'_j Q^t ⊗ r_k Q_t ⊗ r^k p'^j
    let legs = n_r.legs([true, false, true]);
    let sides = (|| {
        let left = contract(
            &legs,
            &[
                Copy::right(big_q, &[1, 0]),
                Copy::right(pp, &[0, 2]),
                Copy::right(r, &[1, 2]),
            ],
        )?;
        let right = contract(
            &legs,
            &[
                Copy::right(big_q, &[1, 0]),
                Copy::new(pp, &[(0, Left), (2, Right)]),
                Copy::new(r, &[(1, Left), (2, Left)]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::COMPAT_Q_PPRIME, sides);

    // r_k p_i ⊗ r^k Q^t ⊗ p^i Q_t = p_i r_k ⊗ Q^t r^k ⊗ Q_t p^i
    let legs = n_r.legs([false, true, false]);
    let sides = (|| {
        let left = contract(
            &legs,
            &[
                Copy::right(r, &[0, 1]),
                Copy::right(p, &[0, 2]),
                Copy::right(big_q, &[2, 1]),
            ],
        )?;
        let right = contract(
            &legs,
            &[
                Copy::right(r, &[0, 1]),
                Copy::new(p, &[(0, Left), (2, Right)]),
                Copy::new(big_q, &[(2, Left), (1, Left)]),
            ],
        )?;
        Ok((left, right))
    })();
    rep.equation(axiom::COMPAT_Q_P, sides);

    if rep.passed() {
        // p'_j ⊗ r_k ⊗ p'^j r^k = q^s p'_j Q^t ⊗ q_s r_k Q_t ⊗ r^k p'^j
        let legs = n_r.legs([true, false, true]);
        let sides = (|| {
            let left = contract(&legs, &[Copy::right(pp, &[0, 2]), Copy::right(r, &[1, 2])])?;
            let right = contract(
                &legs,
                &[
                    Copy::right(q, &[1, 0]),
                    Copy::right(pp, &[0, 2]),
                    Copy::new(r, &[(1, Right), (2, Left)]),
                    Copy::right(big_q, &[1, 0]),
                ],
            )?;
            Ok((left, right))
        })();
        rep.equation(axiom::COMPAT_Q_PPRIME_DERIVED, sides);

        // p_i ⊗ Q^t ⊗ p^i Q_t = R_n p_i r_k ⊗ R^n Q^t r^k ⊗ Q_t p^i
        let legs = n_r.legs([false, true, false]);
        let sides = (|| {
            let left = contract(&legs, &[Copy::right(p, &[0, 2]), Copy::right(big_q, &[2, 1])])?;
            let right = contract(
                &legs,
                &[
                    Copy::right(big_r, &[0, 1]),
                    Copy::right(p, &[0, 2]),
                    Copy::new(big_q, &[(2, Left), (1, Right)]),
                    Copy::right(r, &[0, 1]),
                ],
            )?;
            Ok((left, right))
        })();
        rep.equation(axiom::COMPAT_Q_P_DERIVED, sides);
    }
    Ok(rep)
}

/// `r_k p_i ⊗ p'_j Q^t ⊗ p^i Q_t ⊗ r^k p'^j` over `H, H', H, H'`.
pub fn alpha_thm35(
    p: &TensorElement,
    pp: &TensorElement,
    r: &TensorElement,
    big_q: &TensorElement,
) -> Result<TensorElement> {
    let (h, hp) = (p.legs()[0].clone(), pp.legs()[0].clone());
    let legs = vec![h.clone(), hp.clone(), h, hp];
    contract(
        &legs,
        &[
            Copy::right(r, &[0, 3]),
            Copy::right(p, &[0, 2]),
            Copy::right(pp, &[1, 3]),
            Copy::right(big_q, &[2, 1]),
        ],
    )
}

/// `P_l R_n ⊗ q^s P'_m ⊗ q_s P^l ⊗ P'^m R^n` over `H, H', H, H'`.
pub fn alpha_thm35_inverse(
    big_p: &TensorElement,
    big_pp: &TensorElement,
    big_r: &TensorElement,
    q: &TensorElement,
) -> Result<TensorElement> {
    let (h, hp) = (big_p.legs()[0].clone(), big_pp.legs()[0].clone());
    let legs = vec![h.clone(), hp.clone(), h, hp];
    contract(
        &legs,
        &[
            Copy::right(q, &[2, 1]),
            Copy::right(big_p, &[0, 2]),
            Copy::right(big_pp, &[1, 3]),
            Copy::right(big_r, &[0, 3]),
        ],
    )
}

/// Packages a four-leg `α̃` and its inverse as an OQA on `H ⊗ H'`.
fn assemble(n: &Nonuple, alpha: TensorElement, alpha_inv: TensorElement) -> Result<OqaCandidate> {
    let d = tensor_map(&n.d, &n.dp);
    let u = tensor_map(&n.u, &n.up);
    let carrier = d.source().clone();
    let legs = vec![carrier.clone(), carrier.clone()];
    let flat = alpha.group(&[2, 2])?.relabel_legs(legs.clone())?;
    let flat_inv = alpha_inv.group(&[2, 2])?.relabel_legs(legs)?;
    if !flat.is_inverse_of(&flat_inv)? {
        return Err(Error::NotInvertible);
    }
    Ok(OqaCandidate::new(carrier, flat, d, u)?.with_r_inverse(flat_inv))
}

/// OQA on `H ⊗ H'` from two compatible nonuples.
pub fn build_thm35(n_r: &Nonuple, n_q: &Nonuple) -> Result<OqaCandidate> {
    let compat = check_pair_compat(n_r, n_q)?;
    if let Some(v) = compat.first_failure() {
        return Err(Error::Uncertified(format!("pair compatibility fails at {}", v.axiom)));
    }
    let inv_r = n_r.inverses()?;
    let inv_q = n_q.inverses()?;
    let alpha = alpha_thm35(&n_r.p, &n_r.pp, &n_r.r, &inv_q.r)?;
    let alpha_inv = alpha_thm35_inverse(&inv_r.p, &inv_r.pp, &inv_r.r, &n_q.r)?;
    assemble(n_r, alpha, alpha_inv)
}

/// The `q = r` case of [`build_thm35`].
pub fn build_thm36(n: &Nonuple) -> Result<OqaCandidate> {
    n.require_certified()?;
    let inv = n.inverses()?;
    let alpha = alpha_thm35(&n.p, &n.pp, &n.r, &inv.r)?;
    let alpha_inv = alpha_thm35_inverse(&inv.p, &inv.pp, &inv.r, &n.r)?;
    assemble(n, alpha, alpha_inv)
}

/// `p_i p_j ⊗ p_k P^l ⊗ p^j P_l ⊗ p^i p^k` over `H, H, H, H`.
pub fn alpha_thm37(p: &TensorElement, big_p: &TensorElement) -> Result<TensorElement> {
    let h = p.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h.clone(), h];
    contract(
        &legs,
        &[
            Copy::right(p, &[0, 3]),
            Copy::right(p, &[0, 2]),
            Copy::right(p, &[1, 3]),
            Copy::right(big_p, &[2, 1]),
        ],
    )
}

/// OQA on `H ⊗ H` from a single OQA, by its own formula.
pub fn build_thm37(c: &OqaCandidate) -> Result<OqaCandidate> {
    c.require_certified()?;
    let big_p = c.r_inverse()?;
    let alpha = alpha_thm37(&c.r, &big_p)?;
    // inverse: P_l P_n ⊗ p^k P_m ⊗ p_k P^l ⊗ P^m P^n
    let h = c.algebra.clone();
    let legs = vec![h.clone(), h.clone(), h.clone(), h];
    let alpha_inv = contract(
        &legs,
        &[
            Copy::right(&c.r, &[2, 1]),
            Copy::right(&big_p, &[0, 2]),
            Copy::right(&big_p, &[1, 3]),
            Copy::right(&big_p, &[0, 3]),
        ],
    )?;
    let n = Nonuple::diagonal(c)?;
    assemble(&n, alpha, alpha_inv)
}

/// Whether `D, U` and `D', U'` commute; exposed for diagnostics.
pub fn maps_pairwise_commute(n: &Nonuple) -> Result<bool> {
    Ok(maps_commute(&n.d, &n.u)? && maps_commute(&n.dp, &n.up)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, Algebra};
    use crate::scalar::Scalar;

    fn trivial_nonuple() -> Nonuple {
        let one = Scalar::one;
        let k = Algebra::new("K", vec!["1".into()], [((0, 0), vec![(0, one())])], vec![(0, one())]).unwrap();
        let m2 = matrix_algebra(2);
        let unit = |a: &AlgebraRef, b: &AlgebraRef| TensorElement::one(vec![a.clone(), b.clone()]);
        let mut n = Nonuple::new(
            k.clone(),
            m2.clone(),
            unit(&k, &k),
            unit(&m2, &m2),
            unit(&k, &m2),
            AlgebraMap::identity(&k),
            AlgebraMap::identity(&k),
            AlgebraMap::identity(&m2),
            AlgebraMap::identity(&m2),
        )
        .unwrap();
        let rep = n.certify();
        assert!(rep.passed(), "{rep}");
        n
    }

    #[test]
    fn trivial_construction_is_unit() {
        let n = trivial_nonuple();
        let c = build_thm36(&n).unwrap();
        assert_eq!(c.r, TensorElement::one(c.r.legs().to_vec()));
        let c35 = build_thm35(&n, &n).unwrap();
        assert_eq!(c35.r, c.r);
        assert!(derived_identities(&n).unwrap().passed());
    }
}
