//! Oriented quantum algebras `(H, r, D, U)`: the axiom checker and the
//! constructions that produce new ones from old.

use crate::algebra::{maps_commute, same_algebra, tensor_map, AlgebraMap, AlgebraRef};
use crate::error::{Error, Result};
use crate::report::{error_witness, CheckReport};
use crate::tensor::{contract, Copy, Side, TensorElement};

use Side::{Left, Right};

/// Axiom identifiers, in report order.
pub mod axiom {
    pub const R_INVERTIBLE: &str = "r-invertible";
    pub const D_AUTOMORPHISM: &str = "D-automorphism";
    pub const U_AUTOMORPHISM: &str = "U-automorphism";
    pub const DU_COMMUTE: &str = "DU-commute";
    pub const INVERSE_LEFT: &str = "Eq2.4-left";
    pub const INVERSE_RIGHT: &str = "Eq2.4-right";
    pub const D_FIXES_R: &str = "Eq2.5-D";
    pub const U_FIXES_R: &str = "Eq2.5-U";
    pub const YBE: &str = "Eq2.6";
}

#[derive(Clone, Debug)]
pub struct OqaCandidate {
    pub algebra: AlgebraRef,
    pub r: TensorElement,
    pub d: AlgebraMap,
    pub u: AlgebraMap,
    r_inv: Option<TensorElement>,
    certified: bool,
}

impl OqaCandidate {
    pub fn new(algebra: AlgebraRef, r: TensorElement, d: AlgebraMap, u: AlgebraMap) -> Result<Self> {
        let legs_ok = r.num_legs() == 2 && r.legs().iter().all(|l| same_algebra(l, &algebra));
        if !legs_ok {
            return Err(Error::LegMismatch(format!("r must lie in {0}⊗{0}", algebra.name())));
        }
        for (name, m) in [("D", &d), ("U", &u)] {
            if !same_algebra(m.source(), &algebra) || !same_algebra(m.target(), &algebra) {
                return Err(Error::AlgebraMismatch(format!(
                    "{name} is not an endomorphism of {}",
                    algebra.name()
                )));
            }
        }
        Ok(OqaCandidate {
            algebra,
            r,
            d,
            u,
            r_inv: None,
            certified: false,
        })
    }

    /// Supplies a candidate inverse of `r`; it is verified by the checker.
    pub fn with_r_inverse(mut self, r_inv: TensorElement) -> Self {
        self.r_inv = Some(r_inv);
        self
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Runs [`check_oqa`] and records the outcome.
    pub fn certify(&mut self) -> CheckReport {
        let report = check_oqa(self);
        self.certified = report.passed();
        if self.certified && self.r_inv.is_none() {
            self.r_inv = self.r.invert().ok();
        }
        report
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::Uncertified(format!("OQA on {}", self.algebra.name())))
        }
    }

    /// Verified inverse of `r`, computed on first use.
    pub fn r_inverse(&self) -> Result<TensorElement> {
        if let Some(inv) = &self.r_inv {
            if inv.is_inverse_of(&self.r)? {
                return Ok(inv.clone());
            }
        }
        self.r.invert()
    }
}

pub(crate) fn automorphism_ok(m: &AlgebraMap) -> std::result::Result<(), Error> {
    AlgebraMap::algebra_map(m.source(), m.target(), m.images().to_vec(), true).map(|_| ())
}

/// `D(R_l) r_i ⊗ U(r^i) R^l` and `r_i D(R_l) ⊗ R^l U(r^i)`, both of which
/// must equal `1 ⊗ 1`. Shared with the nonuple's mixed version, where `r`
/// and `R` live in `H ⊗ H'` and `U` acts on the second leg.
pub(crate) fn inverse_twist(
    r: &TensorElement,
    r_inv: &TensorElement,
    d_first: &AlgebraMap,
    u_second: &AlgebraMap,
) -> Result<(TensorElement, TensorElement)> {
    let dr = r_inv.apply_map_on(0, d_first)?;
    let ur = r.apply_map_on(1, u_second)?;
    let legs = r.legs().to_vec();
    let left = contract(
        &legs,
        &[Copy::right(&dr, &[0, 1]), Copy::new(&ur, &[(0, Right), (1, Left)])],
    )?;
    let right = contract(
        &legs,
        &[Copy::right(&dr, &[0, 1]), Copy::new(&ur, &[(0, Left), (1, Right)])],
    )?;
    Ok((left, right))
}

/// Both sides of `r₁₂ r₁₃ r₂₃ = r₂₃ r₁₃ r₁₂`.
pub fn ybe_sides(r: &TensorElement) -> Result<(TensorElement, TensorElement)> {
    let h = r.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h];
    let left = contract(
        &legs,
        &[
            Copy::right(r, &[0, 1]),
            Copy::right(r, &[0, 2]),
            Copy::right(r, &[1, 2]),
        ],
    )?;
    let right = contract(
        &legs,
        &[
            Copy::right(r, &[1, 2]),
            Copy::right(r, &[0, 2]),
            Copy::right(r, &[0, 1]),
        ],
    )?;
    Ok((left, right))
}

/// Both sides of `r_j ⊗ r_i ⊗ r^j r^i = R_l r_j r_i ⊗ R^l r_k r^i ⊗ r^k r^j`.
pub fn ybe_alt_sides(r: &TensorElement, r_inv: &TensorElement) -> Result<(TensorElement, TensorElement)> {
    let h = r.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h];
    let left = contract(&legs, &[Copy::right(r, &[0, 2]), Copy::right(r, &[1, 2])])?;
    let right = contract(
        &legs,
        &[
            Copy::right(r_inv, &[0, 1]),
            Copy::right(r, &[0, 2]),
            Copy::new(r, &[(1, Right), (2, Left)]),
            Copy::right(r, &[0, 1]),
        ],
    )?;
    Ok((left, right))
}

/// Checks every OQA axiom; never stops at the first failure.
pub fn check_oqa(c: &OqaCandidate) -> CheckReport {
    let mut rep = CheckReport::new(format!("OQA on {}", c.algebra.name()));
    let r_inv = c.r_inverse();
    match &r_inv {
        Ok(_) => rep.pass(axiom::R_INVERTIBLE),
        Err(e) => rep.fail(axiom::R_INVERTIBLE, error_witness(e)),
    }
    for (id, m) in [(axiom::D_AUTOMORPHISM, &c.d), (axiom::U_AUTOMORPHISM, &c.u)] {
        match automorphism_ok(m) {
            Ok(()) => rep.pass(id),
            Err(e) => rep.fail(id, error_witness(&e)),
        }
    }
    match maps_commute(&c.d, &c.u) {
        Ok(ok) => rep.flag(axiom::DU_COMMUTE, ok, || "D∘U ≠ U∘D".into()),
        Err(e) => rep.fail(axiom::DU_COMMUTE, error_witness(&e)),
    }
    match &r_inv {
        Ok(ri) => {
            let sides = inverse_twist(&c.r, ri, &c.d, &c.u);
            let one = TensorElement::one(c.r.legs().to_vec());
            rep.equation(axiom::INVERSE_LEFT, sides.clone().map(|(l, _)| (l, one.clone())));
            rep.equation(axiom::INVERSE_RIGHT, sides.map(|(_, r)| (r, one)));
        }
        Err(_) => {
            let w = crate::report::Witness::Message("needs an inverse of r".into());
            rep.fail(axiom::INVERSE_LEFT, w.clone());
            rep.fail(axiom::INVERSE_RIGHT, w);
        }
    }
    rep.equation(
        axiom::D_FIXES_R,
        c.r.apply_maps(&[&c.d, &c.d]).map(|x| (x, c.r.clone())),
    );
    rep.equation(
        axiom::U_FIXES_R,
        c.r.apply_maps(&[&c.u, &c.u]).map(|x| (x, c.r.clone())),
    );
    rep.equation(axiom::YBE, ybe_sides(&c.r));
    rep
}

/// Verdict of the inverse-based form of the Yang–Baxter equation.
pub fn check_ybe_alt(c: &OqaCandidate) -> Result<bool> {
    let r_inv = c.r_inverse()?;
    let (l, r) = ybe_alt_sides(&c.r, &r_inv)?;
    Ok(l == r)
}

/// `(H, r, U, D)`.
pub fn swap_orientation(c: &OqaCandidate) -> Result<OqaCandidate> {
    c.require_certified()?;
    Ok(OqaCandidate {
        algebra: c.algebra.clone(),
        r: c.r.clone(),
        d: c.u.clone(),
        u: c.d.clone(),
        r_inv: c.r_inv.clone(),
        certified: false,
    })
}

/// Interleaves `x ∈ A⊗A` and `y ∈ B⊗B` into `(A⊗B)⊗(A⊗B)`.
pub(crate) fn interleave(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    x.outer(y).permute(&[0, 2, 1, 3])?.group(&[2, 2])
}

/// OQA on `H ⊗ H'` with `r'' = (id ⊗ τ ⊗ id)(r ⊗ r')` and maps `D⊗D'`, `U⊗U'`.
pub fn tensor_oqa(c1: &OqaCandidate, c2: &OqaCandidate) -> Result<OqaCandidate> {
    c1.require_certified()?;
    c2.require_certified()?;
    let d = tensor_map(&c1.d, &c2.d);
    let u = tensor_map(&c1.u, &c2.u);
    let algebra = d.source().clone();
    let legs = vec![algebra.clone(), algebra.clone()];
    let r = interleave(&c1.r, &c2.r)?.relabel_legs(legs.clone())?;
    let r_inv = interleave(&c1.r_inverse()?, &c2.r_inverse()?)?.relabel_legs(legs)?;
    Ok(OqaCandidate::new(algebra, r, d, u)?.with_r_inverse(r_inv))
}

/// The four-leg element `R^l r_i ⊗ R^m r_j ⊗ r^i r^j ⊗ R_l R_m` over `H`.
pub fn radford_alpha(r: &TensorElement, r_inv: &TensorElement) -> Result<TensorElement> {
    let h = r.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h.clone(), h];
    contract(
        &legs,
        &[
            Copy::right(r_inv, &[3, 0]),
            Copy::right(r_inv, &[3, 1]),
            Copy::right(r, &[0, 2]),
            Copy::right(r, &[1, 2]),
        ],
    )
}

/// OQA on `H ⊗ H` built from the Radford-type formula, with `D⊗D`, `U⊗U`.
pub fn radford_double(c: &OqaCandidate) -> Result<OqaCandidate> {
    c.require_certified()?;
    let r_inv = c.r_inverse()?;
    let alpha = radford_alpha(&c.r, &r_inv)?.group(&[2, 2])?;
    let d = tensor_map(&c.d, &c.d);
    let algebra = d.source().clone();
    let u = tensor_map(&c.u, &c.u);
    let alpha = alpha.relabel_legs(vec![algebra.clone(), algebra.clone()])?;
    OqaCandidate::new(algebra, alpha, d, u)
}
