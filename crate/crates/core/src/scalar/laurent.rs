//! Sparse multivariate Laurent polynomials with rational coefficients.
//!
//! A polynomial carries its own sorted list of parameter names; binary
//! operations first extend both operands to the union of their parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use super::{Assignment, Rational};
use crate::error::{Error, Result};

/// Sorted, duplicate-free parameter names.
pub type Vars = Arc<[String]>;

fn no_vars() -> Vars {
    static EMPTY: OnceLock<Vars> = OnceLock::new();
    EMPTY.get_or_init(|| Arc::from(Vec::<String>::new())).clone()
}

fn checked_sum(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("Laurent exponent overflow")
}

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            vars: no_vars(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPoly { vars: no_vars(), terms }
    }

    /// The monomial `name^1`.
    pub fn param(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        LaurentPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    /// Builds a polynomial from raw terms. `vars` must be sorted and unique and
    /// every exponent vector must have one entry per variable.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<i32>, Rational)>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector arity");
            accumulate(&mut out, e, c);
        }
        LaurentPoly { vars, terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Returns the single term if this is a monomial `c * x^e`.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Largest term in lexicographic exponent order.
    pub fn leading(&self) -> Option<(&Vec<i32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the polynomial over a superset of its parameters.
    pub fn extend_to(&self, vars: &Vars) -> LaurentPoly {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return LaurentPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.binary_search(v)
                    .expect("target parameter list must contain every source parameter")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (k, &p) in positions.iter().enumerate() {
                    ne[p] = e[k];
                }
                (ne, c.clone())
            })
            .collect();
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Extends both operands to a common parameter list.
    pub fn unify(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..] {
            return (self.clone(), other.with_vars(self.vars.clone()));
        }
        let vars = merge_vars(&self.vars, &other.vars);
        (self.extend_to(&vars), other.extend_to(&vars))
    }

    fn with_vars(&self, vars: Vars) -> LaurentPoly {
        LaurentPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Drops parameters that occur with exponent zero in every term.
    pub fn trimmed(&self) -> LaurentPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&k| self.terms.keys().any(|e| e[k] != 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vars = used.iter().map(|&k| self.vars[k].clone()).collect::<Vec<_>>().into();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (used.iter().map(|&k| e[k]).collect(), c.clone()))
            .collect();
        LaurentPoly { vars, terms }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift` (same parameter list).
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, shift), c.clone()))
                .collect(),
        }
    }

    /// Per-variable minimum exponent; `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Vec<i32>> {
        self.fold_exponents(i32::min)
    }

    pub fn max_exponents(&self) -> Option<Vec<i32>> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(&a, &b)| f(a, b)).collect()))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor` if it exists in the Laurent ring.
    ///
    /// Runs the division algorithm in lexicographic order. Every quotient term
    /// must lie in the per-variable exponent box forced by degree additivity,
    /// which bounds the loop.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (num, den) = self.unify(divisor);
        let lo: Vec<i32> = sub_exps(&num.min_exponents()?, &den.min_exponents()?);
        let hi: Vec<i32> = sub_exps(&num.max_exponents()?, &den.max_exponents()?);
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return None;
        }
        let (lead_e, lead_c) = den.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = num.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = sub_exps(&e, &lead_e);
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(q, (l, h))| q < l || q > h) {
                return None;
            }
            let qc = c / &lead_c;
            for (de, dc) in &den.terms {
                accumulate(&mut rem, add_exps(de, &qe), -(dc * &qc));
            }
            quot.insert(qe, qc);
        }
        Some(LaurentPoly {
            vars: num.vars.clone(),
            terms: quot,
        })
    }

    /// Evaluates at a full assignment of every parameter.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational> {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| assignment.get(v).ok_or_else(|| Error::MissingParameter(v.clone())))
            .collect::<Result<_>>()?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (k, &p) in e.iter().enumerate() {
                if p != 0 {
                    if values[k].is_zero() && p < 0 {
                        return Err(Error::VanishingDenominator);
                    }
                    term *= num_traits::pow::Pow::pow(values[k], p);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes values for the assigned parameters and keeps the rest symbolic.
    pub fn substitute(&self, assignment: &Assignment) -> Result<LaurentPoly> {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&k| !assignment.contains_key(&self.vars[k]))
            .collect();
        if keep.len() == self.vars.len() {
            return Ok(self.clone());
        }
        let vars: Vars = keep.iter().map(|&k| self.vars[k].clone()).collect::<Vec<_>>().into();
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for (k, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if let Some(v) = assignment.get(&self.vars[k]) {
                    if v.is_zero() && p < 0 {
                        return Err(Error::VanishingDenominator);
                    }
                    coeff *= num_traits::pow::Pow::pow(v, p);
                }
            }
            accumulate(&mut out, keep.iter().map(|&k| e[k]).collect(), coeff);
        }
        Ok(LaurentPoly { vars, terms: out })
    }

    /// Monic gcd when both polynomials live in the same single parameter.
    /// Monomial factors are units here, so the result has lowest exponent 0.
    pub fn univariate_gcd(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let (a, b) = (self.trimmed(), other.trimmed());
        let (a, b) = a.unify(&b);
        if a.vars.len() != 1 {
            return None;
        }
        let da = to_dense(&a)?;
        let db = to_dense(&b)?;
        let g = dense_gcd(da, db);
        let vars = a.vars.clone();
        Some(LaurentPoly::from_terms(
            vars,
            g.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (vec![k as i32], c)),
        ))
    }
}

fn to_dense(p: &LaurentPoly) -> Option<Vec<Rational>> {
    let lo = p.min_exponents()?[0];
    let hi = p.max_exponents()?[0];
    let mut v = vec![Rational::zero(); (hi - lo) as usize + 1];
    for (e, c) in &p.terms {
        v[(e[0] - lo) as usize] = c.clone();
    }
    Some(v)
}

fn trim_dense(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim_dense(&mut a);
    trim_dense(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = a.last().unwrap() / &lb;
            for (k, c) in b.iter().enumerate() {
                let t = &a[k + shift] - c * &q;
                a[k + shift] = t;
            }
            a.pop();
            trim_dense(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &l;
        }
    }
    // strip the monomial factor
    let first = a.iter().position(|c| !c.is_zero()).unwrap_or(0);
    a.drain(..first);
    a
}

fn accumulate(map: &mut BTreeMap<Vec<i32>, Rational>, e: Vec<i32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn add_exps(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(&x, &y)| checked_sum(x, y)).collect()
}

fn sub_exps(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_sub(y).expect("Laurent exponent overflow"))
        .collect()
}

pub(crate) fn merge_vars(a: &Vars, b: &Vars) -> Vars {
    let mut all: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    all.sort();
    all.dedup();
    all.into()
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars[..] == other.vars[..] {
            return self.terms == other.terms;
        }
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (mut a, b) = self.unify(rhs);
        for (e, c) in b.terms {
            accumulate(&mut a.terms, e, c);
        }
        a
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let (a, b) = self.unify(rhs);
        let mut out = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                accumulate(&mut out, add_exps(ea, eb), ca * cb);
            }
        }
        LaurentPoly {
            vars: a.vars,
            terms: out,
        }
    }
}

pub(crate) fn fmt_rational_abs(c: &Rational) -> String {
    let c = c.abs();
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending lexicographic order, explicit `^` and `*`, e.g. `a^2 - 2 + a^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(k, &p)| {
                    if p == 1 {
                        self.vars[k].clone()
                    } else {
                        format!("{}^{}", self.vars[k], p)
                    }
                })
                .collect();
            let abs_one = c.abs().is_one();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational_abs(c))?;
            } else if abs_one {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational_abs(c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn a() -> LaurentPoly {
        LaurentPoly::param("a")
    }

    fn a_inv() -> LaurentPoly {
        LaurentPoly::from_terms(Arc::from(vec!["a".to_string()]), [(vec![-1], q(1))])
    }

    #[test]
    fn square_of_a_minus_inverse() {
        let x = &a() - &a_inv();
        let sq = &x * &x;
        assert_eq!(sq.to_string(), "a^2 - 2 + a^-2");
    }

    #[test]
    fn exact_division_recovers_factor() {
        let x = &a() - &a_inv();
        let prod = &(&x * &x) * &(&a() + &LaurentPoly::one());
        assert_eq!(prod.div_exact(&x).unwrap(), &x * &(&a() + &LaurentPoly::one()));
        let a_plus_2 = &a() + &LaurentPoly::constant(q(2));
        assert!(prod.div_exact(&a_plus_2).is_none());
    }

    #[test]
    fn exact_division_multivariate() {
        let nu = LaurentPoly::param("nu");
        let f = &(&a() + &nu) * &(&a() - &(&nu * &nu));
        assert_eq!(f.div_exact(&(&a() + &nu)).unwrap(), &a() - &(&nu * &nu));
    }

    #[test]
    fn gcd_strips_monomials() {
        let x = &a() - &a_inv();
        let g = (&x * &a())
            .univariate_gcd(&(&(&a() - &LaurentPoly::one()) * &a()))
            .unwrap();
        assert_eq!(g.to_string(), "a - 1");
    }

    #[test]
    fn mixed_parameter_sets_unify() {
        let nu = LaurentPoly::param("nu");
        let s = &a() + &nu;
        assert_eq!(s.vars().len(), 2);
        assert_eq!((&s - &nu).trimmed(), a());
    }

    #[test]
    fn substitute_partially() {
        let nu = LaurentPoly::param("nu");
        let s = &(&a() * &nu) + &a_inv();
        let mut asg = Assignment::new();
        asg.insert("a".into(), q(2));
        let t = s.substitute(&asg).unwrap();
        assert_eq!(t.to_string(), "2*nu + 1/2");
    }
}
