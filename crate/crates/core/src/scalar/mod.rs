//! Exact scalars: fractions of Laurent polynomials over the rationals in
//! named parameters.
//!
//! Canonicalization moves every monomial factor of the denominator into the
//! numerator, makes the denominator's leading coefficient 1, and cancels the
//! denominator whenever it divides the numerator exactly (or, for a single
//! parameter, by their gcd). Equality is decided by cross-multiplication, so
//! correctness never depends on how far the reduction got.

mod laurent;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use laurent::{LaurentPoly, Vars};
pub use parse::parse_scalar;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Values for named parameters.
pub type Assignment = BTreeMap<String, Rational>;

#[derive(Clone, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(q))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n.into(), d.into()))
    }

    pub fn param(name: &str) -> Self {
        Self::from_poly(LaurentPoly::param(name))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar {
            num: p.trimmed(),
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, canonicalized. Fails if `den` is zero.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Parameters occurring in numerator or denominator.
    pub fn params(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().iter().chain(self.den.vars().iter()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar {
                num: num.trimmed(),
                den,
            };
        }
        let (mut num, mut den) = num.unify(&den);
        // monomials are units: push den's monomial content into num
        let low: Vec<i32> = den.min_exponents().expect("nonzero denominator");
        if low.iter().any(|&k| k != 0) {
            let neg: Vec<i32> = low.iter().map(|&k| -k).collect();
            num = num.shift(&neg);
            den = den.shift(&neg);
        }
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            return Scalar {
                num: num.trimmed(),
                den: LaurentPoly::one(),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return Scalar {
                num: q.trimmed(),
                den: LaurentPoly::one(),
            };
        }
        if let Some(g) = num.univariate_gcd(&den) {
            if !g.is_one() {
                if let (Some(n2), Some(d2)) = (num.div_exact(&g), den.div_exact(&g)) {
                    return Scalar::canonical(n2, d2);
                }
            }
        }
        Scalar {
            num: num.trimmed(),
            den: den.trimmed(),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_one() {
            return Ok(self.clone());
        }
        Ok(Scalar::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero scalar.
    pub fn pow(&self, n: i32) -> Result<Scalar> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let k = n.unsigned_abs();
        Ok(Scalar::canonical(base.num.pow(k), base.den.pow(k)))
    }

    /// Exact value at a full assignment.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(self.num.eval(assignment)? / d)
    }

    /// Substitutes the assigned parameters, leaving the others symbolic.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Scalar> {
        let d = self.den.substitute(assignment)?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(Scalar::canonical(self.num.substitute(assignment)?, d))
    }

    /// Replaces parameter `name` by an arbitrary scalar.
    pub fn substitute_scalar(&self, name: &str, value: &Scalar) -> Result<Scalar> {
        let num = subst_poly(&self.num, name, value)?;
        let den = subst_poly(&self.den, name, value)?;
        num.checked_div(&den)
    }
}

fn subst_poly(p: &LaurentPoly, name: &str, value: &Scalar) -> Result<Scalar> {
    let Some(k) = p.vars().iter().position(|v| v == name) else {
        return Ok(Scalar::from_poly(p.clone()));
    };
    let vars = p.vars().clone();
    let mut total = Scalar::zero();
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        rest[k] = 0;
        let mono = Scalar::from_poly(LaurentPoly::from_terms(vars.clone(), [(rest, c.clone())]));
        total += &mono * &value.pow(e[k])?;
    }
    Ok(total)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::canonical(num, self.den.clone());
        }
        Scalar::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Parses a rational literal such as `3`, `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = parse_scalar(text, &[])?;
    s.as_rational()
        .ok_or_else(|| Error::Input(format!("`{text}` is not a rational constant")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        parse_scalar(text, &["a", "nu"]).unwrap()
    }

    #[test]
    fn equal_rationals() {
        assert_eq!(s("1/1"), s("2/2"));
    }

    #[test]
    fn distinct_monomials() {
        assert_ne!(s("a"), s("a^-1"));
    }

    #[test]
    fn expanded_product() {
        assert_eq!(s("(a - a^-1)*a"), s("a^2 - 1"));
    }

    #[test]
    fn eval_x_at_two() {
        let mut asg = Assignment::new();
        asg.insert("a".into(), Rational::from_integer(2.into()));
        assert_eq!(s("a - a^-1").eval(&asg).unwrap(), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn eval_a_squared_at_one() {
        let mut asg = Assignment::new();
        asg.insert("a".into(), Rational::one());
        assert_eq!(s("a^2").eval(&asg).unwrap(), Rational::one());
    }

    #[test]
    fn eval_quotient() {
        // (a^2 - 1)/(a - a^-1) = a, evaluated at a = 3
        let q = s("a^2 - 1").checked_div(&s("a - a^-1")).unwrap();
        assert!(q.is_laurent());
        let mut asg = Assignment::new();
        asg.insert("a".into(), Rational::from_integer(3.into()));
        assert_eq!(q.eval(&asg).unwrap(), Rational::from_integer(3.into()));
    }

    #[test]
    fn irreducible_fraction_stays_fraction() {
        let q = s("a + 2").checked_div(&s("a - 1")).unwrap();
        assert!(!q.is_laurent());
        assert_eq!(q.to_string(), "(a + 2)/(a - 1)");
        assert_eq!(&q * &s("a - 1"), s("a + 2"));
    }

    #[test]
    fn univariate_gcd_cancels() {
        let q = s("a^2 - 1").checked_div(&s("a^2 + a")).unwrap();
        assert_eq!(q.numerator().to_string(), "1 - a^-1");
        assert!(q.is_laurent());
        let r = s("a^2 - 1").checked_div(&s("a^2 + 2*a + 1")).unwrap();
        assert_eq!(r.to_string(), "(a - 1)/(a + 1)");
    }

    #[test]
    fn missing_parameter_and_vanishing_denominator() {
        let asg = Assignment::new();
        assert_eq!(s("a").eval(&asg), Err(Error::MissingParameter("a".into())));
        let q = s("1").checked_div(&s("a - 1")).unwrap();
        let mut asg = Assignment::new();
        asg.insert("a".into(), Rational::one());
        assert_eq!(q.eval(&asg), Err(Error::VanishingDenominator));
    }

    #[test]
    fn substitute_scalar_for_x() {
        let sx = parse_scalar("x^2*a", &["a", "x"]).unwrap();
        let out = sx.substitute_scalar("x", &s("a - a^-1")).unwrap();
        assert_eq!(out, s("a^3 - 2*a + a^-1"));
    }
}
