//! Ring and evaluation properties of exact scalars.

use oqa_core::{parse_scalar, Assignment, Rational, Scalar};
use proptest::prelude::*;

fn monomial(c: i64, ea: i32, en: i32) -> Scalar {
    let a = Scalar::param("a").pow(ea).unwrap();
    let nu = Scalar::param("nu").pow(en).unwrap();
    &(&Scalar::from_int(c) * &a) * &nu
}

/// Laurent polynomials in `a`, `nu` with small coefficients and exponents.
fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-5i64..=5, -2i32..=2, -2i32..=2), 0..5)
        .prop_map(|terms| terms.into_iter().map(|(c, ea, en)| monomial(c, ea, en)).sum())
}

/// Quotients of Laurent polynomials with a nonzero denominator.
fn fraction() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent().prop_filter("nonzero", |d| !d.is_zero())).prop_map(|(n, d)| n.checked_div(&d).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn assignment() -> impl Strategy<Value = Assignment> {
    (rational(), rational())
        .prop_filter("nonzero parameters", |(a, n)| {
            *a != Rational::from_integer(0.into()) && *n != Rational::from_integer(0.into())
        })
        .prop_map(|(a, n)| Assignment::from([("a".to_string(), a), ("nu".to_string(), n)]))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(x in fraction(), y in fraction(), z in fraction()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &Scalar::zero(), x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(x in fraction(), y in fraction(), z in fraction()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn nonzero_scalars_are_invertible(x in fraction()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.recip().unwrap()).is_one());
        prop_assert_eq!(x.pow(-2).unwrap(), x.recip().unwrap().pow(2).unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(x in fraction(), y in fraction(), asg in assignment()) {
        let (Ok(ex), Ok(ey)) = (x.eval(&asg), y.eval(&asg)) else { return Ok(()); };
        prop_assert_eq!((&x + &y).eval(&asg).unwrap(), &ex + &ey);
        prop_assert_eq!((&x * &y).eval(&asg).unwrap(), &ex * &ey);
        prop_assert_eq!(x.substitute(&asg).unwrap().as_rational(), Some(ex));
    }

    #[test]
    fn partial_substitution_then_evaluation_agrees(x in laurent(), asg in assignment()) {
        let only_a = Assignment::from([("a".to_string(), asg["a"].clone())]);
        let partial = x.substitute(&only_a).unwrap();
        prop_assert_eq!(partial.eval(&asg).unwrap(), x.eval(&asg).unwrap());
    }

    #[test]
    fn laurent_scalars_print_and_reparse(x in laurent()) {
        let text = x.to_string();
        prop_assert_eq!(parse_scalar(&text, &["a", "nu"]).unwrap(), x);
    }
}

#[test]
fn parses_the_printed_entry_shapes() {
    let x = parse_scalar("a - a^-1", &["a"]).unwrap();
    let a = Scalar::param("a");
    assert_eq!(x, &a - &a.recip().unwrap());
    assert_eq!(
        parse_scalar("-x^2*a", &["x", "a"]).unwrap().params(),
        vec!["a".to_string(), "x".to_string()]
    );
    assert!(parse_scalar("1/(a+1)", &["a"]).is_err());
    assert!(parse_scalar("b", &["a"]).is_err());
}
