//! Invariants of structure-constant algebras, algebra maps and tensors.

use oqa_core::algebra::{matrix_algebra, opposite, tensor_algebra, tensor_map, AlgebraMap, AlgebraRef, Element};
use oqa_core::catalog::objects::{conjugation_f, kz2, sweedler4, sweedler4_hopf, sweedler_u};
use oqa_core::tensor::TensorElement;
use oqa_core::Scalar;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -1i32..=1).prop_map(|(c, e)| &Scalar::from_int(c) * &Scalar::param("a").pow(e).unwrap())
}

fn element(alg: AlgebraRef) -> impl Strategy<Value = Element> {
    let dim = alg.dim();
    prop::collection::vec(coefficient(), dim)
        .prop_map(move |cs| Element::new(&alg, cs.into_iter().enumerate()).unwrap())
}

fn tensor(legs: Vec<AlgebraRef>) -> impl Strategy<Value = TensorElement> {
    let dims: Vec<usize> = legs.iter().map(|l| l.dim()).collect();
    let index = dims.iter().map(|&d| (0..d).boxed()).collect::<Vec<_>>();
    prop::collection::vec((index, coefficient()), 0..6)
        .prop_map(move |terms| TensorElement::new(legs.clone(), terms).unwrap())
}

fn algebras() -> Vec<AlgebraRef> {
    vec![
        matrix_algebra(2),
        matrix_algebra(3),
        sweedler4(),
        kz2(),
        tensor_algebra(&matrix_algebra(2), &kz2()),
    ]
}

fn any_algebra() -> impl Strategy<Value = AlgebraRef> {
    prop::sample::select(algebras())
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    any_algebra().prop_flat_map(|a| (element(a.clone()), element(a.clone()), element(a)))
}

proptest! {
    #[test]
    fn multiplication_is_associative_and_unital((x, y, z) in triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let one = Element::one(x.algebra());
        prop_assert_eq!(one.mul(&x).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&one).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn opposite_reverses_products((x, y, _) in triple()) {
        let op = opposite(x.algebra());
        let xo = Element::new(&op, x.coeffs().clone()).unwrap();
        let yo = Element::new(&op, y.coeffs().clone()).unwrap();
        let (lhs, rhs) = (xo.mul(&yo).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn conjugation_is_multiplicative(x in element(matrix_algebra(3)), y in element(matrix_algebra(3))) {
        let f = conjugation_f(3);
        prop_assert_eq!(f.apply(&x.mul(&y).unwrap()).unwrap(), f.apply(&x).unwrap().mul(&f.apply(&y).unwrap()).unwrap());
        prop_assert_eq!(f.inverse().unwrap().apply(&f.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn sign_automorphism_is_multiplicative(x in element(sweedler4()), y in element(sweedler4())) {
        let u = sweedler_u();
        prop_assert_eq!(u.apply(&x.mul(&y).unwrap()).unwrap(), u.apply(&x).unwrap().mul(&u.apply(&y).unwrap()).unwrap());
    }

    #[test]
    fn antipode_is_antimultiplicative(x in element(sweedler4()), y in element(sweedler4())) {
        let s = sweedler4_hopf().antipode;
        prop_assert_eq!(s.apply(&x.mul(&y).unwrap()).unwrap(), s.apply(&y).unwrap().mul(&s.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(sweedler4()), y in element(sweedler4())) {
        let h = sweedler4_hopf();
        let lhs = h.coproduct(&x.mul(&y).unwrap().to_sparse());
        let rhs = h.coproduct(&x.to_sparse()).mul(&h.coproduct(&y.to_sparse())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_multiplication_is_associative(
        s in tensor(vec![matrix_algebra(2), sweedler4()]),
        t in tensor(vec![matrix_algebra(2), sweedler4()]),
        u in tensor(vec![matrix_algebra(2), sweedler4()]),
    ) {
        prop_assert_eq!(s.mul(&t).unwrap().mul(&u).unwrap(), s.mul(&t.mul(&u).unwrap()).unwrap());
        let one = TensorElement::one(s.legs().to_vec());
        prop_assert_eq!(one.mul(&s).unwrap(), s.clone());
    }

    #[test]
    fn grouping_matches_the_tensor_algebra(
        s in tensor(vec![matrix_algebra(2), kz2()]),
        t in tensor(vec![matrix_algebra(2), kz2()]),
    ) {
        let grouped = |x: &TensorElement| x.group(&[2]).unwrap();
        prop_assert_eq!(grouped(&s.mul(&t).unwrap()), grouped(&s).mul(&grouped(&t)).unwrap());
        prop_assert_eq!(grouped(&s).ungroup(), s);
    }

    #[test]
    fn leg_permutations_compose(t in tensor(vec![matrix_algebra(2), kz2(), sweedler4()])) {
        let once = t.permute(&[2, 0, 1]).unwrap();
        prop_assert_eq!(once.permute(&[1, 2, 0]).unwrap(), t.clone());
        let two = t.permute(&[0, 2, 1]).unwrap();
        prop_assert_eq!(two.permute(&[0, 2, 1]).unwrap(), t);
    }

    #[test]
    fn algebra_maps_act_multiplicatively_on_tensors(
        s in tensor(vec![matrix_algebra(3), sweedler4()]),
        t in tensor(vec![matrix_algebra(3), sweedler4()]),
    ) {
        let (f, u) = (conjugation_f(3), sweedler_u());
        let apply = |x: &TensorElement| x.apply_maps(&[&f, &u]).unwrap();
        prop_assert_eq!(apply(&s.mul(&t).unwrap()), apply(&s).mul(&apply(&t)).unwrap());
        let fu = tensor_map(&f, &u);
        prop_assert_eq!(apply(&s).group(&[2]).unwrap(), s.group(&[2]).unwrap().apply_maps(&[&fu]).unwrap());
    }

    #[test]
    fn embedding_commutes_with_multiplication(
        s in tensor(vec![matrix_algebra(2), matrix_algebra(2)]),
        t in tensor(vec![matrix_algebra(2), matrix_algebra(2)]),
    ) {
        let legs = vec![matrix_algebra(2); 3];
        let e = |x: &TensorElement| x.embed(&legs, &[0, 2]).unwrap();
        prop_assert_eq!(e(&s.mul(&t).unwrap()), e(&s).mul(&e(&t)).unwrap());
    }

    #[test]
    fn inverses_are_two_sided_and_reverse_products(
        s in tensor(vec![sweedler4(), kz2()]),
        t in tensor(vec![sweedler4(), kz2()]),
    ) {
        let one = TensorElement::one(s.legs().to_vec());
        // Unit plus a small perturbation is usually invertible.
        let (x, y) = (one.add(&s).unwrap(), one.add(&t).unwrap());
        let (Ok(xi), Ok(yi)) = (x.invert(), y.invert()) else { return Ok(()); };
        prop_assert!(xi.is_inverse_of(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().invert().unwrap(), yi.mul(&xi).unwrap());
    }
}

#[test]
fn identity_map_is_identity() {
    for a in algebras() {
        let id = AlgebraMap::identity(&a);
        assert!(id.is_identity());
        assert!(id.compose(&id).unwrap().same_images(&id));
    }
}

#[test]
fn nilpotent_plus_unit_inverts_with_finite_series() {
    let a = sweedler4();
    let x = a.index_of("x").unwrap();
    let t = TensorElement::new(
        vec![a.clone(), a.clone()],
        [(vec![0, 0], Scalar::one()), (vec![x, x], Scalar::param("a"))],
    )
    .unwrap();
    let inv = TensorElement::new(
        vec![a.clone(), a],
        [(vec![0, 0], Scalar::one()), (vec![x, x], -Scalar::param("a"))],
    )
    .unwrap();
    assert_eq!(t.invert().unwrap(), inv);
}
