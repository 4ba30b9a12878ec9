//! Constructors for the built-in example objects.

use std::sync::OnceLock;

use crate::algebra::{matrix_algebra, Algebra, AlgebraMap, AlgebraRef};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::nonuple::Nonuple;
use crate::oqa::OqaCandidate;
use crate::scalar::{parse_scalar, Scalar};
use crate::tensor::TensorElement;

fn s(text: &str) -> Scalar {
    parse_scalar(text, &["a", "nu"]).expect("built-in scalar literal")
}

/// A tensor from `("label label ...", coefficient)` pairs.
pub fn tensor_from_labels(legs: &[AlgebraRef], terms: &[(&str, Scalar)]) -> Result<TensorElement> {
    let mut out = Vec::with_capacity(terms.len());
    for (labels, c) in terms {
        let parts: Vec<&str> = labels.split_whitespace().collect();
        if parts.len() != legs.len() {
            return Err(Error::ShapeMismatch(format!(
                "'{labels}' does not name {} legs",
                legs.len()
            )));
        }
        let idx = parts
            .iter()
            .zip(legs)
            .map(|(l, a)| {
                a.index_of(l)
                    .ok_or_else(|| Error::Input(format!("unknown basis label '{l}' in {}", a.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((idx, c.clone()));
    }
    TensorElement::new(legs.to_vec(), out)
}

/// `(left, right, product)` with the product as `(label, integer coefficient)` pairs.
type Product<'a> = (&'a str, &'a str, &'a [(&'a str, i64)]);

fn table(name: &str, basis: &[&str], products: &[Product]) -> AlgebraRef {
    let idx = |l: &str| basis.iter().position(|b| *b == l).expect("label in basis");
    let prods = products.iter().map(|(l, r, out)| {
        let v = out.iter().map(|(k, c)| (idx(k), Scalar::from_int(*c))).collect();
        ((idx(l), idx(r)), v)
    });
    Algebra::new(
        name,
        basis.iter().map(|b| b.to_string()).collect(),
        prods,
        vec![(0, Scalar::one())],
    )
    .expect("built-in algebra is valid")
}

/// `K⟨t⟩` with `t² = 1`.
pub fn kz2() -> AlgebraRef {
    static CELL: OnceLock<AlgebraRef> = OnceLock::new();
    CELL.get_or_init(|| {
        table(
            "KZ2",
            &["1", "t"],
            &[
                ("1", "1", &[("1", 1)]),
                ("1", "t", &[("t", 1)]),
                ("t", "1", &[("t", 1)]),
                ("t", "t", &[("1", 1)]),
            ],
        )
    })
    .clone()
}

/// `K⟨g, x⟩` with `g² = 1`, `x² = 0`, `xg = -gx`, basis `1, g, x, gx`.
pub fn sweedler4() -> AlgebraRef {
    static CELL: OnceLock<AlgebraRef> = OnceLock::new();
    CELL.get_or_init(build_sweedler4).clone()
}

fn build_sweedler4() -> AlgebraRef {
    let mut prods: Vec<Product> = Vec::new();
    for b in ["1", "g", "x", "gx"] {
        prods.push((
            "1",
            b,
            match b {
                "1" => &[("1", 1)],
                "g" => &[("g", 1)],
                "x" => &[("x", 1)],
                _ => &[("gx", 1)],
            },
        ));
    }
    for b in ["g", "x", "gx"] {
        prods.push((
            b,
            "1",
            match b {
                "g" => &[("g", 1)],
                "x" => &[("x", 1)],
                _ => &[("gx", 1)],
            },
        ));
    }
    prods.extend_from_slice(&[
        ("g", "g", &[("1", 1)]),
        ("g", "x", &[("gx", 1)]),
        ("g", "gx", &[("x", 1)]),
        ("x", "g", &[("gx", -1)]),
        ("gx", "g", &[("x", -1)]),
    ]);
    table("H4", &["1", "g", "x", "gx"], &prods)
}

fn linear(a: &AlgebraRef, images: &[&[(&str, &str)]]) -> AlgebraMap {
    let v = images
        .iter()
        .map(|img| img.iter().map(|(l, c)| (a.index_of(l).expect("label"), s(c))).collect())
        .collect();
    AlgebraMap::linear(a, a, v).expect("built-in map")
}

fn automorphism(a: &AlgebraRef, images: &[&[(&str, &str)]]) -> AlgebraMap {
    let m = linear(a, images);
    AlgebraMap::algebra_map(a, a, m.images().to_vec(), true).expect("built-in automorphism")
}

fn two_legs(a: &AlgebraRef) -> Vec<AlgebraRef> {
    vec![a.clone(), a.clone()]
}

fn hopf(a: AlgebraRef, delta: &[&[(&str, &str)]], counit: &[&str], antipode: &[&[(&str, &str)]]) -> HopfAlgebra {
    let legs = two_legs(&a);
    let delta = delta
        .iter()
        .map(|terms| {
            let t: Vec<(&str, Scalar)> = terms.iter().map(|(l, c)| (*l, s(c))).collect();
            tensor_from_labels(&legs, &t).expect("built-in coproduct")
        })
        .collect();
    let counit = counit.iter().map(|c| s(c)).collect();
    let sm = linear(&a, antipode);
    HopfAlgebra::new(a, delta, counit, sm).expect("built-in Hopf data")
}

/// The group algebra of `Z₂`: `t` group-like, `S(t) = t`.
pub fn kz2_hopf() -> HopfAlgebra {
    hopf(
        kz2(),
        &[&[("1 1", "1")], &[("t t", "1")]],
        &["1", "1"],
        &[&[("1", "1")], &[("t", "1")]],
    )
}

/// The four-dimensional Hopf algebra with `g` group-like and `x` skew-primitive:
/// `Δ(x) = x⊗g + 1⊗x`, `ε(x) = 0`, `S(x) = gx`. This is the coproduct for
/// which `p(ν)` is quasitriangular.
pub fn sweedler4_hopf() -> HopfAlgebra {
    hopf(
        sweedler4(),
        &[
            &[("1 1", "1")],
            &[("g g", "1")],
            &[("x g", "1"), ("1 x", "1")],
            &[("gx 1", "1"), ("g gx", "1")],
        ],
        &["1", "1", "0", "0"],
        &[&[("1", "1")], &[("g", "1")], &[("gx", "1")], &[("x", "-1")]],
    )
}

/// The same algebra with the mirrored coproduct `Δ(x) = x⊗1 + g⊗x`,
/// `S(x) = -gx`. A Hopf algebra, but `p(ν)` is not quasitriangular for it.
pub fn sweedler4_hopf_mirrored() -> HopfAlgebra {
    hopf(
        sweedler4(),
        &[
            &[("1 1", "1")],
            &[("g g", "1")],
            &[("x 1", "1"), ("g x", "1")],
            &[("gx g", "1"), ("1 gx", "1")],
        ],
        &["1", "1", "0", "0"],
        &[&[("1", "1")], &[("g", "1")], &[("gx", "-1")], &[("x", "1")]],
    )
}

/// `p(ν)` on the four-dimensional algebra.
pub fn sweedler_p(nu: &Scalar) -> TensorElement {
    let a = sweedler4();
    let half = Scalar::ratio(1, 2);
    let hn = &half * nu;
    let m = |c: &Scalar| -c;
    tensor_from_labels(
        &two_legs(&a),
        &[
            ("1 1", half.clone()),
            ("1 g", half.clone()),
            ("g 1", half.clone()),
            ("g g", m(&half)),
            ("x x", hn.clone()),
            ("x gx", hn.clone()),
            ("gx gx", hn.clone()),
            ("gx x", m(&hn)),
        ],
    )
    .expect("labels are valid")
}

/// `p' = ½(1⊗1 + 1⊗t + t⊗1 − t⊗t)`.
pub fn kz2_p() -> TensorElement {
    let h = Scalar::ratio(1, 2);
    tensor_from_labels(
        &two_legs(&kz2()),
        &[("1 1", h.clone()), ("1 t", h.clone()), ("t 1", h.clone()), ("t t", -&h)],
    )
    .expect("labels are valid")
}

/// `r = ½(1⊗1 + 1⊗t + g⊗1 − g⊗t)` between the four-dimensional algebra and `KZ2`.
pub fn ex45_r() -> TensorElement {
    let h = Scalar::ratio(1, 2);
    tensor_from_labels(
        &[sweedler4(), kz2()],
        &[("1 1", h.clone()), ("1 t", h.clone()), ("g 1", h.clone()), ("g t", -&h)],
    )
    .expect("labels are valid")
}

/// `U(x) = -x`, `U(gx) = xg`, identity on `1, g`.
pub fn sweedler_u() -> AlgebraMap {
    automorphism(
        &sweedler4(),
        &[&[("1", "1")], &[("g", "1")], &[("x", "-1")], &[("gx", "-1")]],
    )
}

/// `p_{a,n}`: `Σ_{i<j} (a−a⁻¹) E_ij⊗E_ji + Σ_i a E_ii⊗E_ii + Σ_{i<j} (E_ii⊗E_jj + E_jj⊗E_ii)`.
pub fn p_an(n: usize) -> TensorElement {
    let m = matrix_algebra(n);
    let idx = |i: usize, j: usize| i * n + j;
    let x = s("a - a^-1");
    let mut terms = Vec::new();
    for i in 0..n {
        terms.push((vec![idx(i, i), idx(i, i)], s("a")));
        for j in i + 1..n {
            terms.push((vec![idx(i, j), idx(j, i)], x.clone()));
            terms.push((vec![idx(i, i), idx(j, j)], Scalar::one()));
            terms.push((vec![idx(j, j), idx(i, i)], Scalar::one()));
        }
    }
    TensorElement::new(two_legs(&m), terms).expect("indices in range")
}

/// `f(E_ij) = a^(i−j) E_ij`.
pub fn conjugation_f(n: usize) -> AlgebraMap {
    let m = matrix_algebra(n);
    let images = (0..n * n)
        .map(|k| {
            let (i, j) = ((k / n) as i32, (k % n) as i32);
            vec![(k, Scalar::param("a").pow(i - j).expect("monomial power"))]
        })
        .collect();
    AlgebraMap::algebra_map(&m, &m, images, true).expect("f is an automorphism")
}

pub fn mn_oqa(n: usize) -> Result<OqaCandidate> {
    if n < 2 {
        return Err(Error::Input("mn_oqa needs n ≥ 2".into()));
    }
    let f = conjugation_f(n);
    OqaCandidate::new(matrix_algebra(n), p_an(n), f.clone(), f)
}

fn case_terms(case: u8) -> Vec<(&'static str, &'static str)> {
    match case {
        1 => vec![
            ("E11 E11", "1"),
            ("E22 E22", "1"),
            ("E22 E33", "-1"),
            ("E22 E11", "-1"),
            ("E11 E22", "-1"),
            ("E11 E33", "-1"),
        ],
        _ => vec![
            ("E11 E11", "a"),
            ("E22 E22", "a"),
            ("E22 E33", "1"),
            ("E22 E11", "1"),
            ("E11 E22", "1"),
            ("E11 E33", "1"),
            ("E12 E21", "a - a^-1"),
        ],
    }
}

fn m2m3(terms: &[(&str, &str)]) -> TensorElement {
    let t: Vec<(&str, Scalar)> = terms.iter().map(|(l, c)| (*l, s(c))).collect();
    tensor_from_labels(&[matrix_algebra(2), matrix_algebra(3)], &t).expect("labels are valid")
}

/// The mixed element `r ∈ M₂⊗M₃` of the first (`1`) or second (`2`) case.
pub fn ex34_r(case: u8) -> TensorElement {
    m2m3(&case_terms(case))
}

/// The inverse of the second case's `r` as displayed alongside it.
pub fn ex34_case2_stated_inverse() -> TensorElement {
    m2m3(&[
        ("E11 E11", "a^-1"),
        ("E22 E22", "a^-1"),
        ("E22 E33", "1"),
        ("E22 E11", "1"),
        ("E11 E22", "1"),
        ("E11 E33", "1"),
        ("E12 E21", "a^-1 - a"),
    ])
}

pub fn ex34_nonuple(case: u8) -> Result<Nonuple> {
    let (f2, f3) = (conjugation_f(2), conjugation_f(3));
    Nonuple::new(
        matrix_algebra(2),
        matrix_algebra(3),
        p_an(2),
        p_an(3),
        ex34_r(case),
        f2.clone(),
        f2,
        f3.clone(),
        f3,
    )
}

pub fn ex45_h_oqa(nu: &Scalar) -> Result<OqaCandidate> {
    let a = sweedler4();
    OqaCandidate::new(a.clone(), sweedler_p(nu), AlgebraMap::identity(&a), sweedler_u())
}

pub fn ex45_hprime_oqa() -> Result<OqaCandidate> {
    let a = kz2();
    OqaCandidate::new(a.clone(), kz2_p(), AlgebraMap::identity(&a), AlgebraMap::identity(&a))
}

pub fn ex45_nonuple(nu: &Scalar) -> Result<Nonuple> {
    let (h, hp) = (sweedler4(), kz2());
    Nonuple::new(
        h.clone(),
        hp.clone(),
        sweedler_p(nu),
        kz2_p(),
        ex45_r(),
        AlgebraMap::identity(&h),
        sweedler_u(),
        AlgebraMap::identity(&hp),
        AlgebraMap::identity(&hp),
    )
}

/// The displayed `α̃` of the tensor-product OQA over `(H4, KZ2, H4, KZ2)`.
pub fn expected_ex45_alpha(nu: &Scalar) -> TensorElement {
    let h = Scalar::ratio(1, 2);
    let hn = &h * nu;
    tensor_from_labels(
        &[sweedler4(), kz2(), sweedler4(), kz2()],
        &[
            ("1 1 1 1", h.clone()),
            ("1 1 g t", h.clone()),
            ("g t 1 1", h.clone()),
            ("g t g t", -&h),
            ("x t gx 1", hn.clone()),
            ("x t x t", hn.clone()),
            ("gx 1 gx 1", hn.clone()),
            ("gx 1 x t", -&hn),
        ],
    )
    .expect("labels are valid")
}

/// `(A, 1⊗1, id, id)`.
pub fn trivial_oqa(a: &AlgebraRef) -> Result<OqaCandidate> {
    OqaCandidate::new(
        a.clone(),
        TensorElement::one(two_legs(a)),
        AlgebraMap::identity(a),
        AlgebraMap::identity(a),
    )
}

/// The one-dimensional algebra `K`.
pub fn ground_field() -> AlgebraRef {
    table("K", &["1"], &[("1", "1", &[("1", 1)])])
}
