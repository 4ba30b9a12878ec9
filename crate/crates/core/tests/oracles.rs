//! Brute-force oracles: every formula is expanded term by term with explicit
//! loops and basis products, independently of the contraction engine.

use std::collections::BTreeMap;

use oqa_core::algebra::AlgebraRef;
use oqa_core::catalog::objects::{ex34_nonuple, ex45_r, kz2_hopf, kz2_p, mn_oqa, p_an, sweedler4_hopf, sweedler_p};
use oqa_core::catalog::{to_matrix, OrderingSpec};
use oqa_core::hopf::qt_bicrossed;
use oqa_core::nonuple::{build_thm36, build_thm37};
use oqa_core::oqa::{radford_double, ybe_sides};
use oqa_core::tensor::TensorElement;
use oqa_core::{parse_scalar, Scalar};

type Terms<'a> = Vec<(&'a Vec<usize>, &'a Scalar)>;

/// Product `e_{i1} e_{i2} …` in `alg`, as a sparse vector.
fn product(alg: &AlgebraRef, word: &[usize]) -> BTreeMap<usize, Scalar> {
    let mut acc: BTreeMap<usize, Scalar> = alg.unit().iter().cloned().collect();
    for &w in word {
        let mut next = BTreeMap::new();
        for (k, c) in &acc {
            for (m, d) in alg.mul_basis(*k, w) {
                *next.entry(*m).or_insert_with(Scalar::zero) += c * d;
            }
        }
        acc = next;
    }
    acc
}

/// Sums, over every choice of one term per copy, the tensor whose leg `l`
/// is the product of the basis words returned by `legs(choice)[l]`.
fn expand(
    out: &[AlgebraRef],
    copies: &[&TensorElement],
    legs: impl Fn(&[&Vec<usize>]) -> Vec<Vec<usize>>,
) -> TensorElement {
    let lists: Vec<Terms> = copies.iter().map(|t| t.terms().iter().collect()).collect();
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    let mut choice = vec![0usize; copies.len()];
    'outer: loop {
        let idx: Vec<&Vec<usize>> = choice.iter().zip(&lists).map(|(&c, l)| l[c].0).collect();
        let coeff = choice
            .iter()
            .zip(&lists)
            .fold(Scalar::one(), |acc, (&c, l)| &acc * l[c].1);
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coeff)];
        for (alg, word) in out.iter().zip(legs(&idx)) {
            let p = product(alg, &word);
            partial = partial
                .into_iter()
                .flat_map(|(k, c)| {
                    p.iter().map(move |(m, d)| {
                        let mut k = k.clone();
                        k.push(*m);
                        (k, &c * d)
                    })
                })
                .collect();
        }
        for (k, c) in partial {
            *acc.entry(k).or_insert_with(Scalar::zero) += c;
        }
        for pos in (0..choice.len()).rev() {
            choice[pos] += 1;
            if choice[pos] < lists[pos].len() {
                continue 'outer;
            }
            choice[pos] = 0;
        }
        break;
    }
    TensorElement::new(out.to_vec(), acc).unwrap()
}

fn s(text: &str) -> Scalar {
    parse_scalar(text, &["a", "nu"]).unwrap()
}

#[test]
fn yang_baxter_sides_match_direct_expansion() {
    for n in [2, 3] {
        let r = p_an(n);
        let h = r.legs()[0].clone();
        let legs = vec![h.clone(), h.clone(), h];
        // r₁₂ r₁₃ r₂₃ and r₂₃ r₁₃ r₁₂ with copies (x, y, z) in that order.
        let left = expand(&legs, &[&r, &r, &r], |t| {
            vec![vec![t[0][0], t[1][0]], vec![t[0][1], t[2][0]], vec![t[1][1], t[2][1]]]
        });
        let right = expand(&legs, &[&r, &r, &r], |t| {
            vec![vec![t[1][0], t[2][0]], vec![t[0][0], t[2][1]], vec![t[0][1], t[1][1]]]
        });
        let (l, rr) = ybe_sides(&r).unwrap();
        assert_eq!(l, left);
        assert_eq!(rr, right);
        assert_eq!(left, right);
    }
}

#[test]
fn tensor_square_alpha_matches_direct_expansion() {
    // α̃ = p_i p_j ⊗ p_k P^l ⊗ p^j P_l ⊗ p^i p^k, copies (i, j, k, P).
    let p = p_an(2);
    let big_p = p.invert().unwrap();
    let h = p.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h.clone(), h];
    let oracle = expand(&legs, &[&p, &p, &p, &big_p], |t| {
        vec![
            vec![t[0][0], t[1][0]],
            vec![t[2][0], t[3][1]],
            vec![t[1][1], t[3][0]],
            vec![t[0][1], t[2][1]],
        ]
    });
    let mut c = mn_oqa(2).unwrap();
    c.certify();
    assert_eq!(build_thm37(&c).unwrap().r.ungroup(), oracle);
}

#[test]
fn radford_alpha_matches_direct_expansion() {
    // R^l r_i ⊗ R^m r_j ⊗ r^i r^j ⊗ R_l R_m, copies (R_l, R_m, r_i, r_j).
    let r = p_an(2);
    let big_r = r.invert().unwrap();
    let h = r.legs()[0].clone();
    let legs = vec![h.clone(), h.clone(), h.clone(), h];
    let oracle = expand(&legs, &[&big_r, &big_r, &r, &r], |t| {
        vec![
            vec![t[0][1], t[2][0]],
            vec![t[1][1], t[3][0]],
            vec![t[2][1], t[3][1]],
            vec![t[0][0], t[1][0]],
        ]
    });
    let mut c = mn_oqa(2).unwrap();
    c.certify();
    assert_eq!(radford_double(&c).unwrap().r.ungroup(), oracle);
}

#[test]
fn mixed_alpha_matches_direct_expansion() {
    // α̃ = r_k p_i ⊗ p'_j R^n ⊗ p^i R_n ⊗ r^k p'^j, copies (r, p, p', R).
    let mut n = ex34_nonuple(1).unwrap();
    assert!(n.certify().passed());
    let big_r = n.r.invert().unwrap();
    let legs = vec![n.h.clone(), n.hp.clone(), n.h.clone(), n.hp.clone()];
    let oracle = expand(&legs, &[&n.r, &n.p, &n.pp, &big_r], |t| {
        vec![
            vec![t[0][0], t[1][0]],
            vec![t[2][0], t[3][1]],
            vec![t[1][1], t[3][0]],
            vec![t[0][1], t[2][1]],
        ]
    });
    assert_eq!(build_thm36(&n).unwrap().r.ungroup(), oracle);
}

#[test]
fn bracket_coefficients_match_direct_expansion() {
    let nu = Scalar::param("nu");
    let (mut h, mut hp) = (sweedler4_hopf(), kz2_hopf());
    assert!(h.certify().passed() && hp.certify().passed());
    let (p, pp, r) = (sweedler_p(&nu), kz2_p(), ex45_r());
    let big_r = r.invert().unwrap();
    let (_, bracket) = qt_bicrossed(&h, &hp, &p, &pp, &r).unwrap();
    let legs = vec![
        h.algebra.clone(),
        hp.algebra.clone(),
        h.algebra.clone(),
        hp.algebra.clone(),
    ];
    let oracle = expand(&legs, &[&r, &p, &pp, &big_r], |t| {
        vec![
            vec![t[0][0], t[1][0]],
            vec![t[2][0], t[3][1]],
            vec![t[1][1], t[3][0]],
            vec![t[0][1], t[2][1]],
        ]
    });
    let got = bracket.ungroup();
    assert_eq!(got, oracle);
    // Frozen: the coefficient of x⊗t⊗gx⊗1.
    let a = &h.algebra;
    let idx = [
        a.index_of("x").unwrap(),
        hp.algebra.index_of("t").unwrap(),
        a.index_of("gx").unwrap(),
        0,
    ];
    assert_eq!(got.coeff(&idx), s("nu/2"));
}

/// Frozen cells of the computed 16×16 tensor-square matrix, including the
/// three cells where the printed matrix is suspected to be wrong.
#[test]
fn frozen_tensor_square_cells() {
    let mut c = mn_oqa(2).unwrap();
    c.certify();
    let m = to_matrix(&build_thm37(&c).unwrap().r, OrderingSpec::FROZEN).unwrap();
    let frozen = [
        ((1, 1), "a^2"),
        ((3, 8), "-a^3 + a"),
        ((7, 13), "-a^3 + 2*a - a^-1"),
        ((8, 9), "a^2 - 1"),
        ((16, 16), "a^2"),
    ];
    for ((row, col), want) in frozen {
        assert_eq!(m.get(row - 1, col - 1), s(want), "cell ({row}, {col})");
    }
    assert_eq!(m.cells.len(), 38);
}

/// Frozen cells of the computed 36×36 mixed matrix.
#[test]
fn frozen_mixed_cells() {
    let mut n = ex34_nonuple(1).unwrap();
    assert!(n.certify().passed());
    let m = to_matrix(&build_thm36(&n).unwrap().r, OrderingSpec::FROZEN).unwrap();
    let frozen = [
        ((1, 1), "a^2"),
        ((1, 5), "-a"),
        ((1, 32), "1"),
        ((9, 5), "a"),
        ((9, 32), "1"),
        ((36, 36), "a^2"),
    ];
    for ((row, col), want) in frozen {
        assert_eq!(m.get(row - 1, col - 1), s(want), "cell ({row}, {col})");
    }
    assert_eq!(m.cells.len(), 60);
}
