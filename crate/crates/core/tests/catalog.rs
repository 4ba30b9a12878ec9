//! Registry entries, fixture files, ordering evidence and JSON round trips.

use oqa_core::catalog::objects::ex34_nonuple;
use oqa_core::catalog::{catalog_get, compare_to_expected, expected_matrix, OrderingSpec, ENTRIES};
use oqa_core::io::{object_from_json, object_to_json};
use oqa_core::nonuple::build_thm36;

const NAMES: &[&str] = &[
    "mn_oqa(2)",
    "mn_oqa(3)",
    "mn_oqa(4)",
    "ex34_nonuple_case1",
    "ex34_nonuple_case2",
    "ex34_case2_r_inverse",
    "ex45_H_oqa(nu)",
    "ex45_H_oqa(3/2)",
    "ex45_Hprime_oqa",
    "ex45_nonuple(nu)",
    "sweedler4_hopf",
    "kz2_hopf",
    "sweedler4_qt(nu)",
    "kz2_qt",
    "ex45_weak_r",
    "expected_ex41_alpha",
    "expected_ex43_alpha",
    "expected_ex45_alpha(nu)",
    "trivial_oqa(K)",
    "trivial_oqa(KZ2)",
    "trivial_oqa(H4)",
    "trivial_oqa(M3)",
];

#[test]
fn every_entry_loads_and_certifies() {
    for name in NAMES {
        let f = catalog_get(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(rep) = &f.report {
            assert!(rep.passed(), "{name}: {:?}", rep.first_failure());
        }
    }
    assert_eq!(ENTRIES.len(), 16);
}

#[test]
fn unknown_and_malformed_names_are_rejected() {
    for name in [
        "nope",
        "mn_oqa(1)",
        "mn_oqa(x)",
        "mn_oqa(2",
        "kz2_hopf(1)",
        "trivial_oqa(Q)",
    ] {
        assert!(catalog_get(name).is_err(), "{name}");
    }
}

#[test]
fn bundles_round_trip_through_json() {
    for name in NAMES {
        let f = catalog_get(name).unwrap();
        let json = object_to_json(&f.object);
        let back = object_from_json(&json).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(object_to_json(&back), json, "{name}");
        assert_eq!(back.kind(), f.object.kind());
    }
}

#[test]
fn frozen_ordering_leaves_fewest_differences() {
    let mut n = ex34_nonuple(1).unwrap();
    assert!(n.certify().passed());
    let alpha = build_thm36(&n).unwrap().r;
    let expected = expected_matrix("expected_ex41_alpha").unwrap();
    let counts: Vec<(OrderingSpec, usize)> = OrderingSpec::all()
        .into_iter()
        .map(|o| (o, compare_to_expected(&alpha, &expected, o).unwrap().diffs.len()))
        .collect();
    let frozen = counts.iter().find(|(o, _)| *o == OrderingSpec::FROZEN).unwrap().1;
    assert_eq!(frozen, 12);
    for (o, c) in &counts {
        if *o != OrderingSpec::FROZEN {
            assert!(*c > frozen, "{o}: {c}");
        }
    }
    assert_eq!(expected.ordering, OrderingSpec::FROZEN);
}

#[test]
fn ordering_spec_parses_and_prints() {
    for o in OrderingSpec::all() {
        assert_eq!(o.to_string().parse::<OrderingSpec>().unwrap(), o);
    }
    assert!("diagonal".parse::<OrderingSpec>().is_err());
}

#[test]
fn dimension_mismatch_is_an_error() {
    let mut n = ex34_nonuple(1).unwrap();
    assert!(n.certify().passed());
    let alpha = build_thm36(&n).unwrap().r;
    assert!(compare_to_expected(
        &alpha,
        &expected_matrix("expected_ex43_alpha").unwrap(),
        OrderingSpec::FROZEN
    )
    .is_err());
}
