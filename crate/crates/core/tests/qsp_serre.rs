use qhermite::error::Error;
use qhermite::qarith::{c_in_terms_of, ParamScalar};
use qhermite::qsp::{
    explicit_relation_table, extract_wmn_check, mixed_tau_check, serre_poly, star_mul, verify_fj_star_fi_power,
    verify_lemma_wmn, CartanDatum, NCElem, Torus,
};

const AFFINE_A2: &str =
    r#"{"I":["1","2","3"],"a":[[2,-1,-1],[-1,2,-1],[-1,-1,2]],"d":[1,1,1],"tau":{"1":"1","2":"3","3":"2"}}"#;

#[test]
fn extraction_recovers_wmn() {
    for a in [0, -1, -2, -3] {
        let c = CartanDatum::fixed_pair(a).unwrap();
        for m in 0..=4 {
            for n in 0..=4 - m {
                assert!(extract_wmn_check(&c, m, n, 0, 1).unwrap(), "a = {a}, ({m},{n})");
            }
        }
    }
}

#[test]
fn lemma_with_larger_symmetrizer() {
    // d_i = 2, a_ij = -1, a_ji = -2
    let c = CartanDatum::rank_two(-1, -2, 2, 1, false).unwrap();
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        assert!(verify_lemma_wmn(&c, m, n, 0, 1).unwrap());
    }
}

#[test]
fn mixed_involution_is_undeformed() {
    let c = CartanDatum::from_json_str(AFFINE_A2).unwrap();
    // τ(2) = 3 lies outside {2, 1}
    assert!(mixed_tau_check(&c, 1, 0).unwrap());
    assert!(mixed_tau_check(&c, 0, 1).is_err());
}

#[test]
fn rank_three_relation_matches_rank_two() {
    // the fixed node of affine A2 has a_12 = -1: relation -q_1 c_1 F_2
    let c = CartanDatum::from_json_str(AFFINE_A2).unwrap();
    let got = explicit_relation_table(&c, 0, 1).unwrap();
    let want = NCElem::letter(1).scale(&-&ParamScalar::named("c_1").scale(&qhermite::qarith::QBase::Q.pow(1)));
    assert_eq!(got, want);
}

#[test]
fn star_examples() {
    let c = CartanDatum::fixed_pair(-1).unwrap();
    let f = NCElem::letter(0);
    let sq = star_mul(&c, &f, &f);
    assert_eq!(sq.coeff(&[], &Torus::identity()), c_in_terms_of(c.c_symbol(0), 1));
    let sw = CartanDatum::swapped_pair(-2).unwrap();
    for n in 0..=5 {
        assert!(verify_fj_star_fi_power(&sw, n, 0, 1).unwrap());
    }
    let s = serre_poly(&sw, 0, 1).unwrap();
    assert_eq!(s.len(), 4);
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = r#"{"I":["1","2"],"a":[[2,-1],[-2,2]],"d":[1,1],"tau":{"1":"2"}}"#;
    match CartanDatum::from_json_str(bad) {
        Err(Error::InvalidCartan(errs)) => {
            assert!(errs.iter().any(|e| e.contains("symmetrizability")));
            assert!(errs.iter().any(|e| e.contains("not defined on index \"2\"")));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(CartanDatum::from_json_str("{"), Err(Error::Parse(_))));
}
