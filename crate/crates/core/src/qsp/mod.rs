//! Words in the `F_i` with torus coefficients, the star product and the
//! deformed quantum Serre relations.

mod cartan;
mod ncelem;
mod serre;
mod star;
mod tauij;

pub use cartan::CartanDatum;
pub use ncelem::{commute_torus_past_word, form_with_word, NCElem, Torus, Word};
pub use serre::{
    eval_b_terms, eval_star_poly, explicit_relation_table, extract_wmn, extract_wmn_check, mixed_tau_check,
    relation_table_check, relation_table_closed_form, serre_poly, serre_poly_star, verify_dqs_bivariate,
    verify_dqs_univariate, verify_lemma_wmn, RelationTableEntry, UnivariateVariant,
};
pub use star::{
    curve_action, left_coefficient, right_coefficient, star_letter, star_mul, star_mul_right_check, star_power,
    star_right_letter,
};
pub use tauij::{
    gamma, sbb2_correction, sum_identity_sides, verify_fj_star_fi_power, verify_sbb2, verify_sum_identities,
    verify_tau_ij_expansion,
};
