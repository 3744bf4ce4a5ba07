use qhermite::bihermite::{
    bihermite_expand, bihermite_rec, dq_relation_check, genfun_check_biv, operator_formulation_check,
    r_zero_check, resummation_check, symmetry_check, wmn_is_rescaled_bihermite_check,
    wmn_mixed_expansion_check, wmn_recursions_check, Axis,
};
use qhermite::error::Result;
use qhermite::hermite::{
    forward_difference_check, genfun_check_uni, hermite_explicit, hermite_rec, vm_defsum_check,
    vm_is_rescaled_hermite_check, vm_wm_substitution_check, wm_divided_check, wm_is_rescaled_hermite_check,
};
use qhermite::qarith::{qbinom_alternating_sum, QBase, Symbol};
use qhermite::qsp::{
    extract_wmn_check, relation_table_check, star_mul, star_mul_right_check, verify_dqs_bivariate,
    verify_dqs_univariate, verify_fj_star_fi_power, verify_lemma_wmn, verify_sbb2, verify_sum_identities,
    verify_tau_ij_expansion, CartanDatum, NCElem, UnivariateVariant, Word,
};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Self { suite: suite.into(), cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, case: impl Into<String>, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(Failure { case: case.into(), detail: "identity does not hold".into() }),
            Err(e) => self.failures.push(Failure { case: case.into(), detail: e.to_string() }),
        }
    }
}

/// A pair `(i, j)` inside a datum, used by the Serre suites.
pub struct Pair {
    pub datum: CartanDatum,
    pub i: usize,
    pub j: usize,
}

impl Pair {
    fn describe(&self) -> String {
        format!("({},{}) a_ij={}", self.datum.label(self.i), self.datum.label(self.j), self.datum.a(self.i, self.j))
    }
}

pub fn univariate(max: u32) -> Report {
    let mut r = Report::new("univariate");
    let base = QBase::Q;
    for n in 0..=max {
        r.check(format!("hermite_rec = hermite_explicit n={n}"), hermite_explicit(n, base).map(|e| e == hermite_rec(n, base)));
        r.check(format!("forward difference n={n}"), forward_difference_check(n, base));
    }
    r.check(format!("generating function N={max}"), genfun_check_uni(max, base));
    let ci = Symbol::new("c_i");
    for d in 1..=2 {
        for m in 0..=max {
            r.check(format!("v_m definition sum m={m} d={d}"), Ok(vm_defsum_check(m, d)));
            r.check(format!("v_m from inverted w_m m={m} d={d}"), Ok(vm_wm_substitution_check(m, d)));
            r.check(format!("w_m rescaled Hermite m={m} d={d}"), Ok(wm_is_rescaled_hermite_check(m, d, &ci)));
            r.check(format!("v_m rescaled Hermite m={m} d={d}"), Ok(vm_is_rescaled_hermite_check(m, d)));
            if m >= 1 {
                r.check(format!("w_m divided-power recursion m={m} d={d}"), Ok(wm_divided_check(m, d)));
            }
        }
    }
    r
}

pub fn bivariate(max: u32) -> Report {
    let mut r = Report::new("bivariate");
    let base = QBase::Q;
    for m in 0..=max {
        for n in 0..=max - m {
            r.check(format!("recursion = expansion ({m},{n})"), Ok(bihermite_rec(m, n, base) == bihermite_expand(m, n, base)));
            r.check(format!("symmetry ({m},{n})"), Ok(symmetry_check(m, n, base)));
            r.check(format!("r=0 degeneration ({m},{n})"), Ok(r_zero_check(m, n, base)));
            for (axis, k, name) in [(Axis::X, m, "x"), (Axis::Y, n, "y")] {
                if k > 0 {
                    r.check(
                        format!("D_q,{name} relation ({m},{n})"),
                        dq_relation_check(m, n, axis, base).map(|rep| rep.half_exponent_holds),
                    );
                }
            }
            if m <= 5 && n <= 5 {
                r.check(format!("operator formulation ({m},{n})"), operator_formulation_check(m, n, base));
            }
        }
    }
    r.check(format!("generating function total degree {max}"), genfun_check_biv(max, base));
    for a in [0, -1, -2, -3] {
        let cap = max.min(6);
        r.check(format!("w_mn recursions a={a}"), Ok(wmn_recursions_check(cap, 1, a)));
        r.check(format!("w_mn resummation a={a}"), Ok(resummation_check(1, a)));
        for m in 0..=cap {
            for n in 0..=cap - m {
                r.check(format!("w_mn mixed expansion ({m},{n}) a={a}"), Ok(wmn_mixed_expansion_check(m, n, 1, a)));
                r.check(format!("w_mn rescaled H_mn ({m},{n}) a={a}"), Ok(wmn_is_rescaled_bihermite_check(m, n, 1, a)));
            }
        }
    }
    r
}

fn words_up_to(len: usize, letters: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| (0..letters).map(move |l| [w.as_slice(), &[l]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn render_word(d: &CartanDatum, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|k| format!("F_{}", d.label(*k))).collect::<Vec<_>>().join("*")
}

/// Right-rule agreement on words up to `max`, associativity on triples of
/// total length up to `max`.
pub fn starproduct(datum: &CartanDatum, max: u32) -> Report {
    let mut r = Report::new("starproduct");
    let n = datum.rank();
    let words = words_up_to(max as usize, n);
    for w in &words {
        for i in 0..n {
            let case = format!("right rule {} * F_{}", render_word(datum, w), datum.label(i));
            r.check(case, Ok(star_mul_right_check(datum, &NCElem::word(w.clone()), i)));
        }
    }
    let max = max as usize;
    for a in &words {
        for b in words.iter().filter(|b| a.len() + b.len() <= max) {
            let ab = star_mul(datum, &NCElem::word(a.clone()), &NCElem::word(b.clone()));
            for c in words.iter().filter(|c| a.len() + b.len() + c.len() <= max) {
                let ce = NCElem::word(c.clone());
                let left = star_mul(datum, &ab, &ce);
                let right = star_mul(datum, &NCElem::word(a.clone()), &star_mul(datum, &NCElem::word(b.clone()), &ce));
                let case = format!(
                    "associativity ({}, {}, {})",
                    render_word(datum, a),
                    render_word(datum, b),
                    render_word(datum, c)
                );
                r.check(case, Ok(left == right));
            }
        }
    }
    r
}

pub fn serre_tauii(pairs: &[Pair], max: u32) -> Report {
    let mut r = Report::new("serre-tauii");
    for p in pairs {
        let (d, i, j) = (&p.datum, p.i, p.j);
        let tag = p.describe();
        for m in 0..=max {
            for n in 0..=max - m {
                r.check(format!("lemma w_mn ({m},{n}) {tag}"), verify_lemma_wmn(d, m, n, i, j));
            }
        }
        for m in 0..=max.min(4) {
            for n in 0..=max.min(4) - m {
                r.check(format!("triangular extraction ({m},{n}) {tag}"), extract_wmn_check(d, m, n, i, j));
            }
        }
        r.check(format!("bivariate relation {tag}"), verify_dqs_bivariate(d, i, j));
        r.check(format!("univariate relation wv {tag}"), verify_dqs_univariate(d, i, j, UnivariateVariant::Wv));
        r.check(format!("univariate relation vw {tag}"), verify_dqs_univariate(d, i, j, UnivariateVariant::Vw));
        if (-3..=0).contains(&d.a(i, j)) {
            r.check(format!("relation table {tag}"), relation_table_check(d, i, j));
        }
    }
    r
}

pub fn serre_tauij(pairs: &[Pair], max: u32) -> Report {
    let mut r = Report::new("serre-tauij");
    for p in pairs {
        let (d, i, j) = (&p.datum, p.i, p.j);
        let tag = p.describe();
        for m in 0..=max {
            for n in 0..=max - m {
                r.check(format!("expansion ({m},{n}) {tag}"), verify_tau_ij_expansion(d, m, n, i, j));
            }
        }
        for n in 0..=max {
            r.check(format!("F_j * F_i^{n} {tag}"), verify_fj_star_fi_power(d, n, i, j));
        }
        r.check(format!("Serre relation {tag}"), verify_sbb2(d, i, j));
    }
    r
}

pub fn sums() -> Report {
    let mut r = Report::new("sums");
    for l in 0..=10 {
        r.check(format!("alternating q-binomial sum l={l}"), Ok(qbinom_alternating_sum(l)));
    }
    for a in -9..=0 {
        for d in 1..=2 {
            r.check(format!("sum identities a={a} d={d}"), Ok(verify_sum_identities(a, d)));
        }
    }
    r
}
