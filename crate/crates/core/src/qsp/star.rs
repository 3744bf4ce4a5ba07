use std::collections::HashMap;

use super::ncelem::{NCElem, Torus, Word};
use super::CartanDatum;
use crate::bihermite::XYPoly;
use crate::qarith::{qi_minus_inverse, ParamScalar};

/// `-c_i q^{(α_i,α_{τ(i)})} / (q_i - q_i^{-1})`, the coefficient of the
/// derivation term in `F_i ⊛ g`.
pub fn left_coefficient(datum: &CartanDatum, i: usize) -> ParamScalar {
    let t = datum.tau(i);
    let c = &ParamScalar::symbol(datum.c_symbol(i)) * &ParamScalar::q_pow(datum.form(i, t));
    -c.div_ratfunc(&qi_minus_inverse(datum.d(i))).expect("nonzero")
}

/// `c_{τ(i)} q^{(α_i,α_{τ(i)})} / (q_i - q_i^{-1})`, from the right-hand rule.
pub fn right_coefficient(datum: &CartanDatum, i: usize) -> ParamScalar {
    let t = datum.tau(i);
    let c = &ParamScalar::symbol(datum.c_symbol(t)) * &ParamScalar::q_pow(datum.form(i, t));
    c.div_ratfunc(&qi_minus_inverse(datum.d(i))).expect("nonzero")
}

/// `K^λ · e` with the torus moved to the right.
fn torus_left(datum: &CartanDatum, lambda: &Torus, e: &NCElem) -> NCElem {
    NCElem::torus(lambda.clone()).mul(e, datum)
}

/// `F_i ⊛ g = F_i g - c_i q^{(α_i,α_{τ(i)})}/(q_i - q_i^{-1}) K_{τ(i)} K_i^{-1} ∂^L_{τ(i)}(g)`.
pub fn star_letter(datum: &CartanDatum, i: usize, g: &NCElem) -> NCElem {
    let t = datum.tau(i);
    let plain = NCElem::letter(i).mul(g, datum);
    let d = g.partial_l(t, datum);
    if d.is_zero() {
        return plain;
    }
    let corr = torus_left(datum, &Torus::ratio(t, i), &d).scale(&left_coefficient(datum, i));
    &plain + &corr
}

struct WordStar<'a> {
    datum: &'a CartanDatum,
    rhs: NCElem,
    memo: HashMap<Word, NCElem>,
}

impl WordStar<'_> {
    /// `w ⊛ rhs` for a pure word `w`, peeling the leftmost letter.
    fn eval(&mut self, w: &[usize]) -> NCElem {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let out = match w.split_first() {
            None => self.rhs.clone(),
            Some((&i, rest)) => {
                // F_i·rest = F_i ⊛ rest - coef K_{τ(i)}K_i^{-1} ∂^L_{τ(i)}(rest)
                let inner = self.eval(rest);
                let mut out = star_letter(self.datum, i, &inner);
                let d = NCElem::word(rest.to_vec()).partial_l(self.datum.tau(i), self.datum);
                if !d.is_zero() {
                    let coef = left_coefficient(self.datum, i);
                    let lambda = Torus::ratio(self.datum.tau(i), i);
                    let mut acc = NCElem::zero();
                    for (w2, _, s) in d.terms() {
                        acc = &acc + &self.eval(w2).scale(s);
                    }
                    out = &out - &torus_left(self.datum, &lambda, &acc).scale(&coef);
                }
                out
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

/// The star product, defined by the left recursion; torus factors on the left
/// act by ordinary multiplication.
pub fn star_mul(datum: &CartanDatum, e1: &NCElem, e2: &NCElem) -> NCElem {
    let mut by_torus: HashMap<Torus, Vec<(&Word, &ParamScalar)>> = HashMap::new();
    for (w, t, c) in e1.terms() {
        by_torus.entry(t.clone()).or_default().push((w, c));
    }
    let mut keys: Vec<_> = by_torus.keys().cloned().collect();
    keys.sort();
    let mut out = NCElem::zero();
    for t in keys {
        let mut ws = WordStar { datum, rhs: torus_left(datum, &t, e2), memo: HashMap::new() };
        for (w, c) in &by_torus[&t] {
            // (w t) ⊛ e2 = w ⊛ (t e2)
            out = &out + &ws.eval(w).scale(c);
        }
    }
    out
}

/// Left-nested `e ⊛ e ⊛ … ⊛ e`.
pub fn star_power(datum: &CartanDatum, e: &NCElem, n: u32) -> NCElem {
    (0..n).fold(NCElem::one(), |acc, _| star_mul(datum, &acc, e))
}

/// `g ⊛ F_i` by the right-hand rule
/// `g F_i - c_{τ(i)} q^{(α_i,α_{τ(i)})}/(q_i - q_i^{-1}) ∂^R_{τ(i)}(g) K_i K_{τ(i)}^{-1}`.
pub fn star_right_letter(datum: &CartanDatum, g: &NCElem, i: usize) -> NCElem {
    let t = datum.tau(i);
    let coef = right_coefficient(datum, i);
    let lambda = Torus::ratio(i, t);
    let mut out = NCElem::zero();
    for (w, tor, c) in g.terms() {
        // (w t) ⊛ F_i = q^{-(t,α_i)} (w ⊛ F_i) t
        let shift = c * &ParamScalar::q_pow(-tor.pair(datum, i));
        let mut wf = w.clone();
        wf.push(i);
        out.add_term(wf, tor.clone(), shift.clone());
        let d = NCElem::word(w.clone()).partial_r(t, datum);
        for (w2, _, s) in d.terms() {
            out.add_term(w2.clone(), lambda.mul(tor), -&(&(&shift * s) * &coef));
        }
    }
    out
}

/// Compares `star_mul(g, F_i)` with the right-hand rule.
pub fn star_mul_right_check(datum: &CartanDatum, g: &NCElem, i: usize) -> bool {
    star_mul(datum, g, &NCElem::letter(i)) == star_right_letter(datum, g, i)
}

/// `u3 ↷ w(u1 ⊛, u2) = Σ b_rs u1^{⊛r} ⊛ u3 ⊛ u2^{⊛s}`.
pub fn curve_action(datum: &CartanDatum, w: &XYPoly, u1: &NCElem, u2: &NCElem, u3: &NCElem) -> NCElem {
    let (mx, my) = w.bidegree().unwrap_or((0, 0));
    let mut left = vec![NCElem::one()];
    for _ in 0..mx {
        let next = star_mul(datum, left.last().expect("nonempty"), u1);
        left.push(next);
    }
    let mut right = vec![NCElem::one()];
    for _ in 0..my {
        let next = star_mul(datum, right.last().expect("nonempty"), u2);
        right.push(next);
    }
    let mut out = NCElem::zero();
    for ((r, s), b) in w.terms() {
        let mid = star_mul(datum, &left[r as usize], u3);
        out = &out + &star_mul(datum, &mid, &right[s as usize]).scale(b);
    }
    out
}
