use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use super::CartanDatum;
use crate::error::{Error, Result};
use crate::hermite::{render_latex, render_text};
use crate::qarith::ParamScalar;

/// A word in the generators `F_i`, stored as indices into the datum.
pub type Word = Vec<usize>;

/// `Π_k K_k^{λ_k}`, stored as the exponent vector `λ` with zero entries dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Torus(BTreeMap<usize, i32>);

impl Torus {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn k(i: usize, e: i32) -> Self {
        Self::default().mul(&Self(BTreeMap::from([(i, e)])))
    }

    /// `K_i K_j^{-1}`.
    pub fn ratio(i: usize, j: usize) -> Self {
        Self::k(i, 1).mul(&Self::k(j, -1))
    }

    pub fn from_exponents<I: IntoIterator<Item = (usize, i32)>>(it: I) -> Self {
        it.into_iter().fold(Self::identity(), |acc, (i, e)| acc.mul(&Self::k(i, e)))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().map(|(k, e)| (*k, *e))
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, e) in &other.0 {
            let slot = out.entry(*k).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.remove(k);
            }
        }
        Self(out)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|(k, e)| (*k, -e)).collect())
    }

    /// `(λ, α_j) = Σ_k λ_k d_k a_kj`.
    pub fn pair(&self, datum: &CartanDatum, j: usize) -> i32 {
        self.0.iter().map(|(k, e)| e * datum.form(*k, j)).sum()
    }

    /// `(λ, deg w)`.
    pub fn pair_word(&self, datum: &CartanDatum, w: &[usize]) -> i32 {
        w.iter().map(|j| self.pair(datum, *j)).sum()
    }
}

/// Moves `t` to the right of `w`: `t w = q^e w t`; returns `q^e`.
pub fn commute_torus_past_word(datum: &CartanDatum, t: &Torus, w: &[usize]) -> ParamScalar {
    ParamScalar::q_pow(-t.pair_word(datum, w))
}

/// `(α_i, deg w)`.
pub fn form_with_word(datum: &CartanDatum, i: usize, w: &[usize]) -> i32 {
    w.iter().map(|j| datum.form(i, *j)).sum()
}

/// Finite linear combination of `word · torus` terms with symbolic coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NCElem {
    terms: BTreeMap<(Word, Torus), ParamScalar>,
}

impl NCElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(ParamScalar::one(), Vec::new(), Torus::identity())
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::term(c, Vec::new(), Torus::identity())
    }

    pub fn letter(i: usize) -> Self {
        Self::word(vec![i])
    }

    pub fn word(w: Word) -> Self {
        Self::term(ParamScalar::one(), w, Torus::identity())
    }

    pub fn torus(t: Torus) -> Self {
        Self::term(ParamScalar::one(), Vec::new(), t)
    }

    pub fn term(c: ParamScalar, w: Word, t: Torus) -> Self {
        let mut out = Self::zero();
        out.add_term(w, t, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Torus, ParamScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (w, t, c) in it {
            out.add_term(w, t, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, t: Torus, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        let key = (w, t);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Torus, &ParamScalar)> {
        self.terms.iter().map(|((w, t), c)| (w, t, c))
    }

    pub fn coeff(&self, w: &[usize], t: &Torus) -> ParamScalar {
        self.terms.get(&(w.to_vec(), t.clone())).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self::from_terms(self.terms().map(|(w, t, x)| (w.clone(), t.clone(), x * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        Self::from_terms(self.terms().map(|(w, t, x)| (w.clone(), t.clone(), f(x))))
    }

    /// Ordinary product, with torus factors moved to the right.
    pub fn mul(&self, other: &Self, datum: &CartanDatum) -> Self {
        let mut out = Self::zero();
        for (w1, t1, c1) in self.terms() {
            for (w2, t2, c2) in other.terms() {
                let c = &(c1 * c2) * &commute_torus_past_word(datum, t1, w2);
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, t1.mul(t2), c);
            }
        }
        out
    }

    /// Ordinary `n`-th power.
    pub fn pow(&self, n: u32, datum: &CartanDatum) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self, datum))
    }

    /// Left twisted derivation: `∂(F_j) = δ_ij`, `∂(fg) = ∂(f)g + q^{(α_i,deg f)} f∂(g)`.
    pub fn partial_l(&self, i: usize, datum: &CartanDatum) -> Self {
        let mut out = Self::zero();
        for (w, t, c) in self.terms() {
            for (p, _) in w.iter().enumerate().filter(|(_, l)| **l == i) {
                let mut rest = w.clone();
                rest.remove(p);
                out.add_term(rest, t.clone(), c * &ParamScalar::q_pow(form_with_word(datum, i, &w[..p])));
            }
        }
        out
    }

    /// Right twisted derivation: `∂(fg) = q^{(α_i,deg g)}∂(f)g + f∂(g)`.
    pub fn partial_r(&self, i: usize, datum: &CartanDatum) -> Self {
        let mut out = Self::zero();
        for (w, t, c) in self.terms() {
            for (p, _) in w.iter().enumerate().filter(|(_, l)| **l == i) {
                let mut rest = w.clone();
                rest.remove(p);
                out.add_term(rest, t.clone(), c * &ParamScalar::q_pow(form_with_word(datum, i, &w[p + 1..])));
            }
        }
        out
    }

    /// Longest word length among the terms.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    /// Terms with longer words first, then lexicographic.
    fn display_order(&self) -> Vec<(&Word, &Torus, &ParamScalar)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| (a.0, a.1).cmp(&(b.0, b.1))));
        out
    }

    pub fn to_text(&self, datum: &CartanDatum) -> String {
        render_text(self.display_order().into_iter().map(|(w, t, c)| (monomial_text(datum, w, t, false), c)))
    }

    pub fn to_latex(&self, datum: &CartanDatum) -> String {
        render_latex(self.display_order().into_iter().map(|(w, t, c)| (monomial_text(datum, w, t, true), c)))
    }

    /// `[{"coeff": …, "torus": {label: exp}, "word": [label, …]}, …]`.
    pub fn to_json(&self, datum: &CartanDatum) -> Value {
        Value::Array(
            self.terms()
                .map(|(w, t, c)| {
                    let torus: serde_json::Map<String, Value> =
                        t.exponents().map(|(k, e)| (datum.label(k).to_string(), json!(e))).collect();
                    let word: Vec<&str> = w.iter().map(|k| datum.label(*k)).collect();
                    json!({"coeff": c, "torus": torus, "word": word})
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, datum: &CartanDatum) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("NCElem JSON: {m}"));
        let items = value.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut out = Self::zero();
        for item in items {
            let c: ParamScalar = serde_json::from_value(item.get("coeff").cloned().ok_or_else(|| bad("missing coeff"))?)
                .map_err(|e| bad(&e.to_string()))?;
            let mut t = Torus::identity();
            if let Some(map) = item.get("torus") {
                for (k, e) in map.as_object().ok_or_else(|| bad("torus must be an object"))? {
                    let e = e.as_i64().and_then(|e| i32::try_from(e).ok()).ok_or_else(|| bad("torus exponents must be integers"))?;
                    t = t.mul(&Torus::k(datum.index_of(k)?, e));
                }
            }
            let w = item
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("word must be a list"))?
                .iter()
                .map(|l| l.as_str().ok_or_else(|| bad("word letters must be strings")).and_then(|l| datum.index_of(l)))
                .collect::<Result<Word>>()?;
            out.add_term(w, t, c);
        }
        Ok(out)
    }
}

fn monomial_text(datum: &CartanDatum, w: &[usize], t: &Torus, latex: bool) -> String {
    let mut parts = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let run = w[k..].iter().take_while(|x| **x == w[k]).count();
        parts.push(power_text("F", datum.label(w[k]), run as i32, latex));
        k += run;
    }
    for (i, e) in t.exponents() {
        parts.push(power_text("K", datum.label(i), e, latex));
    }
    parts.join(if latex { " " } else { "*" })
}

fn power_text(head: &str, label: &str, e: i32, latex: bool) -> String {
    match (latex, e) {
        (true, 1) => format!("{head}_{{{label}}}"),
        (true, _) => format!("{head}_{{{label}}}^{{{e}}}"),
        (false, 1) => format!("{head}_{label}"),
        (false, _) => format!("{head}_{label}^{e}"),
    }
}

impl fmt::Debug for NCElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(w, t, c)| format!("({c}){w:?}{:?}", t.exponents().collect::<Vec<_>>()))
            .collect();
        write!(f, "NCElem[{}]", parts.join(" + "))
    }
}

impl Neg for &NCElem {
    type Output = NCElem;
    fn neg(self) -> NCElem {
        self.map_coeffs(|c| -c)
    }
}

impl Add for &NCElem {
    type Output = NCElem;
    fn add(self, rhs: &NCElem) -> NCElem {
        let mut out = self.clone();
        for (w, t, c) in rhs.terms() {
            out.add_term(w.clone(), t.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCElem {
    type Output = NCElem;
    fn sub(self, rhs: &NCElem) -> NCElem {
        let mut out = self.clone();
        for (w, t, c) in rhs.terms() {
            out.add_term(w.clone(), t.clone(), -c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qnum_nonsym_base;
    use crate::qarith::QBase;

    #[test]
    fn torus_commutation() {
        let c = CartanDatum::swapped_pair(-1).unwrap();
        assert!(commute_torus_past_word(&c, &Torus::identity(), &[0, 1]).is_one());
        // L_1 = K_1 K_2^{-1} past F_1: exponent -(α_1 - α_2, α_1) = -(2 + 1)
        let s = commute_torus_past_word(&c, &Torus::ratio(0, 1), &[0]);
        assert_eq!(s, ParamScalar::q_pow(-3));
        let fixed = CartanDatum::fixed_pair(-2).unwrap();
        assert!(commute_torus_past_word(&fixed, &Torus::ratio(1, 1), &[0]).is_one());
    }

    #[test]
    fn derivations() {
        let c = CartanDatum::fixed_pair(-2).unwrap();
        assert!(NCElem::letter(1).partial_l(0, &c).is_zero());
        let fi3 = NCElem::word(vec![0, 0, 0]);
        let expect = NCElem::word(vec![0, 0]).scale(&qnum_nonsym_base(3, QBase::q_i(1).power(2)).into());
        assert_eq!(fi3.partial_l(0, &c), expect);
        assert_eq!(fi3.partial_r(0, &c), expect);
        let fjfi = NCElem::word(vec![1, 0]);
        assert_eq!(fjfi.partial_l(0, &c), NCElem::letter(1).scale(&ParamScalar::q_pow(c.form(0, 1))));
    }

    #[test]
    fn json_roundtrip() {
        let c = CartanDatum::swapped_pair(-1).unwrap();
        let e = &NCElem::term(ParamScalar::named("c_1"), vec![0, 1], Torus::ratio(1, 0)) - &NCElem::one();
        let back = NCElem::from_json(&e.to_json(&c), &c).unwrap();
        assert_eq!(back, e);
        assert_eq!(e.to_text(&c), "c_1*F_1*F_2*K_1^-1*K_2 - 1");
        let bad = NCElem::letter(0).to_json(&c).to_string().replace("\"1\"", "\"9\"");
        assert!(NCElem::from_json(&serde_json::from_str(&bad).unwrap(), &c).is_err());
    }
}
