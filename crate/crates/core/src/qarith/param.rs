//! Polynomials in commuting parameter symbols (`r`, `c`, `c_i`, ...) with
//! rational-function coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::RatFuncV;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Self(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Product of symbol powers, sorted by symbol, all exponents positive.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: &Symbol, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self(vec![(s.clone(), exp)])
        }
    }

    pub fn from_powers<I: IntoIterator<Item = (Symbol, u32)>>(it: I) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in it {
            *map.entry(s).or_default() += e;
        }
        Self(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    std::cmp::Ordering::Less => {
                        out.push((sa.clone(), *ea));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((sb.clone(), *eb));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        out.push((sa.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self(out)
    }

    /// Removes `s` and returns its exponent together with the rest.
    fn split_off(&self, s: &Symbol) -> (u32, Self) {
        let e = self.degree_in(s);
        (e, Self(self.0.iter().filter(|(t, _)| t != s).cloned().collect()))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial in parameter symbols over `Q(v)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamScalar {
    terms: BTreeMap<Monomial, RatFuncV>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        RatFuncV::one().into()
    }

    pub fn integer(n: i64) -> Self {
        RatFuncV::integer(n).into()
    }

    pub fn v_pow(e: i32) -> Self {
        RatFuncV::v_pow(e).into()
    }

    /// `q^e` with `q = v^2`.
    pub fn q_pow(e: i32) -> Self {
        RatFuncV::q_pow(e).into()
    }

    pub fn symbol(s: &Symbol) -> Self {
        Self::term(Monomial::symbol(s, 1), RatFuncV::one())
    }

    pub fn named(name: &str) -> Self {
        Self::symbol(&Symbol::new(name))
    }

    pub fn term(m: Monomial, c: RatFuncV) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    fn add_term(&mut self, m: Monomial, c: RatFuncV) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(RatFuncV::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFuncV)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient field element if no symbol occurs.
    pub fn as_ratfunc(&self) -> Option<RatFuncV> {
        match self.terms.len() {
            0 => Some(RatFuncV::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> RatFuncV {
        self.terms.get(m).cloned().unwrap_or_else(RatFuncV::zero)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &RatFuncV) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every coefficient, merging terms again afterwards.
    pub fn map_coeffs(&self, f: impl Fn(&RatFuncV) -> RatFuncV) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The substitution `v -> 1/v` on all coefficients.
    pub fn invert_v(&self) -> Self {
        self.map_coeffs(RatFuncV::invert_v)
    }

    /// Replaces the symbol `s` by `value` everywhere.
    pub fn substitute(&self, s: &Symbol, value: &ParamScalar) -> Self {
        let mut powers: Vec<ParamScalar> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let piece = &Self::term(rest, c.clone()) * &powers[e as usize];
            out += &piece;
        }
        out
    }

    /// Division by an element of the coefficient field.
    pub fn div_ratfunc(&self, c: &RatFuncV) -> Result<Self> {
        Ok(self.scale(&c.recip()?))
    }

    /// Exact division by another scalar; the divisor must be symbol-free.
    pub fn checked_div(&self, rhs: &ParamScalar) -> Result<Self> {
        match rhs.as_ratfunc() {
            Some(c) => self.div_ratfunc(&c),
            None => Err(Error::Unsupported(format!("division by the parameter polynomial {rhs}"))),
        }
    }

    /// Numeric value at `v` with the given symbol values; missing symbols count as 0.
    pub fn eval(&self, v: f64, symbols: &HashMap<String, f64>) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mv: f64 = m
                    .powers()
                    .iter()
                    .map(|(s, e)| symbols.get(s.name()).copied().unwrap_or(0.0).powi(*e as i32))
                    .product();
                c.eval(v) * mv
            })
            .sum()
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: String = m
                .powers()
                .iter()
                .map(|(s, e)| {
                    let s = latex_symbol(s.name());
                    if *e == 1 { s } else { format!("{s}^{{{e}}}") }
                })
                .collect::<Vec<_>>()
                .join(" ");
            let coeff = c.to_latex();
            let piece = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if c.as_laurent().is_some_and(|p| p.len() == 1) {
                format!("{coeff} {mono}")
            } else {
                format!("\\left({coeff}\\right) {mono}")
            };
            parts.push(piece);
        }
        join_signed(&parts)
    }

    /// Whether the text rendering needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        if self.terms.len() == 1 && self.terms.keys().all(|m| !m.is_one()) {
            return false;
        }
        let s = self.to_string();
        s.contains(" + ") || s.contains(" - ") || s.contains('/')
    }
}

fn latex_symbol(name: &str) -> String {
    match name.split_once('_') {
        Some((head, tail)) => format!("{head}_{{{tail}}}"),
        None => name.to_string(),
    }
}

/// Joins rendered summands, folding a leading `-` into ` - `.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (k, p) in parts.iter().enumerate() {
        if k == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl From<RatFuncV> for ParamScalar {
    fn from(c: RatFuncV) -> Self {
        Self::term(Monomial::one(), c)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ParamScalar> for ParamScalar {
    fn sub_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul<&RatFuncV> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &RatFuncV) -> ParamScalar {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let ct = c.to_string();
            let piece = if m.is_one() {
                if self.terms.len() > 1 && (ct.contains(" + ") || ct.contains(" - ")) {
                    format!("({ct})")
                } else {
                    ct
                }
            } else if c.is_one() {
                m.to_string()
            } else if (-c).is_one() {
                format!("-{m}")
            } else if ct.contains(' ') || ct.contains('/') {
                format!("({ct})*{m}")
            } else {
                format!("{ct}*{m}")
            };
            parts.push(piece);
        }
        f.write_str(&join_signed(&parts))
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamScalar({self})")
    }
}

/// Wire form: `{"terms": [{"mono": [["c", 1]], "coeff": {...}}, ...]}`.
#[derive(Serialize, Deserialize)]
struct ParamWire {
    terms: Vec<ParamTermWire>,
}

#[derive(Serialize, Deserialize)]
struct ParamTermWire {
    mono: Vec<(String, u32)>,
    coeff: RatFuncV,
}

impl Serialize for ParamScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParamWire {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ParamTermWire {
                    mono: m.powers().iter().map(|(s, e)| (s.name().to_string(), *e)).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ParamWire::deserialize(d)?;
        let mut out = ParamScalar::zero();
        for t in wire.terms {
            let m = Monomial::from_powers(t.mono.iter().map(|(s, e)| (Symbol::new(s), *e)));
            out.add_term(m, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_expands() {
        let c = Symbol::new("c");
        let ci = ParamScalar::named("c_1");
        // c^2 + 1 with c -> c_1 * v
        let p = &ParamScalar::symbol(&c).pow(2) + &ParamScalar::one();
        let sub = p.substitute(&c, &(&ci * &ParamScalar::v_pow(1)));
        let expect = &(&ci.pow(2) * &ParamScalar::v_pow(2)) + &ParamScalar::one();
        assert_eq!(sub, expect);
    }

    #[test]
    fn rendering_is_stable() {
        let r = ParamScalar::named("r");
        let p = &(&r * &(&ParamScalar::q_pow(1) - &ParamScalar::one())) - &ParamScalar::named("c");
        assert_eq!(p.to_string(), "(v^2 - 1)*r - c");
    }

    #[test]
    fn eval_with_symbols() {
        let p = &ParamScalar::named("r") * &ParamScalar::q_pow(1);
        let vals = HashMap::from([("r".to_string(), 2.0)]);
        assert!((p.eval(0.5, &vals) - 0.5).abs() < 1e-15);
    }
}
