//! Univariate polynomials in `x` and symmetric Laurent polynomials in `z`,
//! linked by `x = (z + 1/z) / 2`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{join_signed, ParamScalar, RatFuncV, Rational};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct XPoly {
    terms: BTreeMap<u32, ParamScalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamScalar::one())
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(ParamScalar::one(), 1)
    }

    pub fn monomial(c: ParamScalar, exp: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, ParamScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: u32, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&ParamScalar> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, exp: u32) -> ParamScalar {
        self.terms.get(&exp).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &ParamScalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn scale_ratfunc(&self, c: &RatFuncV) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.scale(c))))
    }

    pub fn mul_x(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + 1, c.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn eval(&self, x: f64, v: f64, symbols: &HashMap<String, f64>) -> f64 {
        self.terms.iter().map(|(e, c)| c.eval(v, symbols) * x.powi(*e as i32)).sum()
    }

    pub fn to_latex(&self) -> String {
        render_latex(self.terms.iter().rev().map(|(e, c)| (var_latex("x", *e), c)))
    }
}

fn var_text(name: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{e}"),
    }
}

fn var_latex(name: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{{{e}}}"),
    }
}

/// Text rendering of `Σ coeff * var` with stable sign handling.
pub(crate) fn render_text<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a ParamScalar)>,
{
    let parts: Vec<String> = terms
        .map(|(var, c)| {
            if var.is_empty() {
                return c.to_string();
            }
            if c.is_one() {
                var
            } else if (-c).is_one() {
                format!("-{var}")
            } else if c.is_compound() {
                format!("({c})*{var}")
            } else {
                format!("{c}*{var}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        join_signed(&parts)
    }
}

pub(crate) fn render_latex<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a ParamScalar)>,
{
    let parts: Vec<String> = terms
        .map(|(var, c)| {
            let ct = c.to_latex();
            if var.is_empty() {
                return if c.is_compound() { format!("\\left({ct}\\right)") } else { ct };
            }
            if c.is_one() {
                var
            } else if (-c).is_one() {
                format!("-{var}")
            } else if c.is_compound() {
                format!("\\left({ct}\\right) {var}")
            } else {
                format!("{ct} {var}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        join_signed(&parts)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_text(self.terms.iter().rev().map(|(e, c)| (var_text("x", *e), c))))
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

/// Wire form `{"var": "x", "terms": [[exp, scalar], ...]}`.
#[derive(Serialize, Deserialize)]
struct XPolyWire {
    var: String,
    terms: Vec<(u32, ParamScalar)>,
}

impl XPoly {
    /// JSON value with the variable renamed, e.g. `y` for the second slot.
    pub fn to_json_as(&self, var: &str) -> serde_json::Value {
        serde_json::to_value(XPolyWire {
            var: var.to_string(),
            terms: self.terms.iter().rev().map(|(e, c)| (*e, c.clone())).collect(),
        })
        .expect("serializable")
    }
}

impl Serialize for XPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_as("x").serialize(s)
    }
}

impl<'de> Deserialize<'de> for XPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = XPolyWire::deserialize(d)?;
        Ok(XPoly::from_terms(wire.terms))
    }
}

/// Laurent polynomial in `z` with parameter-scalar coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SymLaurent {
    terms: BTreeMap<i32, ParamScalar>,
}

impl SymLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: ParamScalar, exp: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, ParamScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: i32, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> ParamScalar {
        self.terms.get(&exp).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &ParamScalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e).is_some_and(|d| *d == -c))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Replaces each coefficient `a_k` by `f(k, a_k)`.
    pub fn map_indexed(&self, f: impl Fn(i32, &ParamScalar) -> ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(*e, c))))
    }

    /// Exact quotient by `z - 1/z`.
    pub fn div_z_minus_zinv(&self) -> Result<Self> {
        let Some(&lo) = self.terms.keys().next() else {
            return Ok(Self::zero());
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Quotient exponents lie in [lo + 1, top - 1].
        while let Some((&top, c)) = rem.terms.iter().next_back() {
            if top < lo + 2 {
                break;
            }
            let c = c.clone();
            quot.add_term(top - 1, c.clone());
            rem.add_term(top, -&c);
            rem.add_term(top - 2, c);
        }
        if !rem.is_zero() {
            return Err(Error::InexactDivision("division by z - 1/z left a remainder".into()));
        }
        Ok(quot)
    }
}

impl fmt::Debug for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_text(self.terms.iter().rev().map(|(e, c)| {
            let var = match *e {
                0 => String::new(),
                1 => "z".into(),
                e => format!("z^{e}"),
            };
            (var, c)
        }));
        write!(f, "SymLaurent({s})")
    }
}

impl Add for &SymLaurent {
    type Output = SymLaurent;
    fn add(self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &SymLaurent {
    type Output = SymLaurent;
    fn sub(self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &SymLaurent {
    type Output = SymLaurent;
    fn mul(self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = SymLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// `(z + 1/z)^n`, the image of `(2x)^n`.
fn z_plus_zinv_pow(n: u32) -> Vec<(i32, Rational)> {
    (0..=n).map(|j| (n as i32 - 2 * j as i32, binom(n, j))).collect()
}

/// Substitutes `x = (z + 1/z) / 2`.
pub fn x_to_z(p: &XPoly) -> SymLaurent {
    let mut out = SymLaurent::zero();
    for (e, c) in p.terms() {
        let half_pow = RatFuncV::rational(Rational::new(1.into(), BigInt::from(2).pow(e)));
        let base = c.scale(&half_pow);
        for (k, b) in z_plus_zinv_pow(e) {
            out.add_term(k, base.scale(&RatFuncV::rational(b)));
        }
    }
    out
}

/// Inverse of [`x_to_z`] on symmetric Laurent polynomials.
pub fn z_to_x(s: &SymLaurent) -> Result<XPoly> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut rem = s.clone();
    let mut out = XPoly::zero();
    while let Some((&top, c)) = rem.terms.iter().next_back() {
        if top < 0 {
            return Err(Error::NotSymmetric);
        }
        let c = c.clone();
        // (z + 1/z)^top = z^top + z^-top + lower, and equals (2x)^top.
        let two_pow = RatFuncV::rational(Rational::from_integer(BigInt::from(2).pow(top as u32)));
        out.add_term(top as u32, c.scale(&two_pow));
        for (k, b) in z_plus_zinv_pow(top as u32) {
            rem.add_term(k, -&c.scale(&RatFuncV::rational(b)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_maps_to_half_z_plus_zinv() {
        let s = x_to_z(&XPoly::x());
        let half = ParamScalar::from(RatFuncV::rational(Rational::new(1.into(), 2.into())));
        assert_eq!(s, SymLaurent::from_terms([(1, half.clone()), (-1, half)]));
    }

    #[test]
    fn chebyshev_two() {
        let s = SymLaurent::from_terms([(2, ParamScalar::one()), (-2, ParamScalar::one())]);
        let p = z_to_x(&s).unwrap();
        assert_eq!(p, XPoly::from_terms([(2, ParamScalar::integer(4)), (0, ParamScalar::integer(-2))]));
    }

    #[test]
    fn asymmetric_rejected() {
        let s = SymLaurent::monomial(ParamScalar::one(), 1);
        assert_eq!(z_to_x(&s), Err(Error::NotSymmetric));
    }

    #[test]
    fn division_by_z_minus_zinv() {
        // z^2 - z^-2 = (z - 1/z)(z + 1/z)
        let s = SymLaurent::from_terms([(2, ParamScalar::one()), (-2, ParamScalar::integer(-1))]);
        let q = s.div_z_minus_zinv().unwrap();
        assert_eq!(q, SymLaurent::from_terms([(1, ParamScalar::one()), (-1, ParamScalar::one())]));
        assert!(SymLaurent::monomial(ParamScalar::one(), 0).div_z_minus_zinv().is_err());
    }

    #[test]
    fn text_rendering() {
        let p = XPoly::from_terms([
            (2, ParamScalar::integer(4)),
            (0, &ParamScalar::q_pow(1) - &ParamScalar::one()),
        ]);
        assert_eq!(p.to_string(), "4*x^2 + v^2 - 1");
        assert_eq!(XPoly::one().to_string(), "1");
        assert_eq!(p.to_latex(), "4 x^{2} + \\left(v^{2} - 1\\right)");
    }
}
