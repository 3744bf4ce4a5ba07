use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hermite::{dq_apply, render_latex, render_text, XPoly};
use crate::qarith::{ParamScalar, QBase, RatFuncV, Symbol};

/// Commutative polynomial in `x` and `y`, keyed by `(deg_x, deg_y)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct XYPoly {
    terms: BTreeMap<(u32, u32), ParamScalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl XYPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ParamScalar::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(ParamScalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(ParamScalar::one(), 0, 1)
    }

    pub fn monomial(c: ParamScalar, ex: u32, ey: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(ex, ey, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), ParamScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for ((ex, ey), c) in it {
            out.add_term(ex, ey, c);
        }
        out
    }

    /// `p(x)` viewed as a polynomial in `x, y`.
    pub fn from_x(p: &XPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    /// `p(y)` viewed as a polynomial in `x, y`.
    pub fn from_y(p: &XPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((0, e), c.clone())))
    }

    /// `p(x) q(y)`.
    pub fn tensor(p: &XPoly, q: &XPoly) -> Self {
        let mut out = Self::zero();
        for (a, ca) in p.terms() {
            for (b, cb) in q.terms() {
                out.add_term(a, b, ca * cb);
            }
        }
        out
    }

    pub(crate) fn add_term(&mut self, ex: u32, ey: u32, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        let key = (ex, ey);
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

    pub fn coeff(&self, ex: u32, ey: u32) -> ParamScalar {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &ParamScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `x`- and `y`-exponents occurring.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let dx = self.terms.keys().map(|k| k.0).max().unwrap();
        let dy = self.terms.keys().map(|k| k.1).max().unwrap();
        Some((dx, dy))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn scale_ratfunc(&self, c: &RatFuncV) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x.scale(c))))
    }

    pub fn mul_x(&self) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((a + 1, *b), c.clone())).collect() }
    }

    pub fn mul_y(&self) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((*a, b + 1), c.clone())).collect() }
    }

    /// `p(y, x)`.
    pub fn swap(&self) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn substitute(&self, s: &Symbol, value: &ParamScalar) -> Self {
        self.map_coeffs(|c| c.substitute(s, value))
    }

    /// Groups by the exponent of the other variable: `p = Σ_e slice_e(t) u^e`.
    fn slices(&self, axis: Axis) -> BTreeMap<u32, XPoly> {
        let mut out: BTreeMap<u32, Vec<(u32, ParamScalar)>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let (own, other) = match axis {
                Axis::X => (*a, *b),
                Axis::Y => (*b, *a),
            };
            out.entry(other).or_default().push((own, c.clone()));
        }
        out.into_iter().map(|(e, ts)| (e, XPoly::from_terms(ts))).collect()
    }

    fn from_slices(slices: BTreeMap<u32, XPoly>, axis: Axis) -> Self {
        let mut out = Self::zero();
        for (other, p) in slices {
            for (own, c) in p.terms() {
                match axis {
                    Axis::X => out.add_term(own, other, c.clone()),
                    Axis::Y => out.add_term(other, own, c.clone()),
                }
            }
        }
        out
    }

    /// `D_q` in one variable, the other treated as a scalar.
    pub fn dq(&self, axis: Axis, base: QBase) -> Result<Self> {
        let slices = self
            .slices(axis)
            .into_iter()
            .map(|(e, p)| Ok((e, dq_apply(&p, base)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self::from_slices(slices, axis))
    }

    pub fn dq_x(&self, base: QBase) -> Result<Self> {
        self.dq(Axis::X, base)
    }

    pub fn dq_y(&self, base: QBase) -> Result<Self> {
        self.dq(Axis::Y, base)
    }

    pub fn eval(&self, x: f64, y: f64, v: f64, symbols: &HashMap<String, f64>) -> f64 {
        self.terms
            .iter()
            .map(|((a, b), c)| c.eval(v, symbols) * x.powi(*a as i32) * y.powi(*b as i32))
            .sum()
    }

    pub fn to_latex(&self) -> String {
        render_latex(self.ordered().map(|((a, b), c)| (vars(a, b, "^{", "}", " "), c)))
    }

    /// Descending total degree, then descending `x`-degree.
    fn ordered(&self) -> impl Iterator<Item = ((u32, u32), &ParamScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by_key(|(k, _)| std::cmp::Reverse((k.0 + k.1, k.0)));
        v.into_iter()
    }
}

fn vars(a: u32, b: u32, open: &str, close: &str, sep: &str) -> String {
    let one = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}{open}{e}{close}"),
    };
    let parts: Vec<String> = [one("x", a), one("y", b)].into_iter().filter(|s| !s.is_empty()).collect();
    parts.join(sep)
}

impl fmt::Display for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_text(self.ordered().map(|((a, b), c)| (vars(a, b, "^", "", "*"), c))))
    }
}

impl fmt::Debug for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XYPoly({self})")
    }
}

impl Neg for &XYPoly {
    type Output = XYPoly;
    fn neg(self) -> XYPoly {
        XYPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Add for &XYPoly {
    type Output = XYPoly;
    fn add(self, rhs: &XYPoly) -> XYPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }
}

impl Sub for &XYPoly {
    type Output = XYPoly;
    fn sub(self, rhs: &XYPoly) -> XYPoly {
        self + &(-rhs)
    }
}

impl Mul for &XYPoly {
    type Output = XYPoly;
    fn mul(self, rhs: &XYPoly) -> XYPoly {
        let mut out = XYPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((e, f), d) in &rhs.terms {
                out.add_term(a + e, b + f, c * d);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct XYPolyWire {
    vars: [String; 2],
    terms: Vec<([u32; 2], ParamScalar)>,
}

impl Serialize for XYPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        XYPolyWire {
            vars: ["x".into(), "y".into()],
            terms: self.ordered().map(|((a, b), c)| ([a, b], c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for XYPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = XYPolyWire::deserialize(d)?;
        Ok(XYPoly::from_terms(wire.terms.into_iter().map(|([a, b], c)| ((a, b), c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_swap() {
        let p = &(&XYPoly::x() * &XYPoly::y()).scale(&ParamScalar::integer(4)) - &XYPoly::one();
        assert_eq!(p.to_string(), "4*x*y - 1");
        assert_eq!(p.swap(), p);
        assert_eq!(XYPoly::x().swap(), XYPoly::y());
        assert_eq!(p.bidegree(), Some((1, 1)));
        assert_eq!((&p - &p), XYPoly::zero());
    }

    #[test]
    fn dq_acts_on_one_variable() {
        let p = &XYPoly::x() * &XYPoly::y();
        assert_eq!(p.dq_x(QBase::Q).unwrap(), XYPoly::y());
        assert_eq!(p.dq_y(QBase::Q).unwrap(), XYPoly::x());
        assert!(XYPoly::y().dq_x(QBase::Q).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let p = XYPoly::from_terms([((2, 1), ParamScalar::named("r")), ((0, 1), ParamScalar::v_pow(3))]);
        let j = serde_json::to_value(&p).unwrap();
        assert_eq!(j["vars"], serde_json::json!(["x", "y"]));
        assert_eq!(j["terms"][0][0], serde_json::json!([2, 1]));
        let back: XYPoly = serde_json::from_value(j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn latex() {
        let p = XYPoly::from_terms([((2, 1), ParamScalar::integer(3)), ((0, 0), ParamScalar::named("c_i"))]);
        assert_eq!(p.to_latex(), "3 x^{2} y + c_{i}");
    }
}
