//! Reduced fractions of Laurent polynomials in `v`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{dense, fmt_rational};
use super::{LaurentV, Rational};
use crate::error::{Error, Result};

/// A rational function `num / den` in `v`, kept in canonical form:
/// `den` has no negative exponents, `den(0) != 0`, integer content 1 and a
/// positive leading coefficient, and `num` and `den` are coprime.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFuncV {
    num: LaurentV,
    den: LaurentV,
}

impl RatFuncV {
    pub fn zero() -> Self {
        Self { num: LaurentV::zero(), den: LaurentV::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentV::one(), den: LaurentV::one() }
    }

    pub fn integer(n: i64) -> Self {
        LaurentV::integer(n).into()
    }

    pub fn rational(c: Rational) -> Self {
        LaurentV::constant(c).into()
    }

    pub fn v_pow(e: i32) -> Self {
        LaurentV::v_pow(e).into()
    }

    /// `q^e = v^(2e)`.
    pub fn q_pow(e: i32) -> Self {
        Self::v_pow(2 * e)
    }

    pub fn new(num: LaurentV, den: LaurentV) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &LaurentV {
        &self.num
    }

    pub fn denom(&self) -> &LaurentV {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentV> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_laurent().and_then(LaurentV::as_constant)
    }

    fn normalize(num: LaurentV, den: LaurentV) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let k = den.min_exp().expect("nonzero denominator");
        let mut num = num.shift(-k);
        let mut den = den.shift(-k);

        if let Some(c) = den.as_constant() {
            return Self { num: num.scale(&c.recip()), den: LaurentV::one() };
        }

        let (sn, n_dense) = num.to_dense();
        let (_, d_dense) = den.to_dense();
        let g = dense::gcd(&n_dense, &d_dense);
        if g.len() > 1 {
            let (nq, _) = dense::div_rem(&n_dense, &g);
            let (dq, _) = dense::div_rem(&d_dense, &g);
            num = LaurentV::from_dense(sn, &nq);
            den = LaurentV::from_dense(0, &dq);
        }

        // Integer content 1 and positive leading coefficient for the denominator.
        let mut lcm = BigInt::one();
        for (_, c) in den.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in den.terms() {
            let scaled = c.numer() * (&lcm / c.denom());
            content = content.gcd(&scaled);
        }
        let mut factor = Rational::new(lcm, content);
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        if !factor.is_one() {
            num = num.scale(&factor);
            den = den.scale(&factor);
        }
        Self { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        // Coprime inputs stay coprime under powers.
        Self { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Integer power, negative exponents invert.
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.recip()?.pow(n.unsigned_abs()))
        }
    }

    /// The substitution `v -> 1/v`.
    pub fn invert_v(&self) -> Self {
        Self::normalize(self.num.invert_v(), self.den.invert_v())
    }

    /// The substitution `v -> v^k` for `k != 0`.
    pub fn compose_v_pow(&self, k: i32) -> Self {
        Self::normalize(self.num.compose_v_pow(k), self.den.compose_v_pow(k))
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.num.eval(v) / self.den.eval(v)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            laurent_latex(&self.num)
        } else {
            format!("\\frac{{{}}}{{{}}}", laurent_latex(&self.num), laurent_latex(&self.den))
        }
    }
}

pub(crate) fn laurent_latex(p: &LaurentV) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "v".into(),
            e => format!("v^{{{e}}}"),
        };
        let coeff = if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
        };
        if var.is_empty() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&coeff);
            out.push_str(&var);
        }
    }
    out
}

impl From<LaurentV> for RatFuncV {
    fn from(num: LaurentV) -> Self {
        Self { num, den: LaurentV::one() }
    }
}

impl From<i64> for RatFuncV {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Neg for &RatFuncV {
    type Output = RatFuncV;
    fn neg(self) -> RatFuncV {
        RatFuncV { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFuncV {
    type Output = RatFuncV;
    fn neg(self) -> RatFuncV {
        -&self
    }
}

impl Add for &RatFuncV {
    type Output = RatFuncV;
    fn add(self, rhs: &RatFuncV) -> RatFuncV {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFuncV { num, den: LaurentV::one() };
            }
            return RatFuncV::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFuncV::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFuncV {
    type Output = RatFuncV;
    fn sub(self, rhs: &RatFuncV) -> RatFuncV {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncV {
    type Output = RatFuncV;
    fn mul(self, rhs: &RatFuncV) -> RatFuncV {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncV::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncV { num: &self.num * &rhs.num, den: LaurentV::one() };
        }
        RatFuncV::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RatFuncV::checked_div`] otherwise.
impl Div for &RatFuncV {
    type Output = RatFuncV;
    fn div(self, rhs: &RatFuncV) -> RatFuncV {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFuncV {
            type Output = RatFuncV;
            fn $m(self, rhs: RatFuncV) -> RatFuncV {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFuncV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
            write!(f, "{num}/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFuncV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncV({self})")
    }
}

/// Wire form `{"num": [[exp, "rat"], ...], "den": [...]}`.
#[derive(Serialize, Deserialize)]
struct RatFuncWire {
    num: Vec<(i32, String)>,
    den: Vec<(i32, String)>,
}

fn laurent_to_wire(p: &LaurentV) -> Vec<(i32, String)> {
    p.terms().rev().map(|(e, c)| (e, fmt_rational(c))).collect()
}

fn laurent_from_wire(terms: &[(i32, String)]) -> Result<LaurentV> {
    let mut out = LaurentV::zero();
    for (e, s) in terms {
        let c: Rational = s.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        out.add_term(*e, c);
    }
    Ok(out)
}

impl Serialize for RatFuncV {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncWire { num: laurent_to_wire(&self.num), den: laurent_to_wire(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFuncV {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = RatFuncWire::deserialize(d)?;
        let num = laurent_from_wire(&wire.num).map_err(serde::de::Error::custom)?;
        let den = laurent_from_wire(&wire.den).map_err(serde::de::Error::custom)?;
        RatFuncV::new(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentV {
        LaurentV::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))))
    }

    #[test]
    fn cancels_common_factor() {
        // (v^4 - 1) / (v^2 - 1) = v^2 + 1
        let f = RatFuncV::new(lp(&[(4, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(f, RatFuncV::from(lp(&[(2, 1), (0, 1)])));
    }

    #[test]
    fn canonical_denominator() {
        // 1 / (-2v + 4v^3) -> num scaled so that den = 2v^2 - 1 with v^-1 moved to num
        let f = RatFuncV::new(LaurentV::one(), lp(&[(3, 4), (1, -2)])).unwrap();
        assert_eq!(f.denom(), &lp(&[(2, 2), (0, -1)]));
        assert_eq!(f.numer(), &LaurentV::monomial(Rational::new(1.into(), 2.into()), -1));
    }

    #[test]
    fn one_over_one_minus_q() {
        let one_minus_q = &RatFuncV::one() - &RatFuncV::q_pow(1);
        let inv = one_minus_q.recip().unwrap();
        assert_eq!(&inv * &one_minus_q, RatFuncV::one());
        assert_eq!(inv.to_string(), "-1/(v^2 - 1)");
        assert_eq!(RatFuncV::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_shape() {
        let f = &RatFuncV::v_pow(2) + &RatFuncV::v_pow(-2);
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"num":[[2,"1"],[-2,"1"]],"den":[[0,"1"]]}"#);
        let back: RatFuncV = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn invert_v_roundtrip() {
        let f = RatFuncV::new(lp(&[(3, 1), (0, 2)]), lp(&[(2, 1), (0, -3)])).unwrap();
        assert_eq!(f.invert_v().invert_v(), f);
    }
}
