//! Laurent polynomials in `v` with rational coefficients.
//!
//! Throughout the crate `q = v^2`, so every half-integer power of `q` is an
//! integer power of `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentV {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentV {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// The constant value if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The substitution `v -> 1/v`.
    pub fn invert_v(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The substitution `v -> v^k`.
    pub fn compose_v_pow(&self, k: i32) -> Self {
        assert!(k != 0, "v -> v^0 is not invertible");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * v.powi(*e))
            .sum()
    }

    /// Exact quotient `self / rhs`, failing when the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = rhs.to_dense();
        let (quot, rem) = dense::div_rem(&a, &b);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("({self}) / ({rhs})")));
        }
        Ok(Self::from_dense(sa - sb, &quot))
    }

    /// `v^shift * Σ dense[k] v^k` with `dense[0] != 0`.
    pub(crate) fn to_dense(&self) -> (i32, Vec<Rational>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        (lo, out)
    }

    pub(crate) fn from_dense(shift: i32, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (shift + k as i32, c.clone())),
        )
    }
}

/// Dense univariate polynomial helpers over `Q`, lowest degree first.
pub(crate) mod dense {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut b = b.to_vec();
        trim(&mut b);
        let mut rem = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return (vec![], rem);
        }
        let lead = b.last().expect("nonzero divisor").clone();
        let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let factor = rem.last().unwrap() / &lead;
            for (k, bc) in b.iter().enumerate() {
                let t = bc * &factor;
                rem[shift + k] -= t;
            }
            quot[shift] = factor;
            rem.pop();
            trim(&mut rem);
        }
        (quot, rem)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y);
            x = y;
            y = monic(r);
        }
        monic(x)
    }

    pub fn monic(mut p: Vec<Rational>) -> Vec<Rational> {
        trim(&mut p);
        if let Some(lead) = p.last().cloned() {
            for c in p.iter_mut() {
                *c /= &lead;
            }
        }
        p
    }
}

impl Neg for &LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        LaurentV {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        -&self
    }
}

impl AddAssign<&LaurentV> for LaurentV {
    fn add_assign(&mut self, rhs: &LaurentV) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentV> for LaurentV {
    fn sub_assign(&mut self, rhs: &LaurentV) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentV {
    type Output = LaurentV;
    fn add(self, rhs: &LaurentV) -> LaurentV {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentV {
    type Output = LaurentV;
    fn sub(self, rhs: &LaurentV) -> LaurentV {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentV {
    type Output = LaurentV;
    fn mul(self, rhs: &LaurentV) -> LaurentV {
        let mut out = LaurentV::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Add for LaurentV {
    type Output = LaurentV;
    fn add(self, rhs: LaurentV) -> LaurentV {
        &self + &rhs
    }
}

impl Sub for LaurentV {
    type Output = LaurentV;
    fn sub(self, rhs: LaurentV) -> LaurentV {
        &self - &rhs
    }
}

impl Mul for LaurentV {
    type Output = LaurentV;
    fn mul(self, rhs: LaurentV) -> LaurentV {
        &self * &rhs
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders with exponents descending, e.g. `v^2 + v^-2`.
impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => format!("v^{e}"),
            };
            if var.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentV({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn display_is_descending() {
        let p = &LaurentV::v_pow(-2) + &LaurentV::v_pow(2);
        assert_eq!(p.to_string(), "v^2 + v^-2");
        let p = LaurentV::from_terms([(1, r(-3)), (0, r(1)), (-1, Rational::new(1.into(), 2.into()))]);
        assert_eq!(p.to_string(), "-3*v + 1 + 1/2*v^-1");
    }

    #[test]
    fn exact_division() {
        // (v^4 - v^-4) / (v^2 - v^-2) = v^2 + v^-2
        let num = &LaurentV::v_pow(4) - &LaurentV::v_pow(-4);
        let den = &LaurentV::v_pow(2) - &LaurentV::v_pow(-2);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, &LaurentV::v_pow(2) + &LaurentV::v_pow(-2));
        assert!(LaurentV::v_pow(3).div_exact(&(&LaurentV::one() + &LaurentV::v_pow(1))).is_err());
        assert_eq!(LaurentV::one().div_exact(&LaurentV::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1 - v)(1 + v) and (1 - v)(2 + v)
        let a = vec![r(1), r(0), r(-1)];
        let b = vec![r(2), r(-1), r(-1)];
        let g = dense::gcd(&a, &b);
        assert_eq!(g, vec![r(-1), r(1)]);
    }
}
