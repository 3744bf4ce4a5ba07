//! q-numbers, q-factorials, q-binomials and q-Pochhammer symbols.

use super::{LaurentV, ParamScalar, RatFuncV, Symbol};
use crate::error::{Error, Result};

/// A power of the deformation parameter, stored as the exponent of `v`:
/// `QBase(e)` stands for `v^e`. The default base `q` is `QBase(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QBase(pub i32);

impl QBase {
    pub const Q: QBase = QBase(2);

    /// `q_i = q^d`.
    pub fn q_i(d: u32) -> Self {
        QBase(2 * d as i32)
    }

    /// `q^k` in this base.
    pub fn pow(self, k: i32) -> RatFuncV {
        RatFuncV::v_pow(self.0 * k)
    }

    pub fn pow_scalar(self, k: i32) -> ParamScalar {
        ParamScalar::v_pow(self.0 * k)
    }

    /// `base^k` as a new base.
    pub fn power(self, k: i32) -> QBase {
        QBase(self.0 * k)
    }

    pub fn inverse(self) -> QBase {
        QBase(-self.0)
    }

    /// The square root `base^(1/2)` as a power of `v`.
    pub fn half_exp(self) -> Result<i32> {
        if self.0 % 2 == 0 {
            Ok(self.0 / 2)
        } else {
            Err(Error::OddBase(self.0))
        }
    }
}

impl Default for QBase {
    fn default() -> Self {
        Self::Q
    }
}

/// Symmetric q-integer `[n]_{q_i}` with `q_i = q^d`, computed by exact division
/// of `q_i^n - q_i^{-n}` by `q_i - q_i^{-1}`.
pub fn qnum_symmetric(n: u32, d: u32) -> RatFuncV {
    if n == 0 {
        return RatFuncV::zero();
    }
    let e = 2 * d as i32;
    let num = &LaurentV::v_pow(e * n as i32) - &LaurentV::v_pow(-e * n as i32);
    let den = &LaurentV::v_pow(e) - &LaurentV::v_pow(-e);
    num.div_exact(&den).expect("symmetric q-integers divide exactly").into()
}

/// Non-symmetric q-integer `(n)_p = 1 + p + ... + p^{n-1}`.
pub fn qnum_nonsym(n: u32, p: &ParamScalar) -> ParamScalar {
    let mut acc = ParamScalar::zero();
    let mut power = ParamScalar::one();
    for _ in 0..n {
        acc += &power;
        power = &power * p;
    }
    acc
}

/// `(n)_{base}` for a pure power of `v`.
pub fn qnum_nonsym_base(n: u32, base: QBase) -> RatFuncV {
    let mut acc = LaurentV::zero();
    for k in 0..n as i32 {
        acc += &LaurentV::v_pow(base.0 * k);
    }
    acc.into()
}

/// `[n]^!_{q_i}`.
pub fn qfactorial(n: u32, d: u32) -> RatFuncV {
    (1..=n).fold(RatFuncV::one(), |acc, k| &acc * &qnum_symmetric(k, d))
}

/// `[n choose m]_{q_i}` as an exact quotient of q-factorials.
pub fn qbinomial(n: u32, m: u32, d: u32) -> Result<RatFuncV> {
    if m > n {
        return Err(Error::BinomialRange { n, m });
    }
    let num = qfactorial(n, d);
    let den = &qfactorial(n - m, d) * &qfactorial(m, d);
    let (Some(a), Some(b)) = (num.as_laurent(), den.as_laurent()) else {
        unreachable!("q-factorials are Laurent polynomials")
    };
    Ok(a.div_exact(b)?.into())
}

/// `(a; base)_n = Π_{k<n} (1 - a base^k)`.
pub fn qpochhammer_finite(a: &ParamScalar, n: u32, base: QBase) -> ParamScalar {
    let mut acc = ParamScalar::one();
    for k in 0..n as i32 {
        let factor = &ParamScalar::one() - &a.scale(&base.pow(k));
        acc = &acc * &factor;
    }
    acc
}

/// `(base^s; base)_n` for a pure power `base^s`.
pub fn qpochhammer_q(s: i32, n: u32, base: QBase) -> RatFuncV {
    let mut acc = LaurentV::one();
    for k in 0..n as i32 {
        let factor = &LaurentV::one() - &LaurentV::v_pow(base.0 * (s + k));
        acc = &acc * &factor;
    }
    acc.into()
}

/// `(q;q)_n` in the given base.
pub fn qfact_pochhammer(n: u32, base: QBase) -> RatFuncV {
    qpochhammer_q(1, n, base)
}

/// Coefficients of `a^0 .. a^{n_max}` in `(a; base)_∞ = Σ (-1)^n q^{n(n-1)/2} a^n / (q;q)_n`.
pub fn qpochhammer_series(n_max: u32, base: QBase) -> Vec<RatFuncV> {
    (0..=n_max)
        .map(|n| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let num = base.pow((n * n.saturating_sub(1) / 2) as i32).scale_int(sign);
            &num / &qfact_pochhammer(n, base)
        })
        .collect()
}

/// Reciprocal of a power series with constant term 1, truncated after `n` + 1 terms.
pub fn series_reciprocal(series: &[RatFuncV], n: usize) -> Result<Vec<RatFuncV>> {
    let a0 = series.first().cloned().unwrap_or_else(RatFuncV::zero);
    let inv0 = a0.recip()?;
    let mut out: Vec<RatFuncV> = Vec::with_capacity(n + 1);
    out.push(inv0.clone());
    for k in 1..=n {
        let mut acc = RatFuncV::zero();
        for j in 1..=k.min(series.len().saturating_sub(1)) {
            acc = &acc + &(&series[j] * &out[k - j]);
        }
        out.push(-&(&acc * &inv0));
    }
    Ok(out)
}

/// Both sides of `Σ_n (-1)^n [ℓ choose n]_{q_i} q_i^{n(ℓ+1)} = (q_i^2; q_i^2)_ℓ`.
pub fn qbinom_alternating_sides(l: u32, d: u32) -> (RatFuncV, RatFuncV) {
    let qi = QBase::q_i(d);
    let mut lhs = RatFuncV::zero();
    for n in 0..=l {
        let term = &qbinomial(l, n, d).expect("n <= l") * &qi.pow((n * (l + 1)) as i32);
        lhs = if n % 2 == 0 { &lhs + &term } else { &lhs - &term };
    }
    let rhs = qpochhammer_q(1, l, qi.power(2));
    (lhs, rhs)
}

pub fn qbinom_alternating_sum(l: u32) -> bool {
    let (lhs, rhs) = qbinom_alternating_sides(l, 1);
    lhs == rhs
}

/// The deformation parameter symbol `r`.
pub fn sym_r() -> Symbol {
    Symbol::new("r")
}

/// The combined constant `c` of the `τ(i) = i` star product.
pub fn sym_c() -> Symbol {
    Symbol::new("c")
}

/// `q_i - q_i^{-1}`.
pub fn qi_minus_inverse(d: u32) -> RatFuncV {
    let qi = QBase::q_i(d);
    &qi.pow(1) - &qi.pow(-1)
}

/// The value `-c_i q_i^2 / (q_i - q_i^{-1})` that the symbol `c` abbreviates.
pub fn c_in_terms_of(c_i: &Symbol, d: u32) -> ParamScalar {
    let coeff = -&(&QBase::q_i(d).pow(2) / &qi_minus_inverse(d));
    ParamScalar::symbol(c_i).scale(&coeff)
}

/// Replaces `c` by `-c_i q_i^2 / (q_i - q_i^{-1})`.
pub fn substitute_c(p: &ParamScalar, c_i: &Symbol, d: u32) -> ParamScalar {
    p.substitute(&sym_c(), &c_in_terms_of(c_i, d))
}

trait ScaleInt {
    fn scale_int(&self, k: i64) -> RatFuncV;
}

impl ScaleInt for RatFuncV {
    fn scale_int(&self, k: i64) -> RatFuncV {
        self * &RatFuncV::integer(k)
    }
}
