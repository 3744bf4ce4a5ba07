//! Continuous q-Hermite polynomials `H_n(x;q)` and the q-difference operator.

use super::poly::{x_to_z, z_to_x, SymLaurent, XPoly};
use crate::error::{Error, Result};
use crate::qarith::{qfact_pochhammer, qpochhammer_series, series_reciprocal, ParamScalar, QBase, RatFuncV, Rational};

/// `H_0 .. H_n` from `H_{k+1} = 2x H_k - (1 - q^k) H_{k-1}`.
pub fn hermite_sequence(n: u32, base: QBase) -> Vec<XPoly> {
    let mut out = vec![XPoly::one()];
    let mut prev = XPoly::zero();
    for k in 0..n {
        let cur = out.last().unwrap().clone();
        let one_minus = ParamScalar::from(&RatFuncV::one() - &base.pow(k as i32));
        let next = &cur.mul_x().scale(&ParamScalar::integer(2)) - &prev.scale(&one_minus);
        prev = cur;
        out.push(next);
    }
    out
}

/// `H_n(x; q)` by the three-term recursion.
pub fn hermite_rec(n: u32, base: QBase) -> XPoly {
    hermite_sequence(n, base).pop().unwrap()
}

/// `Σ_k (q;q)_n / ((q;q)_k (q;q)_{n-k}) z^{n-2k}` as a Laurent polynomial in `z`.
pub fn hermite_z_form(n: u32, base: QBase) -> SymLaurent {
    let top = qfact_pochhammer(n, base);
    SymLaurent::from_terms((0..=n).map(|k| {
        let coeff = &top / &(&qfact_pochhammer(k, base) * &qfact_pochhammer(n - k, base));
        (n as i32 - 2 * k as i32, ParamScalar::from(coeff))
    }))
}

/// `H_n(x; q)` from its trigonometric form.
pub fn hermite_explicit(n: u32, base: QBase) -> Result<XPoly> {
    z_to_x(&hermite_z_form(n, base))
}

/// The q-difference operator `D_q = δ_q f / δ_q x` with `x = (z + 1/z)/2`.
pub fn dq_apply(p: &XPoly, base: QBase) -> Result<XPoly> {
    let h = base.half_exp()?;
    let lifted = x_to_z(p);
    // δ_q z^k = (q^{k/2} - q^{-k/2}) z^k
    let delta = lifted.map_indexed(|k, c| c.scale(&(&RatFuncV::v_pow(h * k) - &RatFuncV::v_pow(-h * k))));
    let quotient = delta.div_z_minus_zinv()?;
    // δ_q x = -1/2 q^{-1/2} (1 - q) (z - 1/z)
    let dx = &(&RatFuncV::v_pow(-h) * &(&RatFuncV::one() - &base.pow(1))) * &RatFuncV::rational(Rational::new((-1).into(), 2.into()));
    let scaled = quotient.scale(&ParamScalar::from(dx.recip()?));
    z_to_x(&scaled).map_err(|_| Error::InexactDivision("D_q produced an asymmetric result".into()))
}

/// `D_q^k p`.
pub fn dq_power(p: &XPoly, k: u32, base: QBase) -> Result<XPoly> {
    let mut cur = p.clone();
    for _ in 0..k {
        cur = dq_apply(&cur, base)?;
    }
    Ok(cur)
}

/// The forward relation `D_q H_n = 2 q^{-(n-1)/2} (1 - q^n)/(1 - q) H_{n-1}` as the scalar factor.
pub fn forward_difference_factor(n: u32, base: QBase) -> Result<RatFuncV> {
    let h = base.half_exp()?;
    let num = &(&RatFuncV::integer(2) * &RatFuncV::v_pow(-h * (n as i32 - 1))) * &(&RatFuncV::one() - &base.pow(n as i32));
    Ok(&num / &(&RatFuncV::one() - &base.pow(1)))
}

pub fn forward_difference_check(n: u32, base: QBase) -> Result<bool> {
    if n == 0 {
        return Ok(dq_apply(&XPoly::one(), base)?.is_zero());
    }
    let lhs = dq_apply(&hermite_rec(n, base), base)?;
    let rhs = hermite_rec(n - 1, base).scale_ratfunc(&forward_difference_factor(n, base)?);
    Ok(lhs == rhs)
}

/// Coefficients of `s^0 .. s^N` in `1 / ((sz; q)_∞ (s/z; q)_∞)`, converted back to `x`.
pub fn uni_genfun_coefficients(n_max: u32, base: QBase) -> Result<Vec<XPoly>> {
    let alpha = qpochhammer_series(n_max, base);
    let beta = series_reciprocal(&alpha, n_max as usize)?;
    (0..=n_max as usize)
        .map(|n| {
            let s = SymLaurent::from_terms(
                (0..=n).map(|k| (2 * k as i32 - n as i32, ParamScalar::from(&beta[k] * &beta[n - k]))),
            );
            z_to_x(&s)
        })
        .collect()
}

/// Compares the generating-series coefficients with `H_n / (q;q)_n` for `n <= N`.
pub fn genfun_check_uni(n_max: u32, base: QBase) -> Result<bool> {
    let coeffs = uni_genfun_coefficients(n_max, base)?;
    let hs = hermite_sequence(n_max, base);
    Ok(coeffs
        .iter()
        .zip(&hs)
        .enumerate()
        .all(|(n, (c, h))| *c == h.scale_ratfunc(&qfact_pochhammer(n as u32, base).recip().expect("nonzero"))))
}

/// The closed form of `D_q^k H_m`:
/// `2^k/(1-q)^k q^{-(mk - k(k-1)/2 - k)/2} (q;q)_m/(q;q)_{m-k} H_{m-k}`.
pub fn dq_power_on_hermite_rhs(m: u32, k: u32, base: QBase) -> Result<XPoly> {
    if k > m {
        return Ok(XPoly::zero());
    }
    let h = base.half_exp()?;
    let (mi, ki) = (m as i64, k as i64);
    let exp = -(mi * ki - ki * (ki - 1) / 2 - ki);
    let one_minus_q = &RatFuncV::one() - &base.pow(1);
    let scalar = &(&(&RatFuncV::integer(1 << k) / &one_minus_q.pow(k)) * &RatFuncV::v_pow(h * exp as i32))
        * &(&qfact_pochhammer(m, base) / &qfact_pochhammer(m - k, base));
    Ok(hermite_rec(m - k, base).scale_ratfunc(&scalar))
}

pub fn dq_power_on_hermite_check(m: u32, k: u32, base: QBase) -> Result<bool> {
    let lhs = dq_power(&hermite_rec(m, base), k, base)?;
    Ok(lhs == dq_power_on_hermite_rhs(m, k, base)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ParamScalar {
        ParamScalar::integer(n)
    }

    #[test]
    fn low_degree_values() {
        assert_eq!(hermite_rec(0, QBase::Q), XPoly::one());
        assert_eq!(hermite_rec(1, QBase::Q), XPoly::monomial(int(2), 1));
        // 4x^2 - (1 - q)
        let expect = XPoly::from_terms([(2, int(4)), (0, &ParamScalar::q_pow(1) - &int(1))]);
        assert_eq!(hermite_rec(2, QBase::Q), expect);
    }

    #[test]
    fn explicit_agrees_with_recursion() {
        assert_eq!(hermite_explicit(0, QBase::Q).unwrap(), XPoly::one());
        assert_eq!(hermite_explicit(1, QBase::Q).unwrap(), XPoly::monomial(int(2), 1));
        for n in 0..=8 {
            assert_eq!(hermite_explicit(n, QBase::Q).unwrap(), hermite_rec(n, QBase::Q), "n = {n}");
        }
        // other bases, including q_i^{-2}
        for base in [QBase(4), QBase(-4), QBase(8)] {
            for n in 0..=5 {
                assert_eq!(hermite_explicit(n, base).unwrap(), hermite_rec(n, base));
            }
        }
    }

    #[test]
    fn dq_basics() {
        assert!(dq_apply(&XPoly::one(), QBase::Q).unwrap().is_zero());
        assert_eq!(dq_apply(&XPoly::x(), QBase::Q).unwrap(), XPoly::one());
        assert_eq!(dq_apply(&XPoly::x(), QBase(3)), Err(Error::OddBase(3)));
    }

    #[test]
    fn forward_difference() {
        for n in 0..=8 {
            assert!(forward_difference_check(n, QBase::Q).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn generating_function() {
        assert!(genfun_check_uni(0, QBase::Q).unwrap());
        let c = uni_genfun_coefficients(1, QBase::Q).unwrap();
        let one_minus_q = &RatFuncV::one() - &RatFuncV::q_pow(1);
        assert_eq!(c[1], XPoly::monomial(ParamScalar::from(&RatFuncV::integer(2) / &one_minus_q), 1));
        assert!(genfun_check_uni(8, QBase::Q).unwrap());
    }

    #[test]
    fn powers_of_dq() {
        for m in 0..=5 {
            assert!(dq_power_on_hermite_check(m, 0, QBase::Q).unwrap());
        }
        assert!(dq_power_on_hermite_check(3, 1, QBase::Q).unwrap());
        assert!(dq_power_on_hermite_check(5, 3, QBase::Q).unwrap());
        // annihilation past the degree
        assert!(dq_power(&hermite_rec(3, QBase::Q), 4, QBase::Q).unwrap().is_zero());
    }
}
