//! The univariate families `w_m` and `v_m` attached to a node `i` with
//! `τ(i) = i`. Coefficients are polynomials in the symbol `c`; only the
//! symmetrizer `d_i` (through `q_i = q^{d_i}`) enters.

use super::family::hermite_rec;
use super::poly::XPoly;
use crate::qarith::{
    qbinomial, qfactorial, qnum_nonsym_base, qnum_symmetric, substitute_c, sym_c, ParamScalar, QBase,
    RatFuncV, Rational, Symbol,
};

fn c() -> ParamScalar {
    ParamScalar::symbol(&sym_c())
}

/// `w_0 .. w_m` from `w_{k+1} = x w_k - c (k)_{q_i^2} w_{k-1}`.
pub fn wm_sequence(m: u32, d: u32) -> Vec<XPoly> {
    let qi2 = QBase::q_i(d).power(2);
    let mut out = vec![XPoly::one()];
    let mut prev = XPoly::zero();
    for k in 0..m {
        let cur = out.last().unwrap().clone();
        let coeff = c().scale(&qnum_nonsym_base(k, qi2));
        let next = &cur.mul_x() - &prev.scale(&coeff);
        prev = cur;
        out.push(next);
    }
    out
}

pub fn wm_poly(m: u32, d: u32) -> XPoly {
    wm_sequence(m, d).pop().unwrap()
}

/// `v_0 .. v_m` from `v_{k+1} = x v_k + c q_i^{-2} (k)_{q_i^{-2}} v_{k-1}`.
pub fn vm_sequence(m: u32, d: u32) -> Vec<XPoly> {
    let qi = QBase::q_i(d);
    let mut out = vec![XPoly::one()];
    let mut prev = XPoly::zero();
    for k in 0..m {
        let cur = out.last().unwrap().clone();
        let coeff = c().scale(&(&qi.pow(-2) * &qnum_nonsym_base(k, qi.power(-2))));
        let next = &cur.mul_x() + &prev.scale(&coeff);
        prev = cur;
        out.push(next);
    }
    out
}

pub fn vm_poly(m: u32, d: u32) -> XPoly {
    vm_sequence(m, d).pop().unwrap()
}

/// `w_m(x; q_i^{-1}, -q_i^{-2} c)`: invert `v` in the coefficients, then
/// rescale `c`.
pub fn wm_inverted(m: u32, d: u32) -> XPoly {
    let rescaled_c = c().scale(&-&QBase::q_i(d).pow(-2));
    wm_poly(m, d).map_coeffs(|a| a.invert_v().substitute(&sym_c(), &rescaled_c))
}

/// `Σ_k c^k q_i^{-k(k+1)/2} [n choose 2k]_{q_i} [2k]! / [k]! w_{n-2k}(x)`.
pub fn vm_defsum(n: u32, d: u32) -> XPoly {
    let qi = QBase::q_i(d);
    let ws = wm_sequence(n, d);
    let mut out = XPoly::zero();
    for k in 0..=n / 2 {
        let scalar = &(&qi.pow(-((k * (k + 1) / 2) as i32)) * &qbinomial(n, 2 * k, d).expect("2k <= n"))
            * &(&qfactorial(2 * k, d) / &qfactorial(k, d));
        out = &out + &ws[(n - 2 * k) as usize].scale(&c().pow(k).scale(&scalar));
    }
    out
}

pub fn vm_defsum_check(n: u32, d: u32) -> bool {
    vm_defsum(n, d) == vm_poly(n, d)
}

/// `v_m(x; q_i, c) = w_m(x; q_i^{-1}, -q_i^{-2} c)`.
pub fn vm_wm_substitution_check(m: u32, d: u32) -> bool {
    vm_poly(m, d) == wm_inverted(m, d)
}

/// Divided powers `w^{(n)} = w_n / [n]!_{q_i}` satisfy
/// `[m] w^{(m)} = x w^{(m-1)} - c q_i^{m-2} w^{(m-2)}`.
pub fn wm_divided_check(m: u32, d: u32) -> bool {
    assert!(m >= 1, "divided-power recursion starts at m = 1");
    let ws = wm_sequence(m, d);
    let divided = |n: i64| -> XPoly {
        if n < 0 {
            XPoly::zero()
        } else {
            ws[n as usize].scale_ratfunc(&qfactorial(n as u32, d).recip().expect("nonzero"))
        }
    };
    let m = m as i64;
    let lhs = divided(m).scale_ratfunc(&qnum_symmetric(m as u32, d));
    let tail = divided(m - 2).scale(&c().scale(&QBase::q_i(d).pow(m as i32 - 2)));
    lhs == &divided(m - 1).mul_x() - &tail
}

/// `κ = c / (1 - q_i^2)`, the value of `1 / (4 b_i^2)`.
pub fn kappa(d: u32) -> ParamScalar {
    let one_minus = &RatFuncV::one() - &QBase::q_i(d).pow(2);
    c().scale(&one_minus.recip().expect("q_i^2 != 1"))
}

/// Rewrites `(2b)^{-m} h(b x)` without `b`: the coefficient of `x^k` is
/// `2^{-m} (4κ)^{(m-k)/2} h_k`. Returns `None` if a monomial of the wrong
/// parity occurs (the rescaling would then need `b` itself).
pub fn rescale_by_kappa(h: &XPoly, m: u32, kappa: &ParamScalar) -> Option<XPoly> {
    let four_kappa = kappa.scale(&RatFuncV::integer(4));
    let two_pow = RatFuncV::rational(Rational::new(1.into(), num_bigint::BigInt::from(2).pow(m)));
    let mut out = XPoly::zero();
    for (k, coeff) in h.terms() {
        if k > m || !(m - k).is_multiple_of(2) {
            return None;
        }
        let factor = four_kappa.pow((m - k) / 2).scale(&two_pow);
        out = &out + &XPoly::monomial(coeff * &factor, k);
    }
    Some(out)
}

/// Checks the scalar facts behind `w_m(x) = (2b_i)^{-m} H_m(b_i x; q_i^2)`
/// without ever forming `b_i`:
///
/// 1. `(m)_{q_i^2} (1 - q_i^2) = 1 - q_i^{2m}`;
/// 2. `κ = c/(1 - q_i^2)` becomes `c_i q_i / (q_i - q_i^{-1})^2` once `c` is
///    written through `c_i`;
/// 3. `w_m` equals the `κ`-rescaled `H_m(x; q_i^2)` coefficientwise.
pub fn wm_is_rescaled_hermite_check(m: u32, d: u32, c_i: &Symbol) -> bool {
    let qi = QBase::q_i(d);
    let geometric = &qnum_nonsym_base(m, qi.power(2)) * &(&RatFuncV::one() - &qi.pow(2));
    let first = geometric == &RatFuncV::one() - &qi.pow(2 * m as i32);

    let diff = &qi.pow(1) - &qi.pow(-1);
    let expected_kappa = ParamScalar::symbol(c_i).scale(&(&qi.pow(1) / &diff.pow(2)));
    let second = substitute_c(&kappa(d), c_i, d) == expected_kappa;

    let third = rescale_by_kappa(&hermite_rec(m, qi.power(2)), m, &kappa(d)).is_some_and(|p| p == wm_poly(m, d));
    first && second && third
}

/// `v_m(x) = (2b_i)^{-m} H_m(b_i x; q_i^{-2})` in the same `b`-free form.
pub fn vm_is_rescaled_hermite_check(m: u32, d: u32) -> bool {
    let base = QBase::q_i(d).power(-2);
    rescale_by_kappa(&hermite_rec(m, base), m, &kappa(d)).is_some_and(|p| p == vm_poly(m, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{qnum_nonsym, LaurentV};

    fn xn(n: u32) -> XPoly {
        XPoly::monomial(ParamScalar::one(), n)
    }

    #[test]
    fn small_w() {
        assert_eq!(wm_poly(0, 1), XPoly::one());
        assert_eq!(wm_poly(1, 1), XPoly::x());
        assert_eq!(wm_poly(2, 1), &xn(2) - &XPoly::constant(c()));
        for d in 1..=2 {
            let qi2 = ParamScalar::v_pow(4 * d as i32);
            let coeff = &ParamScalar::one() + &qnum_nonsym(2, &qi2);
            assert_eq!(wm_poly(3, d), &xn(3) - &XPoly::monomial(&coeff * &c(), 1));
        }
    }

    #[test]
    fn w4_matches_listed_form() {
        // x^4 - c(1 + (2) + (3)) x^2 + c^2 (3) with (k) = (k)_{q_i^2}
        let d = 1;
        let qi2 = ParamScalar::v_pow(4);
        let s = &(&ParamScalar::one() + &qnum_nonsym(2, &qi2)) + &qnum_nonsym(3, &qi2);
        let expect = &(&xn(4) - &XPoly::monomial(&s * &c(), 2)) + &XPoly::constant(&c().pow(2) * &qnum_nonsym(3, &qi2));
        assert_eq!(wm_poly(4, d), expect);
    }

    #[test]
    fn small_v() {
        assert_eq!(vm_poly(1, 1), XPoly::x());
        assert_eq!(vm_poly(2, 1), &xn(2) + &XPoly::constant(c().scale(&RatFuncV::v_pow(-4))));
        assert_eq!(vm_poly(2, 2), &xn(2) + &XPoly::constant(c().scale(&RatFuncV::v_pow(-8))));
    }

    #[test]
    fn v_from_w_by_substitution() {
        for d in 1..=2 {
            for m in 0..=8 {
                assert!(vm_wm_substitution_check(m, d), "m = {m}, d = {d}");
            }
        }
    }

    #[test]
    fn v_defining_sum() {
        for d in 1..=2 {
            for n in [0, 1, 2, 3, 7] {
                assert!(vm_defsum_check(n, d), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn divided_powers() {
        for d in 1..=2 {
            for m in 1..=6 {
                assert!(wm_divided_check(m, d), "m = {m}");
            }
        }
    }

    #[test]
    fn rescaled_hermite() {
        let ci = Symbol::new("c_i");
        for d in 1..=2 {
            for m in 0..=10 {
                assert!(wm_is_rescaled_hermite_check(m, d, &ci), "m = {m}, d = {d}");
            }
            for m in 0..=8 {
                assert!(vm_is_rescaled_hermite_check(m, d), "m = {m}, d = {d}");
            }
        }
        // the constant c/(1 - q_i^2), written through c_i, is +c_i q_i/(q_i - q_i^-1)^2
        let k = substitute_c(&kappa(1), &ci, 1);
        let qi = RatFuncV::v_pow(2);
        let diff: RatFuncV = (&LaurentV::v_pow(2) - &LaurentV::v_pow(-2)).into();
        assert_eq!(k, ParamScalar::symbol(&ci).scale(&(&qi / &diff.pow(2))));
    }

    #[test]
    fn parity() {
        for m in 0..=8 {
            assert!(wm_poly(m, 1).terms().all(|(e, _)| (e + m) % 2 == 0));
            assert!(vm_poly(m, 1).terms().all(|(e, _)| (e + m) % 2 == 0));
        }
    }
}
