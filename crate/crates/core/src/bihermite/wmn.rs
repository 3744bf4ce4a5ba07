//! The bivariate family `w_{m,n}(x, y)` for a pair `τ(i) = i ≠ j`, determined
//! by the symmetrizer `d = d_i` and the Cartan entry `a = a_ij`.

use std::collections::HashMap;

use super::family::bihermite_rec;
use super::poly::XYPoly;
use crate::hermite::{kappa, vm_sequence, wm_sequence};
use crate::qarith::{
    qbinomial, qfactorial, qnum_nonsym_base, sym_c, sym_r, ParamScalar, QBase, RatFuncV, Rational,
};

fn c() -> ParamScalar {
    ParamScalar::symbol(&sym_c())
}

/// Coefficients of the recursion raising `m`:
/// `x w_{m,n} = w_{m+1,n} + c (m)_{q_i^2} w_{m-1,n} + c q_i^{2m+a} (n)_{q_i^2} w_{m,n-1}`.
fn rec_coeffs(own: u32, other: u32, d: u32, a: i32) -> (ParamScalar, ParamScalar) {
    let qi = QBase::q_i(d);
    let qi2 = qi.power(2);
    let down = c().scale(&qnum_nonsym_base(own, qi2));
    let cross = c().scale(&(&qi.pow(2 * own as i32 + a) * &qnum_nonsym_base(other, qi2)));
    (down, cross)
}

struct WmnBuilder {
    d: u32,
    a: i32,
    cache: HashMap<(u32, u32), XYPoly>,
}

impl WmnBuilder {
    fn cell(&mut self, m: i64, n: i64) -> XYPoly {
        if m < 0 || n < 0 {
            return XYPoly::zero();
        }
        if let Some(p) = self.cache.get(&(m as u32, n as u32)) {
            return p.clone();
        }
        let value = if m == 0 && n == 0 {
            XYPoly::one()
        } else if m == 0 {
            // y-recursion along the first row
            let (down, cross) = rec_coeffs((n - 1) as u32, 0, self.d, self.a);
            let prev = self.cell(0, n - 1);
            &(&prev.mul_y() - &self.cell(0, n - 2).scale(&down)) - &self.cell(-1, n - 1).scale(&cross)
        } else {
            let (down, cross) = rec_coeffs((m - 1) as u32, n as u32, self.d, self.a);
            let prev = self.cell(m - 1, n);
            &(&prev.mul_x() - &self.cell(m - 2, n).scale(&down)) - &self.cell(m - 1, n - 1).scale(&cross)
        };
        self.cache.insert((m as u32, n as u32), value.clone());
        value
    }
}

/// `w_{m,n}` for all `m <= m_max`, `n <= n_max`, indexed `[m][n]`.
pub fn wmn_table(m_max: u32, n_max: u32, d: u32, a: i32) -> Vec<Vec<XYPoly>> {
    let mut b = WmnBuilder { d, a, cache: HashMap::new() };
    (0..=m_max).map(|m| (0..=n_max).map(|n| b.cell(m as i64, n as i64)).collect()).collect()
}

pub fn wmn_poly(m: u32, n: u32, d: u32, a: i32) -> XYPoly {
    wmn_table(m, n, d, a).pop().unwrap().pop().unwrap()
}

/// Checks both recursions and the symmetry `w_{m,n}(x,y) = w_{n,m}(y,x)` for
/// `m + n <= N`.
pub fn wmn_recursions_check(n_max: u32, d: u32, a: i32) -> bool {
    let t = wmn_table(n_max + 1, n_max + 1, d, a);
    let at = |m: i64, n: i64| if m < 0 || n < 0 { XYPoly::zero() } else { t[m as usize][n as usize].clone() };
    for m in 0..=n_max as i64 {
        for n in 0..=(n_max as i64 - m) {
            let (dx, cx) = rec_coeffs(m as u32, n as u32, d, a);
            let x_rhs = &(&at(m + 1, n) + &at(m - 1, n).scale(&dx)) + &at(m, n - 1).scale(&cx);
            let (dy, cy) = rec_coeffs(n as u32, m as u32, d, a);
            let y_rhs = &(&at(m, n + 1) + &at(m, n - 1).scale(&dy)) + &at(m - 1, n).scale(&cy);
            if at(m, n).mul_x() != x_rhs || at(m, n).mul_y() != y_rhs || at(m, n).swap() != at(n, m) {
                return false;
            }
        }
    }
    true
}

/// `Σ_k (-1)^k c^k q_i^{k(m+n+a-1) - k(k+1)/2} [m k] [n k] [k]! w_{m-k}(x) w_{n-k}(y)`.
pub fn wmn_mixed_expansion(m: u32, n: u32, d: u32, a: i32) -> XYPoly {
    let qi = QBase::q_i(d);
    let ws = wm_sequence(m.max(n), d);
    (0..=m.min(n)).fold(XYPoly::zero(), |acc, k| {
        let ki = k as i32;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let exp = ki * (m as i32 + n as i32 + a - 1) - ki * (ki + 1) / 2;
        let scalar = &(&(&RatFuncV::integer(sign) * &qi.pow(exp)) * &qbinomial(m, k, d).expect("k <= m"))
            * &(&qbinomial(n, k, d).expect("k <= n") * &qfactorial(k, d));
        let term = XYPoly::tensor(&ws[(m - k) as usize], &ws[(n - k) as usize]);
        &acc + &term.scale(&c().pow(k).scale(&scalar))
    })
}

pub fn wmn_mixed_expansion_check(m: u32, n: u32, d: u32, a: i32) -> bool {
    wmn_mixed_expansion(m, n, d, a) == wmn_poly(m, n, d, a)
}

/// `w_{m,n}(x,y) = (2b_i)^{-(m+n)} H_{m,n}(b_i x, b_i y; q_i^2, q_i^a)` in
/// `b`-free form: the coefficient of `x^s y^t` is
/// `2^{-(m+n)} (4κ)^{(m+n-s-t)/2}` times that of `H_{m,n}`, with `κ = c/(1 - q_i^2)`.
pub fn wmn_is_rescaled_bihermite_check(m: u32, n: u32, d: u32, a: i32) -> bool {
    let qi = QBase::q_i(d);
    let h = bihermite_rec(m, n, qi.power(2)).substitute(&sym_r(), &ParamScalar::from(qi.pow(a)));
    let four_kappa = kappa(d).scale(&RatFuncV::integer(4));
    let total = m + n;
    let two_pow = RatFuncV::rational(Rational::new(1.into(), num_bigint::BigInt::from(2).pow(total)));
    let mut rescaled = XYPoly::zero();
    for ((s, t), coeff) in h.terms() {
        if s + t > total || !(total - s - t).is_multiple_of(2) {
            return false;
        }
        let factor = four_kappa.pow((total - s - t) / 2).scale(&two_pow);
        rescaled = &rescaled + &XYPoly::monomial(coeff * &factor, s, t);
    }
    rescaled == wmn_poly(m, n, d, a)
}

/// `Σ_n (-1)^n [1-a n] w_{1-a-n,n}(x,y)`.
pub fn serre_sum_bivariate(d: u32, a: i32) -> XYPoly {
    let top = (1 - a) as u32;
    let t = wmn_table(top, top, d, a);
    (0..=top).fold(XYPoly::zero(), |acc, n| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let coeff = &RatFuncV::integer(sign) * &qbinomial(top, n, d).expect("n <= top");
        &acc + &t[(top - n) as usize][n as usize].scale_ratfunc(&coeff)
    })
}

/// `Σ_ℓ (-1)^ℓ [1-a ℓ] w_{1-a-ℓ}(x) v_ℓ(y)`.
pub fn serre_sum_resummed(d: u32, a: i32) -> XYPoly {
    let top = (1 - a) as u32;
    let ws = wm_sequence(top, d);
    let vs = vm_sequence(top, d);
    (0..=top).fold(XYPoly::zero(), |acc, l| {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let coeff = &RatFuncV::integer(sign) * &qbinomial(top, l, d).expect("l <= top");
        &acc + &XYPoly::tensor(&ws[(top - l) as usize], &vs[l as usize]).scale_ratfunc(&coeff)
    })
}

pub fn resummation_check(d: u32, a: i32) -> bool {
    serre_sum_bivariate(d, a) == serre_sum_resummed(d, a)
}
