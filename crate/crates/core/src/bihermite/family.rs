//! Bivariate continuous q-Hermite polynomials `H_{m,n}(x, y; q, r)`.

use std::collections::HashMap;

use serde::Serialize;

use super::poly::{Axis, XYPoly};
use crate::error::{Error, Result};
use crate::hermite::{hermite_rec, hermite_sequence, uni_genfun_coefficients};
use crate::qarith::{qfact_pochhammer, qpochhammer_series, sym_r, ParamScalar, QBase, RatFuncV, Rational};

fn r() -> ParamScalar {
    ParamScalar::symbol(&sym_r())
}

fn one_minus(base: QBase, k: i32) -> RatFuncV {
    &RatFuncV::one() - &base.pow(k)
}

/// Memoised evaluation where `choose(m, n)` decides which recursion produces
/// an interior cell. Boundary rows always use the only applicable one.
pub struct BihermiteBuilder<F> {
    base: QBase,
    choose: F,
    cache: HashMap<(u32, u32), XYPoly>,
}

impl<F: FnMut(u32, u32) -> Axis> BihermiteBuilder<F> {
    pub fn new(base: QBase, choose: F) -> Self {
        Self { base, choose, cache: HashMap::new() }
    }

    fn cell(&mut self, m: i64, n: i64) -> XYPoly {
        if m < 0 || n < 0 {
            return XYPoly::zero();
        }
        let (mu, nu) = (m as u32, n as u32);
        if let Some(p) = self.cache.get(&(mu, nu)) {
            return p.clone();
        }
        let value = if m == 0 && n == 0 {
            XYPoly::one()
        } else {
            let axis = match (m, n) {
                (0, _) => Axis::Y,
                (_, 0) => Axis::X,
                _ => (self.choose)(mu, nu),
            };
            self.raise(m, n, axis)
        };
        self.cache.insert((mu, nu), value.clone());
        value
    }

    /// `H_{m,n}` from the recursion that raises the index along `axis`.
    fn raise(&mut self, m: i64, n: i64, axis: Axis) -> XYPoly {
        let base = self.base;
        // rename so that the raised index is `a` and the other is `b`
        let (a, b) = match axis {
            Axis::X => (m - 1, n),
            Axis::Y => (n - 1, m),
        };
        let at = |s: &mut Self, a: i64, b: i64| match axis {
            Axis::X => s.cell(a, b),
            Axis::Y => s.cell(b, a),
        };
        let cur = at(self, a, b);
        let down_a = at(self, a - 1, b);
        let down_b = at(self, a, b - 1);
        let shifted = match axis {
            Axis::X => cur.mul_x(),
            Axis::Y => cur.mul_y(),
        };
        let cross = r().scale(&(&base.pow(a as i32) * &one_minus(base, b as i32)));
        &(&shifted.scale(&ParamScalar::integer(2)) - &down_a.scale_ratfunc(&one_minus(base, a as i32)))
            - &down_b.scale(&cross)
    }

    pub fn get(&mut self, m: u32, n: u32) -> XYPoly {
        self.cell(m as i64, n as i64)
    }
}

/// `H_{m,n}` in the canonical order: the row `H_{0,k}` by the `y`-recursion,
/// then `m` raised by the `x`-recursion.
pub fn bihermite_rec(m: u32, n: u32, base: QBase) -> XYPoly {
    BihermiteBuilder::new(base, |_, _| Axis::X).get(m, n)
}

/// All `H_{m,n}` with `m <= m_max`, `n <= n_max`, indexed `[m][n]`.
pub fn bihermite_table(m_max: u32, n_max: u32, base: QBase) -> Vec<Vec<XYPoly>> {
    let mut b = BihermiteBuilder::new(base, |_, _| Axis::X);
    (0..=m_max).map(|m| (0..=n_max).map(|n| b.get(m, n)).collect()).collect()
}

/// `(-1)^k q^{k(k-1)/2} (q;q)_m (q;q)_n r^k / ((q;q)_{m-k} (q;q)_{n-k} (q;q)_k)`.
fn expansion_coeff(m: u32, n: u32, k: u32, base: QBase) -> ParamScalar {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let num = &(&RatFuncV::integer(sign) * &base.pow((k * k.saturating_sub(1) / 2) as i32))
        * &(&qfact_pochhammer(m, base) * &qfact_pochhammer(n, base));
    let den = &(&qfact_pochhammer(m - k, base) * &qfact_pochhammer(n - k, base)) * &qfact_pochhammer(k, base);
    r().pow(k).scale(&(&num / &den))
}

/// `Σ_k (-1)^k q^{C(k,2)} (q;q)_m (q;q)_n r^k / (...) H_{m-k}(x) H_{n-k}(y)`.
pub fn bihermite_expand(m: u32, n: u32, base: QBase) -> XYPoly {
    let hs = hermite_sequence(m.max(n), base);
    (0..=m.min(n)).fold(XYPoly::zero(), |acc, k| {
        let term = XYPoly::tensor(&hs[(m - k) as usize], &hs[(n - k) as usize]);
        &acc + &term.scale(&expansion_coeff(m, n, k, base))
    })
}

/// `H_{m,n}(x, y) = H_{n,m}(y, x)`.
pub fn symmetry_check(m: u32, n: u32, base: QBase) -> bool {
    bihermite_rec(m, n, base).swap() == bihermite_rec(n, m, base)
}

/// Setting `r = 0` leaves `H_m(x) H_n(y)`.
pub fn r_zero_check(m: u32, n: u32, base: QBase) -> bool {
    let at_zero = bihermite_rec(m, n, base).substitute(&sym_r(), &ParamScalar::zero());
    at_zero == XYPoly::tensor(&hermite_rec(m, base), &hermite_rec(n, base))
}

/// Coefficients of `s^m t^n` (`m + n <= N`) of
/// `(rst; q)_∞ / |(s e^{iθ}, t e^{iφ}; q)_∞|^2`, indexed `[m][n]`.
pub fn biv_genfun_coefficients(n_max: u32, base: QBase) -> Result<Vec<Vec<XYPoly>>> {
    let alpha = qpochhammer_series(n_max / 2, base);
    let ux = uni_genfun_coefficients(n_max, base)?;
    let mut out = vec![vec![XYPoly::zero(); n_max as usize + 1]; n_max as usize + 1];
    for m in 0..=n_max {
        for n in 0..=n_max - m {
            let mut acc = XYPoly::zero();
            for k in 0..=m.min(n) {
                let term = XYPoly::tensor(&ux[(m - k) as usize], &ux[(n - k) as usize]);
                acc = &acc + &term.scale(&r().pow(k).scale(&alpha[k as usize]));
            }
            out[m as usize][n as usize] = acc;
        }
    }
    Ok(out)
}

pub fn genfun_check_biv(n_max: u32, base: QBase) -> Result<bool> {
    let coeffs = biv_genfun_coefficients(n_max, base)?;
    let table = bihermite_table(n_max, n_max, base);
    for m in 0..=n_max {
        for n in 0..=n_max - m {
            let norm = (&qfact_pochhammer(m, base) * &qfact_pochhammer(n, base)).recip()?;
            if coeffs[m as usize][n as usize] != table[m as usize][n as usize].scale_ratfunc(&norm) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of comparing `D_q H_{m,n}` with both printed exponent variants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DqRelationReport {
    pub m: u32,
    pub n: u32,
    pub axis: &'static str,
    /// The factor `2 q^{-(k-1)/2} (1 - q^k)/(1 - q)`.
    pub half_exponent_holds: bool,
    /// The factor `2 q^{-(k-1)} (1 - q^k)/(1 - q)`.
    pub full_exponent_holds: bool,
}

impl DqRelationReport {
    pub fn holds(&self) -> bool {
        self.half_exponent_holds || self.full_exponent_holds
    }
}

/// `D_{q,x} H_{m,n}(r) = 2 q^{-e(m-1)} (1 - q^m)/(1 - q) H_{m-1,n}(√q r)` for
/// `e = 1/2` and `e = 1`; the mirror statement for the `y`-axis.
pub fn dq_relation_check(m: u32, n: u32, axis: Axis, base: QBase) -> Result<DqRelationReport> {
    let h = base.half_exp()?;
    let k = match axis {
        Axis::X => m,
        Axis::Y => n,
    };
    if k == 0 {
        return Err(Error::Precondition("the differentiated index must be at least 1".into()));
    }
    let lhs = bihermite_rec(m, n, base).dq(axis, base)?;
    let (lm, ln) = match axis {
        Axis::X => (m - 1, n),
        Axis::Y => (m, n - 1),
    };
    let sqrt_q_r = r().scale(&RatFuncV::v_pow(h));
    let lowered = bihermite_rec(lm, ln, base).substitute(&sym_r(), &sqrt_q_r);
    let common = &(&RatFuncV::integer(2) * &one_minus(base, k as i32)) / &one_minus(base, 1);
    let variant = |num: i32| lowered.scale_ratfunc(&(&common * &RatFuncV::v_pow(-num * h * (k as i32 - 1))));
    Ok(DqRelationReport {
        m,
        n,
        axis: match axis {
            Axis::X => "x",
            Axis::Y => "y",
        },
        half_exponent_holds: lhs == variant(1),
        full_exponent_holds: lhs == variant(2),
    })
}

/// `Σ_{k<=min(m,n)} (-q^{(m+n)/2-1} ((1-q)/2)^2 r)^k / (q;q)_k D_{q,x}^k D_{q,y}^k H_m(x) H_n(y)`.
pub fn operator_formulation(m: u32, n: u32, base: QBase) -> Result<XYPoly> {
    let h = base.half_exp()?;
    let half = RatFuncV::rational(Rational::new(1.into(), 2.into()));
    let quarter_sq = (&one_minus(base, 1) * &half).pow(2);
    let step = r().scale(&(&(&RatFuncV::integer(-1) * &RatFuncV::v_pow(h * (m + n) as i32 - 2 * h)) * &quarter_sq));
    let mut cur = XYPoly::tensor(&hermite_rec(m, base), &hermite_rec(n, base));
    let mut out = XYPoly::zero();
    for k in 0..=m.min(n) + 1 {
        if k > 0 {
            cur = cur.dq_x(base)?.dq_y(base)?;
        }
        if k > m.min(n) {
            // one step past the range must already vanish
            if !cur.is_zero() {
                return Err(Error::Precondition("D-powers did not annihilate".into()));
            }
            break;
        }
        let coeff = step.pow(k).scale(&qfact_pochhammer(k, base).recip()?);
        out = &out + &cur.scale(&coeff);
    }
    Ok(out)
}

pub fn operator_formulation_check(m: u32, n: u32, base: QBase) -> Result<bool> {
    Ok(operator_formulation(m, n, base)? == bihermite_rec(m, n, base))
}
