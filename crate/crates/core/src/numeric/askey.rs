use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::quad::nodes;
use super::{pochhammer_inf_num, NumericParams};
use crate::error::{Error, Result};

pub const ASKEY_WILSON_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct AskeyWilsonReport {
    pub params: NumericParams,
    pub quadrature: f64,
    pub closed_form: f64,
    pub rel_err: f64,
    pub passed: bool,
}

fn check_precondition(abcd: [Complex64; 4], params: &NumericParams) -> Result<()> {
    let m = abcd.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if params.r <= m * m {
        return Err(Error::Precondition(format!("r = {} must exceed max(|a|,|b|,|c|,|d|)^2 = {}", params.r, m * m)));
    }
    Ok(())
}

/// `∫_{-π}^{π} |(e^{2iθ}/r; q)_∞|^2 / |(a e^{iθ}, b e^{iθ}, c e^{iθ}, d e^{iθ}; q)_∞|^2 dθ`.
pub fn askey_wilson_quadrature(abcd: [Complex64; 4], params: &NumericParams) -> Result<f64> {
    check_precondition(abcd, params)?;
    let total = nodes(params.quad_rule, params.grid, -PI, PI)
        .into_iter()
        .map(|(t, w)| {
            let z = Complex64::from_polar(1.0, t);
            let num = pochhammer_inf_num(z * z / params.r, params).norm_sqr();
            let den: f64 = abcd.iter().map(|a| pochhammer_inf_num(a * z, params).norm_sqr()).product();
            w * num / den
        })
        .sum();
    Ok(total)
}

/// `4π (abcd r^2; q)_∞ / (abr, acr, adr, bcr, bdr, cdr, q; q)_∞`.
pub fn askey_wilson_closed_form(abcd: [Complex64; 4], params: &NumericParams) -> Result<f64> {
    check_precondition(abcd, params)?;
    let [a, b, c, d] = abcd;
    let r = params.r;
    let p = |z: Complex64| pochhammer_inf_num(z, params);
    let num = p(a * b * c * d * r * r);
    let den = p(a * b * r) * p(a * c * r) * p(a * d * r) * p(b * c * r) * p(b * d * r) * p(c * d * r)
        * p(Complex64::new(params.q, 0.0));
    Ok((Complex64::new(4.0 * PI, 0.0) * num / den).re)
}

pub fn askey_wilson_mod_check(abcd: [Complex64; 4], params: &NumericParams) -> Result<AskeyWilsonReport> {
    let quadrature = askey_wilson_quadrature(abcd, params)?;
    let closed_form = askey_wilson_closed_form(abcd, params)?;
    let rel_err = (quadrature - closed_form).abs() / closed_form.abs();
    Ok(AskeyWilsonReport { params: *params, quadrature, closed_form, rel_err, passed: rel_err < ASKEY_WILSON_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(xs: [f64; 4]) -> [Complex64; 4] {
        xs.map(|x| Complex64::new(x, 0.0))
    }

    #[test]
    fn precondition() {
        let p = NumericParams::new(0.5, 2.0).unwrap();
        assert!(askey_wilson_mod_check(real([1.5, 0.0, 0.0, 0.0]), &p).is_err());
    }

    #[test]
    fn quadrature_matches_constant_term_series() {
        // at a = b = c = d = 0 the integral is 2π Σ_n q^{n(n-1)} r^{-2n} / (q;q)_n^2
        for r in [1.5, 2.0, 4.0] {
            let p = NumericParams::new(0.5, r).unwrap();
            let series: f64 = (0..40)
                .map(|n: i32| {
                    let qq: f64 = (1..=n).map(|k| 1.0 - 0.5f64.powi(k)).product();
                    0.5f64.powi(n * (n - 1)) * r.powi(-2 * n) / (qq * qq)
                })
                .sum();
            let quad = askey_wilson_quadrature(real([0.0; 4]), &p).unwrap();
            assert!((quad - 2.0 * PI * series).abs() < 1e-10 * quad, "r = {r}");
        }
    }
}
