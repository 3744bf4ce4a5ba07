//! Floating-point checks of the orthogonality measure, the norm constants
//! `c_{m,n}` and the modified Askey–Wilson integral.

mod askey;
mod gram;
mod quad;

pub use askey::{askey_wilson_closed_form, askey_wilson_mod_check, askey_wilson_quadrature, AskeyWilsonReport};
pub use gram::{cmn_exact, cmn_norm, gram_matrix, positivity_check, GramReport};
pub use quad::{nodes, QuadRule};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 256;
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericParams {
    pub q: f64,
    pub r: f64,
    pub product_tol: f64,
    pub grid: usize,
    pub quad_rule: QuadRule,
}

impl NumericParams {
    /// Defaults: Gauss–Legendre, 256 nodes per axis, product tolerance `1e-16`.
    pub fn new(q: f64, r: f64) -> Result<Self> {
        Self { q, r, product_tol: DEFAULT_PRODUCT_TOL, grid: DEFAULT_GRID, quad_rule: QuadRule::GaussLegendre }
            .validated()
    }

    pub fn with_grid(self, grid: usize) -> Result<Self> {
        Self { grid, ..self }.validated()
    }

    pub fn with_rule(self, quad_rule: QuadRule) -> Result<Self> {
        Self { quad_rule, ..self }.validated()
    }

    pub fn with_product_tol(self, product_tol: f64) -> Result<Self> {
        Self { product_tol, ..self }.validated()
    }

    fn validated(self) -> Result<Self> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::Precondition(format!("q must lie in (0, 1), got {}", self.q)));
        }
        if self.r.is_nan() || self.r <= 1.0 {
            return Err(Error::Precondition(format!("r must exceed 1, got {}", self.r)));
        }
        if self.grid < 64 {
            return Err(Error::Precondition(format!("grid must be at least 64, got {}", self.grid)));
        }
        if self.product_tol.is_nan() || self.product_tol <= 0.0 {
            return Err(Error::Precondition("product tolerance must be positive".into()));
        }
        Ok(self)
    }
}

/// `(a; q)_∞`, truncated once the next factor differs from 1 by less than `tol`.
pub fn pochhammer_inf(a: Complex64, q: f64, tol: f64) -> Result<Complex64> {
    if q.abs() >= 1.0 {
        return Err(Error::Precondition(format!("|q| must be below 1, got {q}")));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut term = a;
    while term.norm() >= tol {
        acc *= Complex64::new(1.0, 0.0) - term;
        term *= q;
    }
    Ok(acc)
}

pub fn pochhammer_inf_num(a: Complex64, params: &NumericParams) -> Complex64 {
    pochhammer_inf(a, params.q, params.product_tol).expect("validated q")
}

/// `|(e^{2iθ}/r; q)_∞|^2`.
pub fn weight_eval(theta: f64, params: &NumericParams) -> f64 {
    let z = Complex64::from_polar(1.0 / params.r, 2.0 * theta);
    pochhammer_inf_num(z, params).norm_sqr()
}

/// `(q; q)_∞` as a real number.
pub fn q_q_inf(params: &NumericParams) -> f64 {
    pochhammer_inf_num(Complex64::new(params.q, 0.0), params).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(NumericParams::new(0.5, 2.0).is_ok());
        assert!(NumericParams::new(1.0, 2.0).is_err());
        assert!(NumericParams::new(0.5, 1.0).is_err());
        assert!(NumericParams::new(0.5, 2.0).unwrap().with_grid(32).is_err());
    }

    #[test]
    fn pochhammer_values() {
        let p = NumericParams::new(0.5, 2.0).unwrap();
        assert_eq!(pochhammer_inf_num(Complex64::new(0.0, 0.0), &p), Complex64::new(1.0, 0.0));
        // 60-factor product at q = 1/2
        let oracle: f64 = (1..=60).map(|k| 1.0 - 0.5f64.powi(k)).product();
        assert!((q_q_inf(&p) - oracle).abs() < 1e-15);
        assert!((q_q_inf(&p) - 0.2887880951).abs() < 1e-10);
        let a = Complex64::new(0.3, -0.4);
        let lhs = pochhammer_inf_num(a, &p);
        let rhs = (Complex64::new(1.0, 0.0) - a) * pochhammer_inf_num(a * 0.5, &p);
        assert!((lhs - rhs).norm() < 1e-15);
        assert!(pochhammer_inf(a, 1.0, 1e-16).is_err());
    }

    #[test]
    fn weight_properties() {
        let p = NumericParams::new(0.5, 2.0).unwrap();
        let half = pochhammer_inf_num(Complex64::new(0.5, 0.0), &p).norm_sqr();
        assert!((weight_eval(0.0, &p) - half).abs() < 1e-15);
        for t in [0.3, 1.1, 2.9] {
            assert!((weight_eval(t, &p) - weight_eval(-t, &p)).abs() < 1e-14);
        }
        let far = NumericParams::new(0.5, 1e12).unwrap();
        assert!((weight_eval(0.7, &far) - 1.0).abs() < 1e-10);
    }
}
