//! Exact coefficient arithmetic.
//!
//! The scalar tower is `Q` → Laurent polynomials in `v` → reduced fractions of
//! those → polynomials in parameter symbols. The deformation parameter is
//! `q = v^2`.

mod laurent;
mod param;
mod qnum;
mod ratfunc;

pub use laurent::LaurentV;
pub use param::{Monomial, ParamScalar, Symbol};
pub use qnum::{
    c_in_terms_of, qbinom_alternating_sides, qbinom_alternating_sum, qbinomial, qfact_pochhammer,
    qfactorial, qi_minus_inverse, qnum_nonsym, qnum_nonsym_base, qnum_symmetric,
    qpochhammer_finite, qpochhammer_q, qpochhammer_series, series_reciprocal, substitute_c, sym_c,
    sym_r, QBase,
};
pub use ratfunc::RatFuncV;

pub(crate) use param::join_signed;

/// Arbitrary-precision rationals, always stored in lowest terms.
pub type Rational = num_rational::BigRational;
