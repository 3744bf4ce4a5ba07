//! Exact construction and verification of bivariate continuous q-Hermite
//! polynomials and of the deformed quantum Serre relations of quasi-split
//! quantum symmetric pairs.
//!
//! - [`qarith`]: rationals, Laurent polynomials in `v` (`q = v^2`), rational
//!   functions and parameter polynomials, plus q-combinatorics.
//! - [`hermite`]: univariate continuous q-Hermite polynomials, the operator
//!   `D_q`, and the families `w_m`, `v_m`.
//! - [`bihermite`]: the bivariate polynomials `H_{m,n}(x,y;q,r)` and `w_{m,n}`.
//! - [`numeric`]: floating-point checks of the orthogonality measure.
//! - [`qsp`]: the free algebra with torus, the star product and the deformed
//!   Serre relations.

pub mod bihermite;
pub mod error;
pub mod hermite;
pub mod numeric;
pub mod qarith;
pub mod qsp;

pub use error::{Error, Result};
