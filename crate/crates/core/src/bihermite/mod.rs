//! Bivariate continuous q-Hermite polynomials and the family `w_{m,n}`.

mod family;
mod poly;
mod wmn;

pub use family::*;
pub use poly::{Axis, XYPoly};
pub use wmn::*;
