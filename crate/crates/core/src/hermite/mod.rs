//! Continuous q-Hermite polynomials and the families `w_m`, `v_m`.

mod family;
mod poly;
mod wv;

pub use family::*;
pub use poly::{x_to_z, z_to_x, SymLaurent, XPoly};
pub(crate) use poly::{render_latex, render_text};
pub use wv::*;
