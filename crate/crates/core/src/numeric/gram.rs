use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::quad::nodes;
use super::{q_q_inf, weight_eval, NumericParams};
use crate::bihermite::bihermite_table;
use crate::error::{Error, Result};
use crate::qarith::{qfact_pochhammer, sym_r, ParamScalar, QBase, RatFuncV};

/// Relative change allowed when the grid is doubled.
pub const REFINEMENT_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub params: NumericParams,
    /// Row/column labels `(m, n)`.
    pub indices: Vec<(u32, u32)>,
    /// `I_{m,n,m~,n~}` in label order.
    pub entries: Vec<Vec<f64>>,
    pub diag: Vec<f64>,
    /// `c_{m,n}` from the closed-form sum.
    pub predicted: Vec<f64>,
    /// Largest off-diagonal magnitude divided by the largest diagonal magnitude.
    pub max_offdiag: f64,
    /// Largest `|I_{m,n,m,n} - c_{m,n}| / c_{m,n}`.
    pub max_rel_err: f64,
    /// Relative change of all entries under grid doubling.
    pub refinement_delta: f64,
    pub converged: bool,
}

type NumPoly = Vec<((u32, u32), f64)>;

fn specialize(p: &crate::bihermite::XYPoly, params: &NumericParams) -> NumPoly {
    let v = params.q.sqrt();
    let symbols = HashMap::from([("r".to_string(), params.r)]);
    p.terms().map(|(k, c)| (k, c.eval(v, &symbols))).collect()
}

fn eval_num(p: &NumPoly, xp: &[f64], yp: &[f64]) -> f64 {
    p.iter().map(|((a, b), c)| c * xp[*a as usize] * yp[*b as usize]).sum()
}

fn powers(x: f64, n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        out.push(acc);
        acc *= x;
    }
    out
}

/// `∫_0^π ∫_0^π H_{m,n}(u,v) H_{m~,n~}(v,u) |(e^{2iθ}/r; q)_∞|^2 dθ dφ` with
/// `u = cos(θ+φ)`, `v = cos(θ-φ)`.
fn gram_entries(polys: &[NumPoly], maxdeg: u32, params: &NumericParams, grid: usize) -> Vec<Vec<f64>> {
    let k = polys.len();
    let pts = nodes(params.quad_rule, grid, 0.0, PI);
    let weights: Vec<f64> = pts.iter().map(|(t, _)| weight_eval(*t, params)).collect();
    let mut out = vec![vec![0.0; k]; k];
    let mut left = vec![0.0; k];
    let mut right = vec![0.0; k];
    for (ti, (theta, wt)) in pts.iter().enumerate() {
        for (phi, wp) in &pts {
            let u = (theta + phi).cos();
            let v = (theta - phi).cos();
            let (up, vp) = (powers(u, maxdeg), powers(v, maxdeg));
            for (a, p) in polys.iter().enumerate() {
                left[a] = eval_num(p, &up, &vp);
                right[a] = eval_num(p, &vp, &up);
            }
            let w = wt * wp * weights[ti];
            for a in 0..k {
                let la = w * left[a];
                for b in 0..k {
                    out[a][b] += la * right[b];
                }
            }
        }
    }
    out
}

/// Gram matrix over `0 <= m, n <= maxdeg`, with a grid-doubling refinement check.
pub fn gram_matrix(maxdeg: u32, params: &NumericParams) -> Result<GramReport> {
    if maxdeg > 4 {
        return Err(Error::Precondition("gram_matrix supports maxdeg <= 4".into()));
    }
    let table = bihermite_table(maxdeg, maxdeg, QBase::Q);
    let indices: Vec<(u32, u32)> = (0..=maxdeg).flat_map(|m| (0..=maxdeg).map(move |n| (m, n))).collect();
    let polys: Vec<NumPoly> = indices.iter().map(|(m, n)| specialize(&table[*m as usize][*n as usize], params)).collect();

    let entries = gram_entries(&polys, maxdeg, params, params.grid);
    let finer = gram_entries(&polys, maxdeg, params, 2 * params.grid);
    let scale = finer.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(f64::MIN_POSITIVE);
    let refinement_delta = entries
        .iter()
        .flatten()
        .zip(finer.iter().flatten())
        .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
        / scale;

    let diag: Vec<f64> = (0..indices.len()).map(|a| entries[a][a]).collect();
    let predicted: Vec<f64> = indices.iter().map(|(m, n)| cmn_norm(*m, *n, params)).collect();
    let max_diag = diag.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut max_off = 0.0f64;
    for (a, row) in entries.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            if a != b {
                max_off = max_off.max(x.abs());
            }
        }
    }
    let max_rel_err = diag.iter().zip(&predicted).fold(0.0f64, |a, (d, c)| a.max((d - c).abs() / c.abs()));
    Ok(GramReport {
        params: *params,
        indices,
        entries,
        diag,
        predicted,
        max_offdiag: max_off / max_diag,
        max_rel_err,
        refinement_delta,
        converged: refinement_delta < REFINEMENT_TOL,
    })
}

fn qq_float(n: u32, q: f64) -> f64 {
    (1..=n as i32).map(|k| 1.0 - q.powi(k)).product()
}

/// `c_{m,n} = 2π^2/(q;q)_∞ Σ_{i+k+ℓ=m, j+k+ℓ=n} (-1)^k q^{C(k,2)} (q;q)_m^2 (q;q)_n^2 r^{m+n} / ((q;q)_i (q;q)_j (q;q)_k (q;q)_ℓ^2)`.
pub fn cmn_norm(m: u32, n: u32, params: &NumericParams) -> f64 {
    let q = params.q;
    let mut sum = 0.0;
    for k in 0..=m.min(n) {
        for l in 0..=m.min(n) - k {
            let (i, j) = (m - k - l, n - k - l);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let num = sign * q.powi((k * k.saturating_sub(1) / 2) as i32) * (qq_float(m, q) * qq_float(n, q)).powi(2);
            let den = qq_float(i, q) * qq_float(j, q) * qq_float(k, q) * qq_float(l, q).powi(2);
            sum += num / den;
        }
    }
    2.0 * PI * PI / q_q_inf(params) * sum * params.r.powi((m + n) as i32)
}

/// The finite sum in `c_{m,n}` as an exact polynomial in `r` over `Q(v)`;
/// `c_{m,n} = 2π^2/(q;q)_∞` times this value.
pub fn cmn_exact(m: u32, n: u32) -> ParamScalar {
    let base = QBase::Q;
    let f = |k: u32| qfact_pochhammer(k, base);
    let mut sum = RatFuncV::zero();
    for k in 0..=m.min(n) {
        for l in 0..=m.min(n) - k {
            let (i, j) = (m - k - l, n - k - l);
            let sign = RatFuncV::integer(if k % 2 == 0 { 1 } else { -1 });
            let num = &(&sign * &base.pow((k * k.saturating_sub(1) / 2) as i32)) * &(&f(m) * &f(n)).pow(2);
            let den = &(&(&f(i) * &f(j)) * &f(k)) * &f(l).pow(2);
            sum = &sum + &(&num / &den);
        }
    }
    ParamScalar::symbol(&sym_r()).pow(m + n).scale(&sum)
}

/// Every `c_{m,n}` with `m, n <= maxdeg` is strictly positive at each sample.
pub fn positivity_check(maxdeg: u32, samples: &[NumericParams]) -> bool {
    samples
        .iter()
        .all(|p| (0..=maxdeg).all(|m| (0..=maxdeg).all(|n| cmn_norm(m, n, p) > 0.0)))
}
