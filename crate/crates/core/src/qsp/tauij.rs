use super::ncelem::{NCElem, Torus};
use super::serre::{serre_poly, serre_poly_star};
use super::star::{star_mul, star_power};
use super::CartanDatum;
use crate::error::{Error, Result};
use crate::qarith::{qbinomial, qi_minus_inverse, qnum_nonsym_base, qpochhammer_q, ParamScalar, QBase, RatFuncV};

/// Requires `τ(i) = j ≠ i`; returns `(d_i, a_ij)`.
fn swapped_pair(datum: &CartanDatum, i: usize, j: usize) -> Result<(u32, i32)> {
    if i >= datum.rank() || j >= datum.rank() || i == j || datum.tau(i) != j {
        return Err(Error::Precondition("requires tau(i) = j with i != j".into()));
    }
    Ok((datum.d(i), datum.a(i, j)))
}

/// `γ_k = -c_k q_i^{a_ij} / (q_i - q_i^{-1})` for `k ∈ {i, j}`.
pub fn gamma(datum: &CartanDatum, i: usize, j: usize, k: usize) -> Result<ParamScalar> {
    let (d, a) = swapped_pair(datum, i, j)?;
    let c = ParamScalar::symbol(datum.c_symbol(k)).scale(&QBase::q_i(d).pow(a));
    Ok(-c.div_ratfunc(&qi_minus_inverse(d))?)
}

fn fi_power_torus(i: usize, e: u32, t: Torus, c: ParamScalar) -> NCElem {
    NCElem::term(c, vec![i; e as usize], t)
}

/// `F_i^m F_j F_i^n = F_i^{⊛m} ⊛ F_j ⊛ F_i^{⊛n}
///   - γ_i q_i^{n(2-a)} (m)_{q_i^2} F_i^{m+n-1} K_j K_i^{-1}
///   - γ_j q_i^{(n-1)(a-2)} (n)_{q_i^2} F_i^{m+n-1} K_i K_j^{-1}`.
pub fn verify_tau_ij_expansion(datum: &CartanDatum, m: u32, n: u32, i: usize, j: usize) -> Result<bool> {
    let (d, a) = swapped_pair(datum, i, j)?;
    let qi = QBase::q_i(d);
    let fi = NCElem::letter(i);
    let star = star_mul(
        datum,
        &star_mul(datum, &star_power(datum, &fi, m), &NCElem::letter(j)),
        &star_power(datum, &fi, n),
    );
    let mut rhs = star;
    if m + n > 0 {
        let ci = gamma(datum, i, j, i)?.scale(&(&qi.pow(n as i32 * (2 - a)) * &qnum_nonsym_base(m, qi.power(2))));
        let cj = gamma(datum, i, j, j)?
            .scale(&(&qi.pow((n as i32 - 1) * (a - 2)) * &qnum_nonsym_base(n, qi.power(2))));
        rhs = &rhs - &fi_power_torus(i, m + n - 1, Torus::ratio(j, i), ci);
        rhs = &rhs - &fi_power_torus(i, m + n - 1, Torus::ratio(i, j), cj);
    }
    let mut lhs = vec![i; m as usize];
    lhs.push(j);
    lhs.extend(std::iter::repeat_n(i, n as usize));
    Ok(rhs == NCElem::word(lhs))
}

/// `F_j ⊛ F_i^n = F_j F_i^n + γ_j q_i^{(n-1)(a-2)} (n)_{q_i^2} F_i^{n-1} K_i K_j^{-1}`.
pub fn verify_fj_star_fi_power(datum: &CartanDatum, n: u32, i: usize, j: usize) -> Result<bool> {
    let (d, a) = swapped_pair(datum, i, j)?;
    let qi = QBase::q_i(d);
    let lhs = star_mul(datum, &NCElem::letter(j), &NCElem::word(vec![i; n as usize]));
    let mut w = vec![j];
    w.extend(std::iter::repeat_n(i, n as usize));
    let mut rhs = NCElem::word(w);
    if n > 0 {
        let c = gamma(datum, i, j, j)?.scale(&(&qi.pow((n as i32 - 1) * (a - 2)) * &qnum_nonsym_base(n, qi.power(2))));
        rhs = &rhs + &fi_power_torus(i, n - 1, Torus::ratio(i, j), c);
    }
    Ok(lhs == rhs)
}

/// Both alternating sums and their closed forms, for `q_i = q^d`.
pub fn sum_identity_sides(a: i32, d: u32) -> [(RatFuncV, RatFuncV); 2] {
    let top = (1 - a) as u32;
    let qi = QBase::q_i(d);
    let qi2 = qi.power(2);
    let mut s1 = RatFuncV::zero();
    let mut s2 = RatFuncV::zero();
    for n in 0..=top {
        let sign = RatFuncV::integer(if n % 2 == 0 { 1 } else { -1 });
        let b = &sign * &qbinomial(top, n, d).expect("n <= top");
        s1 = &s1 + &(&(&b * &qi.pow(n as i32 * (2 - a))) * &qnum_nonsym_base(top - n, qi2));
        s2 = &s2 + &(&(&b * &qi.pow(n as i32 * (a - 2))) * &qnum_nonsym_base(n, qi2));
    }
    let denom = qi_minus_inverse(d);
    let closed = |base: QBase| -&(&(&qi.pow(-1) * &qpochhammer_q(1, top, base)) / &denom);
    [(s1, closed(qi2)), (s2, closed(qi2.inverse()))]
}

pub fn verify_sum_identities(a: i32, d: u32) -> bool {
    a <= 0 && sum_identity_sides(a, d).iter().all(|(l, r)| l == r)
}

/// The two torus-weighted terms on the right of the `τ(i) = j` Serre relation,
/// with `m = 1 - a_ij`.
pub fn sbb2_correction(datum: &CartanDatum, i: usize, j: usize) -> Result<NCElem> {
    let (d, a) = swapped_pair(datum, i, j)?;
    let m = (1 - a) as u32;
    let qi = QBase::q_i(d);
    let den = qi_minus_inverse(d).pow(2);
    let ci = ParamScalar::symbol(datum.c_symbol(i))
        .scale(&(&qi.pow(-(m as i32)) * &qpochhammer_q(1, m, qi.power(2))))
        .div_ratfunc(&den)?;
    let cj = ParamScalar::symbol(datum.c_symbol(j))
        .scale(&(&qi.pow(1) * &qpochhammer_q(1, m, qi.power(-2))))
        .div_ratfunc(&den)?;
    Ok(&fi_power_torus(i, m - 1, Torus::ratio(j, i), ci) + &fi_power_torus(i, m - 1, Torus::ratio(i, j), cj))
}

/// `S_ij(F_i ⊛, F_j) = S_ij(F_i, F_j) + ` the two correction terms.
pub fn verify_sbb2(datum: &CartanDatum, i: usize, j: usize) -> Result<bool> {
    let lhs = serre_poly_star(datum, i, j)?;
    let rhs = &serre_poly(datum, i, j)? + &sbb2_correction(datum, i, j)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        for a in [0, -1, -4] {
            assert!(verify_sum_identities(a, 1), "a = {a}");
        }
        assert!(verify_sum_identities(-2, 2));
    }

    #[test]
    fn expansion_small() {
        let c = CartanDatum::swapped_pair(-1).unwrap();
        assert!(verify_tau_ij_expansion(&c, 0, 1, 0, 1).unwrap());
        assert!(verify_tau_ij_expansion(&c, 2, 1, 0, 1).unwrap());
        for n in 0..=5 {
            assert!(verify_fj_star_fi_power(&c, n, 0, 1).unwrap(), "n = {n}");
        }
        let fixed = CartanDatum::fixed_pair(-1).unwrap();
        assert!(verify_tau_ij_expansion(&fixed, 1, 1, 0, 1).is_err());
    }

    #[test]
    fn sbb2_small() {
        for a in [0, -1, -3] {
            let c = CartanDatum::swapped_pair(a).unwrap();
            assert!(verify_sbb2(&c, 0, 1).unwrap(), "a = {a}");
        }
    }
}
