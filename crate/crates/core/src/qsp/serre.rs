use super::ncelem::{NCElem, Torus, Word};
use super::star::{curve_action, star_mul, star_power};
use super::CartanDatum;
use crate::bihermite::{wmn_poly, wmn_table, XYPoly};
use crate::error::{Error, Result};
use crate::hermite::{vm_poly, wm_poly, XPoly};
use crate::qarith::{qbinomial, qnum_symmetric, substitute_c, ParamScalar, QBase, RatFuncV};

fn distinct(datum: &CartanDatum, i: usize, j: usize) -> Result<()> {
    if i >= datum.rank() || j >= datum.rank() {
        return Err(Error::Precondition(format!("indices {i}, {j} out of range")));
    }
    if i == j {
        return Err(Error::Precondition("the pair (i, j) must consist of distinct indices".into()));
    }
    Ok(())
}

/// Requires `τ(i) = i ≠ j`; returns `(d_i, a_ij)`.
pub(crate) fn fixed_pair(datum: &CartanDatum, i: usize, j: usize) -> Result<(u32, i32)> {
    distinct(datum, i, j)?;
    if datum.tau(i) != i {
        return Err(Error::Precondition(format!("requires tau({0}) = {0}", datum.label(i))));
    }
    Ok((datum.d(i), datum.a(i, j)))
}

fn serre_top(datum: &CartanDatum, i: usize, j: usize) -> u32 {
    (1 - datum.a(i, j)) as u32
}

/// `(-1)^n [top n]_{q_i}`.
fn serre_coeff(top: u32, n: u32, d: u32) -> ParamScalar {
    let sign = RatFuncV::integer(if n.is_multiple_of(2) { 1 } else { -1 });
    (&sign * &qbinomial(top, n, d).expect("n <= top")).into()
}

fn fi_word(i: usize, m: u32, j: usize, n: u32) -> Word {
    let mut w = vec![i; m as usize];
    w.push(j);
    w.extend(std::iter::repeat_n(i, n as usize));
    w
}

/// `S_ij(F_i, F_j) = Σ_n (-1)^n [1-a_ij n]_{q_i} F_i^{1-a_ij-n} F_j F_i^n`.
pub fn serre_poly(datum: &CartanDatum, i: usize, j: usize) -> Result<NCElem> {
    distinct(datum, i, j)?;
    let top = serre_top(datum, i, j);
    let d = datum.d(i);
    Ok(NCElem::from_terms(
        (0..=top).map(|n| (fi_word(i, top - n, j, n), Torus::identity(), serre_coeff(top, n, d))),
    ))
}

/// `S_ij(F_i ⊛, F_j)`: every product in the Serre polynomial taken with `⊛`.
pub fn serre_poly_star(datum: &CartanDatum, i: usize, j: usize) -> Result<NCElem> {
    distinct(datum, i, j)?;
    let top = serre_top(datum, i, j);
    let d = datum.d(i);
    let fi = NCElem::letter(i);
    let powers: Vec<NCElem> = (0..=top).scan(NCElem::one(), |acc, k| {
        if k > 0 {
            *acc = star_mul(datum, acc, &fi);
        }
        Some(acc.clone())
    })
    .collect();
    let fj = NCElem::letter(j);
    let mut out = NCElem::zero();
    for n in 0..=top {
        let left = star_mul(datum, &powers[(top - n) as usize], &fj);
        out = &out + &star_mul(datum, &left, &powers[n as usize]).scale(&serre_coeff(top, n, d));
    }
    Ok(out)
}

fn specialize_xy(datum: &CartanDatum, i: usize, w: &XYPoly) -> XYPoly {
    w.map_coeffs(|c| substitute_c(c, datum.c_symbol(i), datum.d(i)))
}

fn specialize_x(datum: &CartanDatum, i: usize, w: &XPoly) -> XPoly {
    w.map_coeffs(|c| substitute_c(c, datum.c_symbol(i), datum.d(i)))
}

/// `F_i^m F_j F_i^n = F_j ↷ w_{m,n}(F_i ⊛, F_i)`.
pub fn verify_lemma_wmn(datum: &CartanDatum, m: u32, n: u32, i: usize, j: usize) -> Result<bool> {
    let (d, a) = fixed_pair(datum, i, j)?;
    let w = specialize_xy(datum, i, &wmn_poly(m, n, d, a));
    let (fi, fj) = (NCElem::letter(i), NCElem::letter(j));
    Ok(curve_action(datum, &w, &fi, &fi, &fj) == NCElem::word(fi_word(i, m, j, n)))
}

/// `Σ_ℓ (-1)^ℓ [1-a_ij ℓ]_{q_i} F_j ↷ w_{1-a_ij-ℓ,ℓ}(F_i ⊛, F_i) = S_ij(F_i, F_j)`.
pub fn verify_dqs_bivariate(datum: &CartanDatum, i: usize, j: usize) -> Result<bool> {
    let (d, a) = fixed_pair(datum, i, j)?;
    let top = serre_top(datum, i, j);
    let table = wmn_table(top, top, d, a);
    let (fi, fj) = (NCElem::letter(i), NCElem::letter(j));
    let mut lhs = NCElem::zero();
    for l in 0..=top {
        let w = specialize_xy(datum, i, &table[(top - l) as usize][l as usize]);
        lhs = &lhs + &curve_action(datum, &w, &fi, &fi, &fj).scale(&serre_coeff(top, l, d));
    }
    Ok(lhs == serre_poly(datum, i, j)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnivariateVariant {
    /// `w_{1-a-ℓ}(F_i) ⊛ F_j ⊛ v_ℓ(F_i)`.
    Wv,
    /// `v_{1-a-ℓ}(F_i) ⊛ F_j ⊛ w_ℓ(F_i)`.
    Vw,
}

/// `p(u)` with every power taken as a `⊛`-power.
pub fn eval_star_poly(datum: &CartanDatum, p: &XPoly, u: &NCElem) -> NCElem {
    let mut out = NCElem::zero();
    let mut pw = NCElem::one();
    for k in 0..=p.degree().unwrap_or(0) {
        if k > 0 {
            pw = star_mul(datum, &pw, u);
        }
        let c = p.coeff(k);
        if !c.is_zero() {
            out = &out + &pw.scale(&c);
        }
    }
    out
}

/// The univariate form of the deformed Serre relation, lifted to words:
/// the `⊛`-evaluated sum equals `S_ij(F_i, F_j)`.
pub fn verify_dqs_univariate(datum: &CartanDatum, i: usize, j: usize, variant: UnivariateVariant) -> Result<bool> {
    let (d, _) = fixed_pair(datum, i, j)?;
    let top = serre_top(datum, i, j);
    let fi = NCElem::letter(i);
    let fj = NCElem::letter(j);
    let mut lhs = NCElem::zero();
    for l in 0..=top {
        let (left, right) = match variant {
            UnivariateVariant::Wv => (wm_poly(top - l, d), vm_poly(l, d)),
            UnivariateVariant::Vw => (vm_poly(top - l, d), wm_poly(l, d)),
        };
        let left = eval_star_poly(datum, &specialize_x(datum, i, &left), &fi);
        let right = eval_star_poly(datum, &specialize_x(datum, i, &right), &fi);
        let term = star_mul(datum, &star_mul(datum, &left, &fj), &right);
        lhs = &lhs + &term.scale(&serre_coeff(top, l, d));
    }
    Ok(lhs == serre_poly(datum, i, j)?)
}

/// Right side of the deformed Serre relation for `τ(i) = i ≠ j`, expressed in
/// words: `S_ij(F_i ⊛, F_j) - S_ij(F_i, F_j)`.
pub fn explicit_relation_table(datum: &CartanDatum, i: usize, j: usize) -> Result<NCElem> {
    let (_, a) = fixed_pair(datum, i, j)?;
    if !(-3..=0).contains(&a) {
        return Err(Error::Unsupported(format!("relation table covers a_ij in 0..=-3, got {a}")));
    }
    Ok(&serre_poly_star(datum, i, j)? - &serre_poly(datum, i, j)?)
}

/// One row of the closed-form relation table: coefficient times a monomial in
/// `B_i`, `B_j`.
#[derive(Clone, Debug)]
pub struct RelationTableEntry {
    pub a: i32,
    pub latex: &'static str,
    pub terms: Vec<(ParamScalar, Word)>,
}

/// The closed-form right side for `a_ij ∈ {0, -1, -2, -3}`; the words are
/// over `{i, j}` and stand for `⊛`-products of the `B`'s.
pub fn relation_table_closed_form(datum: &CartanDatum, i: usize, j: usize) -> Result<RelationTableEntry> {
    let (d, a) = fixed_pair(datum, i, j)?;
    let qi_ci = ParamScalar::symbol(datum.c_symbol(i)).scale(&QBase::q_i(d).pow(1));
    let br = |n: u32| qnum_symmetric(n, d);
    let one = RatFuncV::one();
    let (latex, terms) = match a {
        0 => ("0", vec![]),
        -1 => ("-q_i c_i B_j", vec![(-&qi_ci, vec![j])]),
        -2 => {
            let k = qi_ci.scale(&br(2).pow(2));
            ("-[2]_{q_i}^2 q_i c_i (B_i B_j - B_j B_i)", vec![(-&k, vec![i, j]), (k, vec![j, i])])
        }
        -3 => {
            let outer = qi_ci.scale(&(&br(3).pow(2) + &one));
            let mid = qi_ci.scale(&(&br(4) * &(&br(2).pow(2) + &one)));
            let last = qi_ci.pow(2).scale(&br(3).pow(2));
            (
                "-([3]_{q_i}^2+1)q_i c_i(B_i^2B_j+B_j B_i^2) + [4]_{q_i} ([2]_{q_i}^2+1)q_ic_i B_iB_jB_i -[3]_{q_i}^2 (q_ic_i)^2 B_j",
                vec![(-&outer, vec![i, i, j]), (-&outer, vec![j, i, i]), (mid, vec![i, j, i]), (-&last, vec![j])],
            )
        }
        _ => return Err(Error::Unsupported(format!("relation table covers a_ij in 0..=-3, got {a}"))),
    };
    Ok(RelationTableEntry { a, latex, terms })
}

/// Evaluates a `B`-monomial combination with `⊛`-products of the letters.
pub fn eval_b_terms(datum: &CartanDatum, terms: &[(ParamScalar, Word)]) -> NCElem {
    let mut out = NCElem::zero();
    for (c, w) in terms {
        let prod = w.iter().fold(NCElem::one(), |acc, l| star_mul(datum, &acc, &NCElem::letter(*l)));
        out = &out + &prod.scale(c);
    }
    out
}

/// `explicit_relation_table` agrees with the closed form.
pub fn relation_table_check(datum: &CartanDatum, i: usize, j: usize) -> Result<bool> {
    let entry = relation_table_closed_form(datum, i, j)?;
    Ok(explicit_relation_table(datum, i, j)? == eval_b_terms(datum, &entry.terms))
}

/// Recovers `w_{m,n}` from `F_i^m F_j F_i^n` by solving the triangular system
/// `Σ b_rs F_i^{⊛r} ⊛ F_j ⊛ F_i^{⊛s} = F_i^m F_j F_i^n`; coefficients are in
/// terms of `c_i`.
pub fn extract_wmn(datum: &CartanDatum, m: u32, n: u32, i: usize, j: usize) -> Result<XYPoly> {
    fixed_pair(datum, i, j)?;
    let fi = NCElem::letter(i);
    let fj = NCElem::letter(j);
    let left: Vec<NCElem> = (0..=m).map(|r| star_power(datum, &fi, r)).collect();
    let right: Vec<NCElem> = (0..=n).map(|s| star_power(datum, &fi, s)).collect();
    let mut residual = NCElem::word(fi_word(i, m, j, n));
    let mut w = XYPoly::zero();
    while !residual.is_zero() {
        let (word, torus, coef) = residual
            .terms()
            .max_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| b.0.cmp(a.0)))
            .map(|(w, t, c)| (w.clone(), t.clone(), c.clone()))
            .expect("nonzero");
        let pos = word.iter().position(|l| *l == j);
        let shape_ok = torus.is_identity()
            && pos.is_some_and(|p| word.iter().enumerate().all(|(k, l)| if k == p { *l == j } else { *l == i }));
        let p = match (shape_ok, pos) {
            (true, Some(p)) => p,
            _ => return Err(Error::Precondition("residual left the span of F_i^r F_j F_i^s".into())),
        };
        let (r, s) = (p as u32, (word.len() - p - 1) as u32);
        if r > m || s > n {
            return Err(Error::Precondition("residual exceeds the target bidegree".into()));
        }
        let image = star_mul(datum, &star_mul(datum, &left[r as usize], &fj), &right[s as usize]);
        residual = &residual - &image.scale(&coef);
        w = &w + &XYPoly::monomial(coef, r, s);
    }
    Ok(w)
}

/// The triangular solve reproduces `w_{m,n}` (after `c ↦ -c_i q_i^2/(q_i - q_i^{-1})`).
pub fn extract_wmn_check(datum: &CartanDatum, m: u32, n: u32, i: usize, j: usize) -> Result<bool> {
    let (d, a) = fixed_pair(datum, i, j)?;
    Ok(extract_wmn(datum, m, n, i, j)? == specialize_xy(datum, i, &wmn_poly(m, n, d, a)))
}

/// For `τ(i) ∉ {i, j}` the Serre relation is undeformed.
pub fn mixed_tau_check(datum: &CartanDatum, i: usize, j: usize) -> Result<bool> {
    distinct(datum, i, j)?;
    let t = datum.tau(i);
    if t == i || t == j {
        return Err(Error::Precondition(format!("requires tau({}) outside {{i, j}}", datum.label(i))));
    }
    Ok(serre_poly_star(datum, i, j)? == serre_poly(datum, i, j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serre_small() {
        let c = CartanDatum::fixed_pair(0).unwrap();
        let s = serre_poly(&c, 0, 1).unwrap();
        assert_eq!(s, &NCElem::word(vec![0, 1]) - &NCElem::word(vec![1, 0]));
        let c = CartanDatum::fixed_pair(-1).unwrap();
        let s = serre_poly(&c, 0, 1).unwrap();
        assert_eq!(s.len(), 3);
        let two: ParamScalar = (-&qnum_symmetric(2, 1)).into();
        assert_eq!(s.coeff(&[0, 1, 0], &Torus::identity()), two);
        assert!(serre_poly(&c, 0, 0).is_err());
    }

    #[test]
    fn lemma_low_degree() {
        let c = CartanDatum::fixed_pair(-2).unwrap();
        for (m, n) in [(0, 0), (1, 1), (3, 2)] {
            assert!(verify_lemma_wmn(&c, m, n, 0, 1).unwrap(), "({m},{n})");
        }
    }

    #[test]
    fn table_rows() {
        for a in [0, -1, -2, -3] {
            let c = CartanDatum::fixed_pair(a).unwrap();
            assert!(relation_table_check(&c, 0, 1).unwrap(), "a = {a}");
        }
        let c = CartanDatum::fixed_pair(-4).unwrap();
        assert!(matches!(explicit_relation_table(&c, 0, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn extraction() {
        let c = CartanDatum::fixed_pair(-1).unwrap();
        assert!(extract_wmn_check(&c, 2, 2, 0, 1).unwrap());
    }
}
