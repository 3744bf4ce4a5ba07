use std::collections::HashMap;

use proptest::prelude::*;
use qhermite::hermite::{hermite_explicit, hermite_rec, hermite_sequence};
use qhermite::qarith::{ParamScalar, QBase};

/// `Σ_k [n k]_q cos((n-2k)θ)` with Gaussian binomials built in floating point.
fn z_sum(n: u32, q: f64, theta: f64) -> f64 {
    let mut row = vec![1.0f64];
    for m in 1..=n as usize {
        let mut next = vec![1.0; m + 1];
        for k in 1..m {
            // [m k] = [m-1 k-1] + q^k [m-1 k]
            next[k] = row[k - 1] + q.powi(k as i32) * row[k];
        }
        row = next;
    }
    row.iter().enumerate().map(|(k, b)| b * ((n as f64 - 2.0 * k as f64) * theta).cos()).sum()
}

#[test]
fn recursion_matches_explicit_sum() {
    for n in 0..=12 {
        assert_eq!(hermite_rec(n, QBase::Q), hermite_explicit(n, QBase::Q).unwrap(), "n = {n}");
    }
}

#[test]
fn low_degree_values() {
    let h = hermite_sequence(2, QBase::Q);
    assert_eq!(h[0].to_string(), "1");
    assert_eq!(h[1].to_string(), "2*x");
    assert_eq!(h[2].to_string(), "4*x^2 + v^2 - 1");
}

proptest! {
    #[test]
    fn parity_degree_leading(n in 0u32..=12) {
        let h = hermite_rec(n, QBase::Q);
        prop_assert_eq!(h.degree(), Some(n));
        prop_assert_eq!(h.leading_coeff().cloned(), Some(ParamScalar::integer(1 << n)));
        for (e, _) in h.terms() {
            prop_assert_eq!(e % 2, n % 2);
        }
    }

    #[test]
    fn matches_trigonometric_sum(n in 0u32..=10, q in 0.05f64..0.95, theta in 0.0f64..3.1) {
        let h = hermite_rec(n, QBase::Q);
        let got = h.eval(theta.cos(), q.sqrt(), &HashMap::new());
        let want = z_sum(n, q, theta);
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "{} vs {}", got, want);
    }
}
