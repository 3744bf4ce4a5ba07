use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadRule {
    GaussLegendre,
    Simpson,
}

/// Nodes and weights on `[a, b]`. Simpson uses `n` intervals (rounded up to
/// even), hence `n + 1` nodes.
pub fn nodes(rule: QuadRule, n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    match rule {
        QuadRule::GaussLegendre => {
            let n = NonZeroUsize::new(n).expect("positive node count");
            GaussLegendre::new(n)
                .into_node_weight_pairs()
                .iter()
                .map(|(x, w)| (a + half * (x + 1.0), half * w))
                .collect()
        }
        QuadRule::Simpson => {
            let n = n + n % 2;
            let h = (b - a) / n as f64;
            (0..=n)
                .map(|k| {
                    let w = if k == 0 || k == n {
                        1.0
                    } else if k % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    (a + h * k as f64, w * h / 3.0)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials() {
        for rule in [QuadRule::GaussLegendre, QuadRule::Simpson] {
            let s: f64 = nodes(rule, 64, 0.0, 2.0).iter().map(|(x, w)| w * x * x * x).sum();
            assert!((s - 4.0).abs() < 1e-12, "{rule:?}");
        }
    }

    #[test]
    fn integrates_trig() {
        let s: f64 = nodes(QuadRule::GaussLegendre, 64, 0.0, std::f64::consts::PI).iter().map(|(x, w)| w * x.sin()).sum();
        assert!((s - 2.0).abs() < 1e-13);
    }
}
