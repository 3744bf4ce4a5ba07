use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{QBase, Symbol};

/// Index set, generalized Cartan matrix, symmetrizers, diagram involution and
/// the parameter symbols `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    labels: Vec<String>,
    a: Vec<Vec<i32>>,
    d: Vec<u32>,
    tau: Vec<usize>,
    c: Vec<Symbol>,
}

#[derive(Serialize, Deserialize)]
struct CartanWire {
    #[serde(rename = "I")]
    index: Vec<String>,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<BTreeMap<String, String>>,
}

impl CartanDatum {
    /// Validates every invariant and reports all violations at once.
    pub fn new(labels: Vec<String>, a: Vec<Vec<i64>>, d: Vec<i64>, tau: Option<BTreeMap<String, String>>) -> Result<Self> {
        let mut errs = Vec::new();
        let n = labels.len();
        if n == 0 {
            errs.push("index set I is empty".to_string());
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                errs.push("index labels must be nonempty".into());
            }
            if !seen.insert(l.as_str()) {
                errs.push(format!("index label {l:?} is repeated"));
            }
        }
        let square = a.len() == n && a.iter().all(|row| row.len() == n);
        if !square {
            errs.push(format!("Cartan matrix must be {n}x{n}"));
        }
        if d.len() != n {
            errs.push(format!("expected {n} symmetrizers d_i, got {}", d.len()));
        }
        for (k, x) in d.iter().enumerate() {
            if *x <= 0 {
                let l = labels.get(k).map_or("?", String::as_str);
                errs.push(format!("d_{l} = {x} must be a positive integer"));
            }
        }
        let fits = |x: i64| i32::try_from(x).is_ok();
        if square {
            for i in 0..n {
                for j in 0..n {
                    let (li, lj) = (&labels[i], &labels[j]);
                    let x = a[i][j];
                    if !fits(x) {
                        errs.push(format!("a_{li}{lj} = {x} is out of range"));
                    } else if i == j && x != 2 {
                        errs.push(format!("a_{li}{li} = {x} must equal 2"));
                    } else if i != j && x > 0 {
                        errs.push(format!("a_{li}{lj} = {x} must be <= 0"));
                    }
                    if d.len() == n && i < j && d[i] * a[i][j] != d[j] * a[j][i] {
                        errs.push(format!(
                            "symmetrizability fails: d_{li} a_{li}{lj} = {} but d_{lj} a_{lj}{li} = {}",
                            d[i] * a[i][j],
                            d[j] * a[j][i]
                        ));
                    }
                }
            }
        }
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        let mut tau_vec: Vec<usize> = (0..n).collect();
        if let Some(t) = &tau {
            for key in t.keys() {
                if !index.contains_key(key.as_str()) {
                    errs.push(format!("tau is defined on unknown index {key:?}"));
                }
            }
            for (k, l) in labels.iter().enumerate() {
                match t.get(l) {
                    None => errs.push(format!("tau is not defined on index {l:?}")),
                    Some(img) => match index.get(img.as_str()) {
                        Some(&j) => tau_vec[k] = j,
                        None => errs.push(format!("tau({l}) = {img:?} is not an index")),
                    },
                }
            }
            for k in 0..n {
                if tau_vec[tau_vec[k]] != k {
                    errs.push(format!("tau is not an involution at {:?}", labels[k]));
                }
            }
            if d.len() == n {
                for k in 0..n {
                    if k < tau_vec[k] && d[k] != d[tau_vec[k]] {
                        errs.push(format!(
                            "tau does not preserve the symmetrizers: d_{} != d_{}",
                            labels[k], labels[tau_vec[k]]
                        ));
                    }
                }
            }
            if square {
                for i in 0..n {
                    for j in 0..n {
                        if a[tau_vec[i]][tau_vec[j]] != a[i][j] {
                            errs.push(format!(
                                "tau does not preserve the Cartan matrix: a_{}{} != a_{}{}",
                                labels[tau_vec[i]], labels[tau_vec[j]], labels[i], labels[j]
                            ));
                        }
                    }
                }
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidCartan(errs));
        }
        // c_i and c_{τ(i)} share a symbol whenever a_{iτ(i)} = 0
        let c = (0..n)
            .map(|i| {
                let t = tau_vec[i];
                let owner = if t != i && a[i][t] == 0 { i.min(t) } else { i };
                Symbol::new(&format!("c_{}", labels[owner]))
            })
            .collect();
        Ok(Self {
            labels,
            a: a.into_iter().map(|row| row.into_iter().map(|x| x as i32).collect()).collect(),
            d: d.into_iter().map(|x| x as u32).collect(),
            tau: tau_vec,
            c,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let wire: CartanWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(wire.index, wire.a, wire.d, wire.tau)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let wire = CartanWire {
            index: self.labels.clone(),
            a: self.a.iter().map(|row| row.iter().map(|x| *x as i64).collect()).collect(),
            d: self.d.iter().map(|x| *x as i64).collect(),
            tau: Some(
                (0..self.rank()).map(|k| (self.labels[k].clone(), self.labels[self.tau[k]].clone())).collect(),
            ),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    /// Two nodes `1, 2` with the given entries; `swapped` selects `τ = (1 2)`.
    pub fn rank_two(a12: i64, a21: i64, d1: i64, d2: i64, swapped: bool) -> Result<Self> {
        let labels = vec!["1".to_string(), "2".to_string()];
        let tau = swapped.then(|| BTreeMap::from([("1".into(), "2".into()), ("2".into(), "1".into())]));
        Self::new(labels, vec![vec![2, a12], vec![a21, 2]], vec![d1, d2], tau)
    }

    /// Rank-two datum with `τ = id`, `d_1 = 1` and `a_12 = a`; the other entries
    /// are the smallest ones making it symmetrizable.
    pub fn fixed_pair(a: i64) -> Result<Self> {
        if a == 0 {
            Self::rank_two(0, 0, 1, 1, false)
        } else {
            Self::rank_two(a, -1, 1, -a, false)
        }
    }

    /// Rank-two datum with `τ = (1 2)` and `a_12 = a_21 = a`.
    pub fn swapped_pair(a: i64) -> Result<Self> {
        Self::rank_two(a, a, 1, 1, true)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownIndex(label.to_string()))
    }

    pub fn a(&self, i: usize, j: usize) -> i32 {
        self.a[i][j]
    }

    pub fn d(&self, i: usize) -> u32 {
        self.d[i]
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn form(&self, i: usize, j: usize) -> i32 {
        self.d[i] as i32 * self.a[i][j]
    }

    pub fn q_i(&self, i: usize) -> QBase {
        QBase::q_i(self.d[i])
    }

    pub fn c_symbol(&self, i: usize) -> &Symbol {
        &self.c[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_schema_example() {
        let s = r#"{"I":["1","2"],"a":[[2,-2],[-1,2]],"d":[1,2],"tau":{"1":"1","2":"2"}}"#;
        let c = CartanDatum::from_json_str(s).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.form(0, 1), -2);
        assert_eq!(c.form(1, 0), -2);
        assert_eq!(c.c_symbol(1).name(), "c_2");
        let back = CartanDatum::from_json_str(&c.to_json().to_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn reports_every_violation() {
        let s = r#"{"I":["1","2"],"a":[[3,1],[-1,2]],"d":[1,0],"tau":{"1":"2","2":"2"}}"#;
        let Err(Error::InvalidCartan(errs)) = CartanDatum::from_json_str(s) else { panic!("expected rejection") };
        let joined = errs.join("\n");
        for needle in ["must equal 2", "must be <= 0", "positive integer", "symmetrizability", "involution"] {
            assert!(joined.contains(needle), "missing {needle:?} in\n{joined}");
        }
    }

    #[test]
    fn aliases_parameters_for_orthogonal_swap() {
        let c = CartanDatum::swapped_pair(0).unwrap();
        assert_eq!(c.c_symbol(0), c.c_symbol(1));
        let c = CartanDatum::swapped_pair(-1).unwrap();
        assert_ne!(c.c_symbol(0), c.c_symbol(1));
    }

    #[test]
    fn tau_preserves_symmetrizers() {
        let Err(Error::InvalidCartan(errs)) = CartanDatum::rank_two(0, 0, 1, 2, true) else { panic!() };
        assert!(errs[0].contains("symmetrizers"));
    }

    #[test]
    fn tau_defaults_to_identity() {
        let c = CartanDatum::from_json_str(r#"{"I":["a"],"a":[[2]],"d":[1]}"#).unwrap();
        assert_eq!(c.tau(0), 0);
        assert!(c.index_of("b").is_err());
    }
}
