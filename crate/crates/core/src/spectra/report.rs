//! Search results paired with the closed-form classification of a graph.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::catalog::lookup;
use super::decompose::{classify, Classification};
use super::search::{
    search_spectrum, verify_witness, AutMatrix, SearchError, SearchOptions, SearchResult,
};
use crate::exactlin::ExtNat;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumReport {
    pub graph: Graph,
    pub classification: Classification,
    #[serde(with = "uint_vec")]
    pub observed: Vec<BigUint>,
    pub bound: i64,
    #[serde(with = "witness_map")]
    pub witnesses: BTreeMap<BigUint, AutMatrix>,
}

impl SpectrumReport {
    /// Observed values outside the classified form.
    pub fn violations(&self) -> Vec<BigUint> {
        let Some(form) = self.classification.form() else {
            return Vec::new();
        };
        self.observed
            .iter()
            .filter(|v| {
                !form
                    .contains(&ExtNat::Finite((*v).clone()))
                    .unwrap_or(false)
            })
            .cloned()
            .collect()
    }

    /// Witnesses whose exact recomputation disagrees with their key.
    pub fn unsound_witnesses(&self) -> Vec<BigUint> {
        self.witnesses
            .iter()
            .filter(|(v, m)| verify_witness(&self.graph, m) != Some(ExtNat::Finite((*v).clone())))
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Structural checks: observed keys match witnesses, every witness
    /// recomputes to its value and all values lie in the classified form.
    pub fn is_consistent(&self) -> bool {
        self.observed.iter().eq(self.witnesses.keys())
            && self.unsound_witnesses().is_empty()
            && self.violations().is_empty()
    }
}

/// Classify `g` and search it with `opts`.
pub fn compute_spectrum_report(
    g: &Graph,
    opts: &SearchOptions,
) -> Result<SpectrumReport, SearchError> {
    let result = search_spectrum(g, opts)?;
    Ok(SpectrumReport::from_search(g, opts.bound, result))
}

impl SpectrumReport {
    pub fn from_search(g: &Graph, bound: i64, result: SearchResult) -> Self {
        SpectrumReport {
            graph: g.clone(),
            classification: classification_for(g),
            observed: result.observed(),
            bound,
            witnesses: result.witnesses,
        }
    }
}

/// Rules and decomposition, then the small-graph catalog.
pub fn classification_for(g: &Graph) -> Classification {
    match classify(g) {
        Classification::SearchOnly => match lookup(g) {
            Some(e) if !e.is_r_infinity() => Classification::closed(e.form),
            _ => Classification::SearchOnly,
        },
        c => c,
    }
}

mod uint_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| ExtNat::Finite(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<ExtNat>::deserialize(d)?
            .into_iter()
            .map(|x| match x {
                ExtNat::Finite(v) => Ok(v),
                ExtNat::Infinite => Err(serde::de::Error::custom("observed values are finite")),
            })
            .collect()
    }
}

mod witness_map {
    use super::*;
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<BigUint, AutMatrix>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<BigUint, AutMatrix>, D::Error> {
        BTreeMap::<String, AutMatrix>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse::<BigUint>()
                    .map(|k| (k, v))
                    .map_err(|_| serde::de::Error::custom(format!("invalid witness key {k:?}")))
            })
            .collect()
    }
}

/// Observed values that fit in `u64`, for display and tests.
pub fn small_values(v: &[BigUint]) -> Vec<u64> {
    v.iter().filter_map(|x| x.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::decompose::RInfinityRule;
    use crate::spectra::form::SpectrumForm;

    #[test]
    fn path_on_three_vertices() {
        let r = compute_spectrum_report(&Graph::path(3), &SearchOptions::new(2)).unwrap();
        assert_eq!(
            r.classification,
            Classification::closed(SpectrumForm::FourN0)
        );
        let obs = small_values(&r.observed);
        assert!(obs.contains(&4));
        assert!(obs.iter().all(|v| v % 4 == 0));
        assert!(r.is_consistent());
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = compute_spectrum_report(&g, &SearchOptions::new(1)).unwrap();
        assert_eq!(r.classification.form(), Some(SpectrumForm::TwoEdgeFamily));
        assert!(r.violations().is_empty());
        assert!(r.is_consistent());
    }

    #[test]
    fn single_vertex() {
        let r = compute_spectrum_report(&Graph::empty(1), &SearchOptions::new(3)).unwrap();
        assert_eq!(small_values(&r.observed), vec![2]);
        let Classification::ClosedForm { rendered, .. } = &r.classification else {
            panic!("closed form expected");
        };
        assert_eq!(rendered, "{2, inf}");
    }

    #[test]
    fn rule_graph_has_no_finite_values() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let r = compute_spectrum_report(&g, &SearchOptions::new(1)).unwrap();
        assert_eq!(
            r.classification,
            Classification::RInfinity {
                rule: RInfinityRule::MaxDegreeOnce
            }
        );
        assert!(r.observed.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::complete_plus_isolated(3);
        let r = compute_spectrum_report(&g, &SearchOptions::new(2)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"graph":{"n":3,"edges":[[0,1]]},"classification":"#));
        assert!(text.contains(r#""observed":[2,6,8"#));
        let back: SpectrumReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(back.is_consistent());
    }

    #[test]
    fn tampered_reports_are_caught() {
        let r = compute_spectrum_report(&Graph::path(3), &SearchOptions::new(1)).unwrap();
        let mut bad = r.clone();
        let (v, m) = bad.witnesses.pop_first().unwrap();
        bad.witnesses.insert(v + 4u32, m);
        assert!(!bad.is_consistent());
        let mut outside = r;
        outside.observed.push(BigUint::from(6u32));
        assert_eq!(outside.violations(), vec![BigUint::from(6u32)]);
    }
}
