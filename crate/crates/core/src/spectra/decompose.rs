//! Spectra assembled from the join structure of the graph, and rule-based
//! detection of the R∞ property.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::form::SpectrumForm;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RInfinityRule {
    /// Maximal degree `n - 2`, attained by exactly one vertex.
    MaxDegreeOnce,
    /// Some join factor has the property.
    JoinFactorRInf,
    /// Cycle on at least five vertices.
    CycleAtLeast5,
    /// Path on at least four vertices.
    PathAtLeast4,
}

impl fmt::Display for RInfinityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    ClosedForm {
        form: SpectrumForm,
        rendered: String,
    },
    RInfinity {
        rule: RInfinityRule,
    },
    SearchOnly,
}

impl Classification {
    pub fn closed(form: SpectrumForm) -> Self {
        let rendered = form.render();
        Self::ClosedForm { form, rendered }
    }

    /// The set every finite search value must lie in, when one is known.
    pub fn form(&self) -> Option<SpectrumForm> {
        match self {
            Self::ClosedForm { form, .. } => Some(form.clone()),
            Self::RInfinity { .. } => Some(SpectrumForm::RInfinityOnly),
            Self::SearchOnly => None,
        }
    }
}

/// First applicable R∞ rule, if any.
pub fn detect_r_infinity(g: &Graph) -> Option<RInfinityRule> {
    let n = g.n();
    if n >= 2 {
        let deg = g.degrees();
        if deg.iter().filter(|&&d| d == n - 2).count() == 1 && deg.iter().all(|&d| d <= n - 2) {
            return Some(RInfinityRule::MaxDegreeOnce);
        }
    }
    let d = g.join_decompose();
    if !d.apex.is_empty() || d.factors.len() > 1 {
        let fires = d.factors.iter().any(|f| {
            let sub = g.induced_subgraph(f).expect("factor vertices are valid");
            detect_r_infinity(&sub).is_some()
        });
        if fires {
            return Some(RInfinityRule::JoinFactorRInf);
        }
    }
    if n >= 5 && g.is_isomorphic(&Graph::cycle(n)) {
        return Some(RInfinityRule::CycleAtLeast5);
    }
    if n >= 4 && g.is_isomorphic(&Graph::path(n)) {
        return Some(RInfinityRule::PathAtLeast4);
    }
    None
}

/// Spectrum of `Z^r`.
pub fn abelian_form(r: usize) -> Option<SpectrumForm> {
    match r {
        0 => None,
        1 => Some(SpectrumForm::Z1),
        _ => Some(SpectrumForm::FullN0),
    }
}

/// Spectrum of a join-indecomposable graph without universal vertices, when
/// a closed form is known for it.
fn base_form(h: &Graph) -> Option<SpectrumForm> {
    let n = h.n();
    if h.edge_count() == 0 {
        return Some(match n {
            2 => SpectrumForm::TwoN0,
            3 => SpectrumForm::OddUnion4N0,
            _ => SpectrumForm::FullN0,
        });
    }
    if n >= 3 && h.is_isomorphic(&Graph::complete_plus_isolated(n)) {
        return Some(if n == 3 {
            SpectrumForm::TwoSquares
        } else {
            SpectrumForm::TwoOddUnion8N0
        });
    }
    if detect_r_infinity(h).is_some() {
        return Some(SpectrumForm::RInfinityOnly);
    }
    if n == 4 {
        let one_edge = Graph::from_edges(4, &[(0, 1)]).expect("valid");
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).expect("valid");
        if h.is_isomorphic(&one_edge) {
            return Some(SpectrumForm::OneEdgeFamily);
        }
        if h.is_isomorphic(&two_edges) {
            return Some(SpectrumForm::TwoEdgeFamily);
        }
    }
    None
}

/// Closed-form spectrum from the join decomposition: the abelian factor of
/// universal vertices times, per isomorphism type of join factor, the union
/// of partial products of that factor's spectrum.
pub fn spectrum_form_by_decomposition(g: &Graph) -> Option<SpectrumForm> {
    if g.is_complete() {
        return abelian_form(g.n());
    }
    let d = g.join_decompose();
    let mut factors: Vec<SpectrumForm> = abelian_form(d.apex.len()).into_iter().collect();
    for ty in &d.types {
        let rep = g
            .induced_subgraph(&d.factors[ty[0]])
            .expect("factor vertices are valid");
        let base = base_form(&rep)?;
        factors.push(SpectrumForm::partial_products(base, ty.len()));
    }
    Some(SpectrumForm::product(factors).simplify())
}

pub fn spectrum_by_decomposition(g: &Graph) -> Classification {
    match spectrum_form_by_decomposition(g) {
        Some(form) => Classification::closed(form),
        None => Classification::SearchOnly,
    }
}

/// R∞ rules first, then the decomposition.
pub fn classify(g: &Graph) -> Classification {
    match detect_r_infinity(g) {
        Some(rule) => Classification::RInfinity { rule },
        None => spectrum_by_decomposition(g),
    }
}
