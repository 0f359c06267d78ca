use serde::{Deserialize, Serialize};

use super::{is_isomorphic, Graph};

/// Split into isolated vertices and the connected components of the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    pub isolated: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// Partition of `components` (by index) into isomorphism classes.
    pub types: Vec<Vec<usize>>,
}

/// Split into universal vertices (the apex) and the join-indecomposable
/// factors of the remaining induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinDecomposition {
    pub apex: Vec<usize>,
    pub factors: Vec<Vec<usize>>,
    /// Partition of `factors` (by index) into isomorphism classes.
    pub types: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    /// Index of the component containing `v`, if `v` is not isolated.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&v))
    }
}

pub(super) fn connected_components(g: &Graph) -> ComponentDecomposition {
    let deg = g.degrees();
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| deg[v] == 0).collect();
    let components: Vec<Vec<usize>> = g
        .components()
        .into_iter()
        .filter(|c| !(c.len() == 1 && deg[c[0]] == 0))
        .collect();
    let types = group_by_isomorphism(g, &components);
    ComponentDecomposition {
        isolated,
        components,
        types,
    }
}

pub(super) fn join_decompose(g: &Graph) -> JoinDecomposition {
    let apex = g.universal_vertices();
    let rest: Vec<usize> = (0..g.n()).filter(|v| !apex.contains(v)).collect();
    let sub = g
        .induced_subgraph(&rest)
        .expect("rest is a list of distinct in-range vertices");
    let factors: Vec<Vec<usize>> = sub
        .complement()
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect();
    let types = group_by_isomorphism(g, &factors);
    JoinDecomposition {
        apex,
        factors,
        types,
    }
}

fn group_by_isomorphism(g: &Graph, parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let subs: Vec<Graph> = parts
        .iter()
        .map(|p| {
            g.induced_subgraph(p)
                .expect("parts hold distinct in-range vertices")
        })
        .collect();
    let mut types: Vec<Vec<usize>> = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        match types.iter_mut().find(|t| is_isomorphic(&subs[t[0]], s)) {
            Some(t) => t.push(i),
            None => types.push(vec![i]),
        }
    }
    types
}
