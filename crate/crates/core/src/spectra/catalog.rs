//! All graphs on at most four vertices up to isomorphism, with their
//! closed-form spectra.

use super::form::SpectrumForm;
use super::search::{search_spectrum, SearchError, SearchOptions, SearchResult};
use crate::graph::Graph;
use crate::par::Strategy;

/// Node budget for the optimistic `B = 2` attempt on four vertices.
pub const FOUR_VERTEX_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub n: usize,
    pub edges: &'static [(usize, usize)],
    pub form: SpectrumForm,
    /// Small members that the default search is expected to realize.
    pub witnesses: &'static [u64],
}

impl CatalogEntry {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges).expect("catalog edges are valid")
    }

    pub fn is_r_infinity(&self) -> bool {
        self.form == SpectrumForm::RInfinityOnly
    }
}

fn entry(
    name: &'static str,
    n: usize,
    edges: &'static [(usize, usize)],
    form: SpectrumForm,
    witnesses: &'static [u64],
) -> CatalogEntry {
    CatalogEntry {
        name,
        n,
        edges,
        form,
        witnesses,
    }
}

/// Graphs on at most three vertices.
pub fn small_catalog() -> Vec<CatalogEntry> {
    use SpectrumForm::*;
    vec![
        entry("K1", 1, &[], Z1, &[2]),
        entry("2K1", 2, &[], TwoN0, &[2]),
        entry("K2", 2, &[(0, 1)], FullN0, &[1]),
        entry("3K1", 3, &[], OddUnion4N0, &[1, 4]),
        entry("K2+K1", 3, &[(0, 1)], TwoSquares, &[2]),
        entry("P3", 3, &[(0, 1), (1, 2)], FourN0, &[4]),
        entry("K3", 3, &[(0, 1), (0, 2), (1, 2)], FullN0, &[1]),
    ]
}

/// Graphs on four vertices.
pub fn four_vertex_catalog() -> Vec<CatalogEntry> {
    use SpectrumForm::*;
    vec![
        entry("4K1", 4, &[], FullN0, &[1]),
        entry("K2+2K1", 4, &[(0, 1)], OneEdgeFamily, &[4, 8]),
        entry("2K2", 4, &[(0, 1), (2, 3)], TwoEdgeFamily, &[2, 4]),
        entry("P3+K1", 4, &[(0, 1), (1, 2)], RInfinityOnly, &[]),
        entry("K3+K1", 4, &[(0, 1), (0, 2), (1, 2)], TwoOddUnion8N0, &[2]),
        entry("star", 4, &[(0, 1), (0, 2), (0, 3)], TwoOddUnion8N0, &[2]),
        entry("P4", 4, &[(0, 1), (1, 2), (2, 3)], RInfinityOnly, &[]),
        entry(
            "paw",
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2)],
            FourSquares,
            &[4],
        ),
        entry("C4", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)], TwoN0, &[2]),
        entry(
            "diamond",
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            TwoN0,
            &[2],
        ),
        entry(
            "K4",
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            FullN0,
            &[1],
        ),
    ]
}

/// All 18 classes, ordered by vertex count.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut all = small_catalog();
    all.extend(four_vertex_catalog());
    all
}

/// The catalog entry isomorphic to `g`, if `g` has at most four vertices.
pub fn lookup(g: &Graph) -> Option<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.n == g.n() && e.graph().is_isomorphic(g))
}

/// Default search: `B = 3` up to three vertices; `B = 2` on four vertices
/// while the search stays under [`FOUR_VERTEX_BUDGET`] nodes, else `B = 1`;
/// `B = 1` beyond. `budget` guards every search except the optimistic one.
pub fn default_search(
    g: &Graph,
    strategy: Strategy,
    budget: Option<u64>,
) -> Result<(i64, SearchResult), SearchError> {
    let opts = |b: i64| {
        SearchOptions::new(b)
            .with_budget(budget)
            .with_strategy(strategy)
    };
    match g.n() {
        0..=3 => search_spectrum(g, &opts(3)).map(|r| (3, r)),
        4 => {
            let optimistic = opts(2).with_budget(Some(FOUR_VERTEX_BUDGET));
            match search_spectrum(g, &optimistic) {
                Err(SearchError::BudgetExceeded { .. }) => {
                    search_spectrum(g, &opts(1)).map(|r| (1, r))
                }
                other => other.map(|r| (2, r)),
            }
        }
        _ => search_spectrum(g, &opts(1)).map(|r| (1, r)),
    }
}
