//! Finite simple undirected graphs on at most 64 vertices, with the structural
//! operations the spectrum theorems key on.

mod decompose;
mod io;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

pub use decompose::{ComponentDecomposition, JoinDecomposition};
pub use io::{parse_graph, parse_graph_json, parse_graph_lines, GraphFile};
pub use iso::is_isomorphic;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex {0} in vertex list")]
    DuplicateVertex(usize),
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
}

/// Vertices are `0..n` in a fixed canonical order. Equality is label-sensitive;
/// use [`is_isomorphic`] for the structural comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph too large");
        Self { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            g.adj[i] = mask_of(n) & !(1 << i);
        }
        g
    }

    /// Cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are valid for n >= 3")
    }

    /// Path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Complete graph on the first `n - 1` vertices plus the isolated vertex `n - 1`.
    pub fn complete_plus_isolated(n: usize) -> Self {
        assert!(n >= 1);
        let mut g = Self::empty(n);
        for i in 0..n - 1 {
            for j in i + 1..n - 1 {
                g.add_edge_unchecked(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if g.has_edge(a, b) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            g.add_edge_unchecked(a, b);
        }
        Ok(g)
    }

    fn add_edge_unchecked(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Non-adjacent pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|m| m.count_ones() as usize).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees().into_iter().max()
    }

    /// `V_d` for `d = 1..=n-1`: entry `d - 1` holds the vertices of degree `>= d`.
    pub fn degree_filtration(&self) -> Vec<BTreeSet<usize>> {
        let deg = self.degrees();
        (1..self.n.max(1))
            .map(|d| (0..self.n).filter(|&v| deg[v] >= d).collect())
            .collect()
    }

    /// Vertices adjacent to every other vertex (the set `V_{n-1}`).
    pub fn universal_vertices(&self) -> Vec<usize> {
        let full = mask_of(self.n);
        (0..self.n)
            .filter(|&v| self.adj[v] | (1 << v) == full)
            .collect()
    }

    pub fn complement(&self) -> Self {
        let full = mask_of(self.n);
        Self {
            n: self.n,
            adj: (0..self.n)
                .map(|v| full & !self.adj[v] & !(1 << v))
                .collect(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Induced subgraph on `vs`, relabelled `0..vs.len()` in the given order.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Self, GraphError> {
        let mut seen = 0u64;
        for &v in vs {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            if seen >> v & 1 == 1 {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen |= 1 << v;
        }
        let mut g = Self::empty(vs.len());
        for (a, &u) in vs.iter().enumerate() {
            for (b, &w) in vs.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    g.add_edge_unchecked(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = Self::empty(self.n + other.n);
        for (a, b) in self.edges() {
            g.add_edge_unchecked(a, b);
        }
        for (a, b) in other.edges() {
            g.add_edge_unchecked(self.n + a, self.n + b);
        }
        g
    }

    /// Simplicial join: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Self) -> Self {
        let mut g = self.disjoint_union(other);
        for a in 0..self.n {
            for b in 0..other.n {
                g.add_edge_unchecked(a, self.n + b);
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn connected_components(&self) -> ComponentDecomposition {
        decompose::connected_components(self)
    }

    pub fn join_decompose(&self) -> JoinDecomposition {
        decompose::join_decompose(self)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        is_isomorphic(self, other)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}


/// Every labelled graph on `n` vertices (`2^(n(n-1)/2)` of them); for tests and catalogs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let mut g = Graph::empty(n);
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge_unchecked(a, b);
            }
        }
        g
    })
}
