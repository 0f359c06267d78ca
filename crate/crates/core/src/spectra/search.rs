//! Bounded enumeration of automorphisms of `G_Γ` with zero t-parts.
//!
//! A candidate is an n×n integer matrix with entries in `[-B, B]` that
//! preserves every edge relation and has determinant ±1. Columns are placed
//! one at a time. Pruning:
//!
//! * every column is a primitive vector (a column of a unimodular matrix);
//! * degree filtration: a nonzero entry at `(r, c)` needs `deg r >= deg c`;
//! * edge relations are checked as soon as both endpoint columns are placed;
//! * component permutation: each connected component of the non-isolated
//!   part maps into a single isomorphic component, injectively;
//! * before the last column the cofactor vector is computed once; if its
//!   entries are not coprime no completion can have determinant ±1.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactlin::{ExtNat, IntMatrix};
use crate::graph::{is_isomorphic, Graph};
use crate::morphism::{endo_from_matrix, Endo};
use crate::nilgroup::Presentation;
use crate::par::{self, Strategy};

/// Largest vertex count the search kernel handles.
pub const MAX_SEARCH_VERTICES: usize = 8;

/// Default node budget for a single search.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const MAXN: usize = MAX_SEARCH_VERTICES;
const NO_COMP: u8 = u8::MAX;
const BUDGET_CHUNK: u64 = 1 << 14;

type Col = [i64; MAXN];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search bound must be at least 1, got {0}")]
    BoundTooSmall(i64),
    #[error("search handles at most {MAX_SEARCH_VERTICES} vertices, graph has {0}")]
    TooManyVertices(usize),
    #[error("search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub bound: i64,
    /// Abort once this many nodes have been visited.
    pub budget: Option<u64>,
    pub filtration_pruning: bool,
    pub component_pruning: bool,
    pub strategy: Strategy,
}

impl SearchOptions {
    pub fn new(bound: i64) -> Self {
        Self {
            bound,
            budget: Some(DEFAULT_BUDGET),
            filtration_pruning: true,
            component_pruning: true,
            strategy: Strategy::default(),
        }
    }

    /// No structural pruning: only primitivity, relations and the determinant.
    pub fn unpruned(bound: i64) -> Self {
        Self {
            filtration_pruning: false,
            component_pruning: false,
            ..Self::new(bound)
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// An automorphism matrix found by the search, small entries only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct AutMatrix {
    // row-major, so the derived ordering is lexicographic on rows
    rows: Vec<Vec<i64>>,
}

impl AutMatrix {
    fn from_cols(n: usize, cols: &[Col]) -> Self {
        Self {
            rows: (0..n)
                .map(|r| (0..n).map(|c| cols[c][r]).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows).expect("square by construction")
    }
}

impl std::fmt::Debug for AutMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl From<AutMatrix> for Vec<Vec<i64>> {
    fn from(m: AutMatrix) -> Self {
        m.rows
    }
}

impl TryFrom<Vec<Vec<i64>>> for AutMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, String> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err("matrix must be square".into());
        }
        Ok(Self { rows })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub automorphisms: u64,
}

/// Finite Reidemeister numbers found, each with its lexicographically
/// smallest witness, plus counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchResult {
    pub witnesses: BTreeMap<BigUint, AutMatrix>,
    pub infinite: u64,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn observed(&self) -> Vec<BigUint> {
        self.witnesses.keys().cloned().collect()
    }
}

/// Reidemeister number of a relation-preserving unimodular matrix, computed
/// with machine integers where they suffice.
pub fn fast_reidemeister(g: &Graph, m: &AutMatrix) -> ExtNat {
    let n = g.n();
    let nonedges = g.nonedges();
    let mut id_minus = vec![0i128; n * n];
    for r in 0..n {
        for c in 0..n {
            id_minus[r * n + c] = i128::from(r == c) - i128::from(m.get(r, c));
        }
    }
    let big_n = nonedges.len();
    let mut id_minus2 = vec![0i128; big_n * big_n];
    for (a, &(ia, ja)) in nonedges.iter().enumerate() {
        for (b, &(ib, jb)) in nonedges.iter().enumerate() {
            let minor = i128::from(m.get(ja, jb)) * i128::from(m.get(ia, ib))
                - i128::from(m.get(ia, jb)) * i128::from(m.get(ja, ib));
            id_minus2[a * big_n + b] = i128::from(a == b) - minor;
        }
    }
    match (det_i128(id_minus, n), det_i128(id_minus2, big_n)) {
        (Some(d1), Some(d2)) => {
            if d1 == 0 || d2 == 0 {
                ExtNat::Infinite
            } else {
                let v = BigUint::from(d1.unsigned_abs()) * BigUint::from(d2.unsigned_abs());
                ExtNat::Finite(v)
            }
        }
        _ => {
            let p = Presentation::new(g.clone());
            endo_from_matrix(&p, &m.to_int_matrix())
                .and_then(|e| e.reidemeister_number())
                .map(|r| r.r)
                .expect("search only yields automorphisms")
        }
    }
}

/// Bareiss elimination with overflow detection.
fn det_i128(mut a: Vec<i128>, n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        let piv = a[k * n + k];
        for r in k + 1..n {
            for c in k + 1..n {
                let v = piv
                    .checked_mul(a[r * n + c])?
                    .checked_sub(a[r * n + k].checked_mul(a[k * n + c])?)?;
                a[r * n + c] = v / prev;
            }
            a[r * n + k] = 0;
        }
        prev = piv;
    }
    sign.checked_mul(a[n * n - 1])
}

struct Kernel {
    n: usize,
    order: Vec<usize>,
    cands: Vec<Vec<Col>>,
    /// Support component of each candidate, `NO_COMP` outside component mode.
    cand_comp: Vec<Vec<u8>>,
    nonedges: Vec<(usize, usize)>,
    /// For each depth, the already placed neighbours of `order[depth]`.
    placed_nbrs: Vec<Vec<usize>>,
    /// Source component of each vertex when component pruning is active.
    vertex_comp: Vec<u8>,
    budget: Option<u64>,
    visited: AtomicU64,
    aborted: AtomicBool,
}

struct State {
    cols: [Col; MAXN],
    target: [u8; MAXN],
    target_refs: [u8; MAXN],
    used_targets: u64,
    nodes: u64,
    pending: u64,
}

impl State {
    fn new() -> Self {
        Self {
            cols: [[0; MAXN]; MAXN],
            target: [NO_COMP; MAXN],
            target_refs: [0; MAXN],
            used_targets: 0,
            nodes: 0,
            pending: 0,
        }
    }
}

impl Kernel {
    fn new(g: &Graph, opts: &SearchOptions) -> Self {
        let n = g.n();
        let deg = g.degrees();
        let bound = opts.bound;

        let decomposition = g.connected_components();
        let comps = &decomposition.components;
        let mut vertex_comp = vec![NO_COMP; n];
        if opts.component_pruning {
            for (k, c) in comps.iter().enumerate() {
                for &v in c {
                    vertex_comp[v] = k as u8;
                }
            }
        }
        let subs: Vec<Graph> = comps
            .iter()
            .map(|c| g.induced_subgraph(c).expect("component vertices are valid"))
            .collect();
        let comp_iso: Vec<Vec<bool>> = subs
            .iter()
            .map(|a| subs.iter().map(|b| is_isomorphic(a, b)).collect())
            .collect();
        // component of each row, for reading off a candidate's support
        let mut row_comp = vec![NO_COMP; n];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                row_comp[v] = k as u8;
            }
        }

        let all = primitive_vectors(n, bound);
        let mut cands = Vec::with_capacity(n);
        let mut cand_comp = Vec::with_capacity(n);
        for c in 0..n {
            let mut list = Vec::new();
            let mut comp_list = Vec::new();
            for v in &all {
                if opts.filtration_pruning && (0..n).any(|r| v[r] != 0 && deg[r] < deg[c]) {
                    continue;
                }
                let mut support_comp = NO_COMP;
                if vertex_comp[c] != NO_COMP {
                    let mut ok = true;
                    for r in (0..n).filter(|&r| v[r] != 0) {
                        let rc = row_comp[r];
                        if rc == NO_COMP || (support_comp != NO_COMP && rc != support_comp) {
                            ok = false;
                            break;
                        }
                        support_comp = rc;
                    }
                    if !ok || !comp_iso[vertex_comp[c] as usize][support_comp as usize] {
                        continue;
                    }
                }
                list.push(*v);
                comp_list.push(support_comp);
            }
            cands.push(list);
            cand_comp.push(comp_list);
        }

        let order = column_order(g, &cands);
        let placed_nbrs = (0..n)
            .map(|d| {
                order[..d]
                    .iter()
                    .copied()
                    .filter(|&u| g.has_edge(u, order[d]))
                    .collect()
            })
            .collect();

        Self {
            n,
            order,
            cands,
            cand_comp,
            nonedges: g.nonedges(),
            placed_nbrs,
            vertex_comp,
            budget: opts.budget,
            visited: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    fn tick(&self, st: &mut State) -> bool {
        st.nodes += 1;
        st.pending += 1;
        if st.pending >= BUDGET_CHUNK {
            self.flush(st);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn flush(&self, st: &mut State) {
        let total = self.visited.fetch_add(st.pending, Ordering::Relaxed) + st.pending;
        st.pending = 0;
        if self.budget.is_some_and(|b| total > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
    }

    fn relations_ok(&self, depth: usize, v: &Col, st: &State) -> bool {
        self.placed_nbrs[depth].iter().all(|&u| {
            let w = &st.cols[u];
            self.nonedges
                .iter()
                .all(|&(p, q)| v[q] * w[p] == v[p] * w[q])
        })
    }

    /// Claim the target component for the column at `depth`; returns false
    /// if that would break the permutation structure.
    fn enter_comp(&self, depth: usize, idx: usize, st: &mut State) -> bool {
        let c = self.order[depth];
        let src = self.vertex_comp[c];
        if src == NO_COMP {
            return true;
        }
        let s = src as usize;
        let t = self.cand_comp[c][idx];
        if st.target[s] == NO_COMP {
            if st.used_targets >> t & 1 == 1 {
                return false;
            }
            st.target[s] = t;
            st.used_targets |= 1 << t;
        } else if st.target[s] != t {
            return false;
        }
        st.target_refs[s] += 1;
        true
    }

    fn leave_comp(&self, depth: usize, st: &mut State) {
        let src = self.vertex_comp[self.order[depth]];
        if src == NO_COMP {
            return;
        }
        let s = src as usize;
        st.target_refs[s] -= 1;
        if st.target_refs[s] == 0 {
            st.used_targets &= !(1 << st.target[s]);
            st.target[s] = NO_COMP;
        }
    }

    fn try_place(&self, depth: usize, idx: usize, st: &mut State) -> bool {
        let c = self.order[depth];
        let v = &self.cands[c][idx];
        if !self.relations_ok(depth, v, st) {
            return false;
        }
        if !self.enter_comp(depth, idx, st) {
            return false;
        }
        st.cols[c] = *v;
        true
    }

    fn run<F: FnMut(&AutMatrix)>(&self, depth: usize, st: &mut State, visit: &mut F) {
        let c = self.order[depth];
        if depth + 1 == self.n {
            self.last_column(depth, st, visit);
            return;
        }
        for idx in 0..self.cands[c].len() {
            if !self.tick(st) {
                return;
            }
            if !self.try_place(depth, idx, st) {
                continue;
            }
            self.run(depth + 1, st, visit);
            self.leave_comp(depth, st);
        }
    }

    fn last_column<F: FnMut(&AutMatrix)>(&self, depth: usize, st: &mut State, visit: &mut F) {
        let n = self.n;
        let c = self.order[depth];
        let cof = cofactors(n, c, &st.cols);
        if cof.iter().fold(0i128, |g, x| g.gcd(x)) != 1 {
            return;
        }
        for idx in 0..self.cands[c].len() {
            if !self.tick(st) {
                return;
            }
            let v = &self.cands[c][idx];
            let det: i128 = (0..n).map(|r| i128::from(v[r]) * cof[r]).sum();
            if det.abs() != 1 || !self.try_place(depth, idx, st) {
                continue;
            }
            visit(&AutMatrix::from_cols(n, &st.cols));
            self.leave_comp(depth, st);
        }
    }

    /// All valid placements of the first `depth` columns, used to split work.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut st = State::new();
        let mut path = Vec::new();
        self.collect_prefixes(0, depth, &mut st, &mut path, &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        depth: usize,
        target: usize,
        st: &mut State,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == target {
            out.push(path.clone());
            return;
        }
        let c = self.order[depth];
        for idx in 0..self.cands[c].len() {
            if !self.try_place(depth, idx, st) {
                continue;
            }
            path.push(idx);
            self.collect_prefixes(depth + 1, target, st, path, out);
            path.pop();
            self.leave_comp(depth, st);
        }
    }

    fn run_from_prefix<F: FnMut(&AutMatrix)>(&self, prefix: &[usize], visit: &mut F) -> u64 {
        let mut st = State::new();
        for (depth, &idx) in prefix.iter().enumerate() {
            let placed = self.try_place(depth, idx, &mut st);
            debug_assert!(placed);
        }
        st.nodes += prefix.len() as u64;
        st.pending += prefix.len() as u64;
        if prefix.len() == self.n {
            visit(&AutMatrix::from_cols(self.n, &st.cols));
        } else {
            self.run(prefix.len(), &mut st, visit);
        }
        self.flush(&mut st);
        st.nodes
    }
}

/// Greedy column order: start with the most constrained column, then keep
/// taking the column with the most already placed neighbours.
fn column_order(g: &Graph, cands: &[Vec<Col>]) -> Vec<usize> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&c| !placed[c])
            .min_by_key(|&c| {
                let links = order.iter().filter(|&&u| g.has_edge(u, c)).count();
                (std::cmp::Reverse(links), cands[c].len(), c)
            })
            .expect("an unplaced column remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Nonzero vectors in `[-B, B]^n` whose entries have gcd 1.
fn primitive_vectors(n: usize, bound: i64) -> Vec<Col> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut v = [0i64; MAXN];
        let mut rest = code;
        for e in v.iter_mut().take(n) {
            *e = (rest % side) as i64 - bound;
            rest /= side;
        }
        if v[..n].iter().fold(0i64, |g, x| g.gcd(x)) == 1 {
            out.push(v);
        }
    }
    out
}

/// Signed cofactors of column `c`, from the other columns of `cols`.
fn cofactors(n: usize, c: usize, cols: &[Col]) -> Vec<i128> {
    let others: Vec<usize> = (0..n).filter(|&k| k != c).collect();
    (0..n)
        .map(|r| {
            let rows: Vec<usize> = (0..n).filter(|&k| k != r).collect();
            let mut m = Vec::with_capacity((n - 1) * (n - 1));
            for &rr in &rows {
                for &cc in &others {
                    m.push(i128::from(cols[cc][rr]));
                }
            }
            let d = det_i128(m, n - 1).expect("entries are tiny");
            if (r + c) % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn check_input(g: &Graph, opts: &SearchOptions) -> Result<(), SearchError> {
    if opts.bound < 1 {
        return Err(SearchError::BoundTooSmall(opts.bound));
    }
    if g.n() > MAX_SEARCH_VERTICES {
        return Err(SearchError::TooManyVertices(g.n()));
    }
    Ok(())
}

/// Visit every automorphism in the search space, folding per-worker
/// accumulators with `merge`. Visiting order is unspecified.
pub fn fold_automorphisms<A, I, F, M>(
    g: &Graph,
    opts: &SearchOptions,
    init: I,
    visit: F,
    merge: M,
) -> Result<(A, SearchStats), SearchError>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &AutMatrix) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    check_input(g, opts)?;
    if g.n() == 0 {
        let mut acc = init();
        visit(&mut acc, &AutMatrix { rows: Vec::new() });
        return Ok((
            acc,
            SearchStats {
                nodes: 0,
                automorphisms: 1,
            },
        ));
    }
    let kernel = Kernel::new(g, opts);
    let split = (g.n() - 1).min(2);
    let prefixes = kernel.prefixes(split);
    let (acc, nodes, count) = par::map_reduce(
        opts.strategy,
        &prefixes,
        |prefix| {
            let mut acc = init();
            let mut count = 0u64;
            let nodes = kernel.run_from_prefix(prefix, &mut |m: &AutMatrix| {
                count += 1;
                visit(&mut acc, m);
            });
            (acc, nodes, count)
        },
        || (init(), 0, 0),
        |a, b| (merge(a.0, b.0), a.1 + b.1, a.2 + b.2),
    );
    if kernel.aborted.load(Ordering::Relaxed) {
        return Err(SearchError::BudgetExceeded {
            budget: opts.budget.unwrap_or(u64::MAX),
        });
    }
    Ok((
        acc,
        SearchStats {
            nodes,
            automorphisms: count,
        },
    ))
}

/// All automorphism matrices in the search space, sorted.
pub fn automorphism_matrices(
    g: &Graph,
    opts: &SearchOptions,
) -> Result<Vec<AutMatrix>, SearchError> {
    let (mut all, _) = fold_automorphisms(
        g,
        opts,
        Vec::new,
        |acc: &mut Vec<AutMatrix>, m| acc.push(m.clone()),
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    all.sort();
    Ok(all)
}

/// Every relation-preserving matrix with entries in `[-B, B]` and
/// determinant ±1, as an Endo with zero t-parts, in lexicographic order.
pub fn enumerate_automorphisms(p: &Presentation, bound: i64) -> Result<Vec<Endo>, SearchError> {
    let mats = automorphism_matrices(p.graph(), &SearchOptions::new(bound))?;
    Ok(mats
        .iter()
        .map(|m| {
            endo_from_matrix(p, &m.to_int_matrix()).expect("search output preserves relations")
        })
        .collect())
}

fn insert_witness(map: &mut BTreeMap<BigUint, AutMatrix>, v: BigUint, m: AutMatrix) {
    match map.get(&v) {
        Some(old) if *old <= m => {}
        _ => {
            map.insert(v, m);
        }
    }
}

/// Reidemeister numbers of all automorphisms in the search space.
pub fn search_spectrum(g: &Graph, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    let ((witnesses, infinite), stats) = fold_automorphisms(
        g,
        opts,
        || (BTreeMap::new(), 0u64),
        |acc: &mut (BTreeMap<BigUint, AutMatrix>, u64), m| match fast_reidemeister(g, m) {
            ExtNat::Finite(v) => insert_witness(&mut acc.0, v, m.clone()),
            ExtNat::Infinite => acc.1 += 1,
        },
        |(mut wa, ia), (wb, ib)| {
            for (v, m) in wb {
                insert_witness(&mut wa, v, m);
            }
            (wa, ia + ib)
        },
    )?;
    Ok(SearchResult {
        witnesses,
        infinite,
        stats,
    })
}

/// Recompute a witness through the arbitrary-precision path.
pub fn verify_witness(g: &Graph, m: &AutMatrix) -> Option<ExtNat> {
    let p = Presentation::new(g.clone());
    let e = endo_from_matrix(&p, &m.to_int_matrix()).ok()?;
    e.reidemeister_number().ok().map(|r| r.r)
}

/// True when column `c` of `m` only uses rows of degree at least `deg c`.
pub fn respects_filtration(g: &Graph, m: &AutMatrix) -> bool {
    let deg = g.degrees();
    (0..g.n()).all(|c| (0..g.n()).all(|r| m.get(r, c) == 0 || deg[r] >= deg[c]))
}

/// The component permutation induced by `m`, if its column supports define one.
pub fn component_permutation(g: &Graph, m: &AutMatrix) -> Option<Vec<usize>> {
    let d = g.connected_components();
    let comp_of_row = |r: usize| d.component_of(r);
    let mut sigma = vec![usize::MAX; d.components.len()];
    for (k, comp) in d.components.iter().enumerate() {
        for &c in comp {
            let mut target = None;
            for r in (0..g.n()).filter(|&r| m.get(r, c) != 0) {
                let t = comp_of_row(r)?;
                if target.is_some_and(|x| x != t) {
                    return None;
                }
                target = Some(t);
            }
            let t = target?;
            if sigma[k] != usize::MAX && sigma[k] != t {
                return None;
            }
            sigma[k] = t;
        }
    }
    let mut seen = sigma.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != sigma.len() {
        return None;
    }
    let isomorphic = sigma.iter().enumerate().all(|(k, &t)| {
        is_isomorphic(
            &g.induced_subgraph(&d.components[k]).expect("valid"),
            &g.induced_subgraph(&d.components[t]).expect("valid"),
        )
    });
    isomorphic.then_some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph, bound: i64) -> Vec<AutMatrix> {
        // every matrix in [-B, B]^{n×n}, no pruning at all
        let n = g.n();
        let p = Presentation::new(g.clone());
        let side = (2 * bound + 1) as u64;
        let mut out = Vec::new();
        for code in 0..side.pow((n * n) as u32) {
            let mut rest = code;
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let e = (rest % side) as i64 - bound;
                            rest /= side;
                            e
                        })
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            if m.is_unimodular() && endo_from_matrix(&p, &m).is_ok() {
                out.push(AutMatrix { rows });
            }
        }
        out.sort();
        out
    }

    #[test]
    fn abelian_rank_two_count() {
        let mats = automorphism_matrices(&Graph::complete(2), &SearchOptions::new(1)).unwrap();
        assert_eq!(mats, brute_force(&Graph::complete(2), 1));
        assert_eq!(mats.len(), 40);
    }

    #[test]
    fn matches_brute_force_small() {
        for g in [
            Graph::empty(2),
            Graph::path(3),
            Graph::complete_plus_isolated(3),
            Graph::empty(3),
        ] {
            let mats = automorphism_matrices(&g, &SearchOptions::new(1)).unwrap();
            assert_eq!(mats, brute_force(&g, 1), "{g:?}");
        }
    }

    #[test]
    fn pruning_is_lossless_small() {
        for n in 1..=3 {
            for g in crate::graph::all_graphs(n) {
                let pruned = automorphism_matrices(&g, &SearchOptions::new(2)).unwrap();
                let plain = automorphism_matrices(&g, &SearchOptions::unpruned(2)).unwrap();
                assert_eq!(pruned, plain, "{g:?}");
            }
        }
    }

    // count and order-independent hash of the enumerated matrices
    fn fingerprint(g: &Graph, opts: &SearchOptions) -> (u64, u64) {
        use std::hash::{DefaultHasher, Hash, Hasher};
        fold_automorphisms(
            g,
            opts,
            || (0u64, 0u64),
            |acc, m| {
                let mut h = DefaultHasher::new();
                m.hash(&mut h);
                acc.0 += 1;
                acc.1 = acc.1.wrapping_add(h.finish());
            },
            |a, b| (a.0 + b.0, a.1.wrapping_add(b.1)),
        )
        .unwrap()
        .0
    }

    #[test]
    fn pruning_is_lossless_n4() {
        for e in crate::spectra::catalog::four_vertex_catalog() {
            if matches!(e.name, "4K1" | "K4") {
                continue;
            }
            let g = e.graph();
            assert_eq!(
                fingerprint(&g, &SearchOptions::new(1)),
                fingerprint(&g, &SearchOptions::unpruned(1)),
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn strategies_agree() {
        let g = Graph::cycle(4);
        let seq = search_spectrum(
            &g,
            &SearchOptions::new(2).with_strategy(Strategy::Sequential),
        )
        .unwrap();
        let par =
            search_spectrum(&g, &SearchOptions::new(2).with_strategy(Strategy::Parallel)).unwrap();
        assert_eq!(seq.witnesses, par.witnesses);
        assert_eq!(seq.infinite, par.infinite);
        assert_eq!(seq.stats, par.stats);
    }

    #[test]
    fn budget_guard() {
        let err = search_spectrum(
            &Graph::cycle(4),
            &SearchOptions::new(2).with_budget(Some(1000)),
        )
        .unwrap_err();
        assert_eq!(err, SearchError::BudgetExceeded { budget: 1000 });
    }

    #[test]
    fn input_checks() {
        assert_eq!(
            search_spectrum(&Graph::empty(2), &SearchOptions::new(0)).unwrap_err(),
            SearchError::BoundTooSmall(0)
        );
        assert_eq!(
            search_spectrum(&Graph::empty(9), &SearchOptions::new(1)).unwrap_err(),
            SearchError::TooManyVertices(9)
        );
    }

    #[test]
    fn fast_path_matches_exact_path() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = search_spectrum(&g, &SearchOptions::new(1)).unwrap();
        assert!(!r.witnesses.is_empty());
        for (v, m) in &r.witnesses {
            assert_eq!(verify_witness(&g, m), Some(ExtNat::Finite(v.clone())));
        }
    }

    #[test]
    fn det_i128_examples() {
        assert_eq!(det_i128(vec![2, 1, 1, 1], 2), Some(1));
        assert_eq!(det_i128(vec![0, 1, 1, 0], 2), Some(-1));
        assert_eq!(det_i128(vec![1, 2, 2, 4], 2), Some(0));
        assert_eq!(det_i128(vec![0, 0, 1, 0, 1, 0, 1, 0, 0], 3), Some(-1));
        assert_eq!(det_i128(vec![i128::MAX, 2, 2, i128::MAX], 2), None);
    }

    #[test]
    fn structure_checks() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let swap = AutMatrix::try_from(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(component_permutation(&g, &swap), Some(vec![1, 0]));
        let mixed = AutMatrix::try_from(vec![
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(component_permutation(&g, &mixed), None);
        let p3 = Graph::path(3);
        let bad = AutMatrix::try_from(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(!respects_filtration(&p3, &bad));
    }
}
