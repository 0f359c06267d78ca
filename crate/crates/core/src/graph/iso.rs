use super::{bits, Graph};

/// Exhaustive isomorphism test by backtracking. Candidates are restricted to
/// vertices with the same degree and the same multiset of neighbour degrees;
/// adjacency to already-mapped vertices is checked at every step.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let sig1 = signatures(g1);
    let sig2 = signatures(g2);
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return false;
    }

    // map high-degree vertices first: they constrain the rest most
    let mut order: Vec<usize> = (0..g1.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sig1[v].0));

    let mut mapping = vec![usize::MAX; g1.n()];
    let mut used = 0u64;
    extend(g1, g2, &sig1, &sig2, &order, 0, &mut mapping, &mut used)
}

type Signature = (usize, Vec<usize>);

fn signatures(g: &Graph) -> Vec<Signature> {
    let deg = g.degrees();
    (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = bits(g.neighbours(v)).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    sig1: &[Signature],
    sig2: &[Signature],
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut u64,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..g2.n() {
        if *used >> w & 1 == 1 || sig1[v] != sig2[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.has_edge(u, v) == g2.has_edge(mapping[u], w));
        if !consistent {
            continue;
        }
        mapping[v] = w;
        *used |= 1 << w;
        if extend(g1, g2, sig1, sig2, order, depth + 1, mapping, used) {
            return true;
        }
        *used &= !(1 << w);
        mapping[v] = usize::MAX;
    }
    false
}
