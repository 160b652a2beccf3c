//! Exact subgraph-copy counting.
//!
//! A copy of `H` in `G` is a subgraph of `G` isomorphic to `H`, counted once
//! no matter how many automorphisms it has. Cycles and paths are counted by
//! walking from the smallest vertex of each copy with bitset pruning and then
//! dividing by the orientation multiplicity; cliques and stars have direct
//! formulas; explicit patterns go through a generic embedding counter.

use std::collections::BTreeMap;

use crate::coloring::TwoColoring;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};
use crate::pattern::{PatternGraph, MAX_EXPLICIT_VERTICES};

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of subgraphs of `g` isomorphic to `h`.
pub fn count_copies(g: &SimpleGraph, h: &PatternGraph) -> Result<u128> {
    check_explicit(h)?;
    if h.vertex_count() > g.n() {
        return Ok(0);
    }
    Ok(match h {
        PatternGraph::Cycle(k) => count_cycles(g, *k),
        PatternGraph::Path(k) => count_paths(g, *k),
        PatternGraph::Star(1) => g.edge_count() as u128,
        PatternGraph::Star(k) => (0..g.n()).map(|v| binomial(g.degree(v) as u128, *k as u128)).sum(),
        PatternGraph::Complete(k) => count_cliques(g, VertexSet::full(g.n()), *k),
        PatternGraph::Explicit(p) => embedding_count(p, g) / h.automorphisms(),
    })
}

/// `(red copies, blue copies)` of `h` in the coloring.
pub fn mono_counts(c: &TwoColoring, h: &PatternGraph) -> Result<(u128, u128)> {
    Ok((count_copies(&c.red_graph(), h)?, count_copies(&c.blue_graph(), h)?))
}

/// Total monochromatic copies.
pub fn mono_total(c: &TwoColoring, h: &PatternGraph) -> Result<u128> {
    let (r, b) = mono_counts(c, h)?;
    Ok(r + b)
}

fn check_explicit(h: &PatternGraph) -> Result<()> {
    match h {
        PatternGraph::Explicit(p) if p.n() > MAX_EXPLICIT_VERTICES => {
            Err(Error::PatternTooLarge { got: p.n(), max: MAX_EXPLICIT_VERTICES })
        }
        _ => Ok(()),
    }
}

/// Bits strictly above `v`.
#[inline]
fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !((2u64 << v) - 1)
    }
}

pub fn count_cycles(g: &SimpleGraph, k: usize) -> u128 {
    let adj = g.rows();
    let mut total = 0u128;
    for a in 0..g.n() {
        let allowed = above(a) & VertexSet::full(g.n()).0;
        let close = adj[a] & allowed;
        if (close.count_ones() as usize) < 2 {
            continue;
        }
        total += cycle_walks(adj, close, allowed, a, 1u64 << a, k - 1);
    }
    total / 2
}

/// Walks `cur -> ... -> x` using `remaining` more vertices, all in `allowed`,
/// such that the last vertex is in `close`.
fn cycle_walks(adj: &[u64], close: u64, allowed: u64, cur: usize, used: u64, remaining: usize) -> u128 {
    let next = adj[cur] & allowed & !used;
    if remaining == 1 {
        return (next & close).count_ones() as u128;
    }
    let mut total = 0;
    let mut it = next;
    while it != 0 {
        let v = it.trailing_zeros() as usize;
        it &= it - 1;
        total += cycle_walks(adj, close, allowed, v, used | 1u64 << v, remaining - 1);
    }
    total
}

pub fn count_paths(g: &SimpleGraph, k: usize) -> u128 {
    let adj = g.rows();
    let mut ordered = 0u128;
    for s in 0..g.n() {
        ordered += path_walks(adj, s, 1u64 << s, k - 1);
    }
    ordered / 2
}

fn path_walks(adj: &[u64], cur: usize, used: u64, remaining: usize) -> u128 {
    let next = adj[cur] & !used;
    if remaining == 0 {
        return 1;
    }
    if remaining == 1 {
        return next.count_ones() as u128;
    }
    let mut total = 0;
    let mut it = next;
    while it != 0 {
        let v = it.trailing_zeros() as usize;
        it &= it - 1;
        total += path_walks(adj, v, used | 1u64 << v, remaining - 1);
    }
    total
}

/// Number of `k`-cliques inside `cand`.
pub fn count_cliques(g: &SimpleGraph, cand: VertexSet, k: usize) -> u128 {
    clique_rec(g.rows(), cand.0, k)
}

fn clique_rec(adj: &[u64], cand: u64, k: usize) -> u128 {
    match k {
        0 => 1,
        1 => cand.count_ones() as u128,
        _ => {
            let mut total = 0;
            let mut it = cand;
            while it != 0 {
                let v = it.trailing_zeros() as usize;
                it &= it - 1;
                total += clique_rec(adj, adj[v] & it, k - 1);
            }
            total
        }
    }
}

/// Simple paths from `u` to `v` with exactly `len` edges whose interior
/// avoids `avoid`.
pub fn count_paths_between(g: &SimpleGraph, u: usize, v: usize, len: usize, avoid: VertexSet) -> u128 {
    if u == v || len == 0 {
        return 0;
    }
    let adj = g.rows();
    if len == 1 {
        return g.has_edge(u, v) as u128;
    }
    let allowed = VertexSet::full(g.n()).0 & !avoid.0 & !(1u64 << v);
    let close = adj[v];
    cycle_walks(adj, close, allowed, u, 1u64 << u, len - 1)
}

/// Copies of `h` in `g` that use the edge `uv` (which must be present).
pub fn copies_through_edge(g: &SimpleGraph, h: &PatternGraph, u: usize, v: usize) -> u128 {
    debug_assert!(g.has_edge(u, v));
    through_edge_rows(g.rows(), h, u, v)
}

/// Row-level form of [`copies_through_edge`] used by the search hot loop.
pub(crate) fn through_edge_rows(adj: &[u64], h: &PatternGraph, u: usize, v: usize) -> u128 {
    let n = adj.len();
    if h.vertex_count() > n {
        return 0;
    }
    match h {
        PatternGraph::Cycle(k) => {
            let allowed = VertexSet::full(n).0 & !(1u64 << v);
            cycle_walks(adj, adj[v], allowed, u, 1u64 << u, k - 2)
        }
        PatternGraph::Path(k) => (0..=k - 2).map(|left| split_paths(adj, u, v, left, k - 2 - left)).sum(),
        PatternGraph::Star(1) => 1,
        PatternGraph::Star(k) => {
            let du = adj[u].count_ones() as u128;
            let dv = adj[v].count_ones() as u128;
            binomial(du - 1, *k as u128 - 1) + binomial(dv - 1, *k as u128 - 1)
        }
        PatternGraph::Complete(k) => clique_rec(adj, adj[u] & adj[v], k - 2),
        PatternGraph::Explicit(p) => {
            let g = SimpleGraph::from_rows(adj.to_vec()).expect("search rows are symmetric");
            let mut emb = 0;
            for (a, b) in p.edges() {
                emb += embeddings_fixed(p, &g, &[(a, u), (b, v)]);
                emb += embeddings_fixed(p, &g, &[(a, v), (b, u)]);
            }
            emb / h.automorphisms()
        }
    }
}

/// Paths `x_left .. u v .. x_right` with `left` edges hanging off `u` and
/// `right` edges hanging off `v`.
fn split_paths(adj: &[u64], u: usize, v: usize, left: usize, right: usize) -> u128 {
    fn extend_left(adj: &[u64], cur: usize, used: u64, left: usize, v: usize, right: usize) -> u128 {
        if left == 0 {
            return path_walks(adj, v, used, right);
        }
        let mut total = 0;
        let mut it = adj[cur] & !used;
        while it != 0 {
            let w = it.trailing_zeros() as usize;
            it &= it - 1;
            total += extend_left(adj, w, used | 1u64 << w, left - 1, v, right);
        }
        total
    }
    extend_left(adj, u, (1u64 << u) | (1u64 << v), left, v, right)
}

/// Number of injective homomorphisms `p -> g`.
pub fn embedding_count(p: &SimpleGraph, g: &SimpleGraph) -> u128 {
    embeddings_fixed(p, g, &[])
}

/// Injective homomorphisms `p -> g` agreeing with the given partial map.
fn embeddings_fixed(p: &SimpleGraph, g: &SimpleGraph, fixed: &[(usize, usize)]) -> u128 {
    let k = p.n();
    if k > g.n() {
        return 0;
    }
    let mut image = vec![usize::MAX; k];
    let mut used = 0u64;
    for &(a, x) in fixed {
        if image[a] != usize::MAX || (used >> x) & 1 == 1 {
            return 0;
        }
        image[a] = x;
        used |= 1u64 << x;
    }
    for &(a, _) in fixed {
        for b in p.neighbors(a).iter() {
            if image[b] != usize::MAX && !g.has_edge(image[a], image[b]) {
                return 0;
            }
        }
    }
    // Map remaining pattern vertices in an order that keeps the mapped part connected where possible.
    let mut order = Vec::with_capacity(k);
    let mut placed: VertexSet = fixed.iter().map(|&(a, _)| a).collect();
    while order.len() + fixed.len() < k {
        let next = (0..k)
            .filter(|&a| !placed.contains(a))
            .max_by_key(|&a| (p.neighbors(a).intersection(placed).len(), p.degree(a)))
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    fn go(p: &SimpleGraph, g: &SimpleGraph, order: &[usize], image: &mut [usize], used: u64) -> u128 {
        let Some((&a, rest)) = order.split_first() else { return 1 };
        let mut cand = crate::graph::VertexSet::full(g.n()).0 & !used;
        for b in p.neighbors(a).iter() {
            if image[b] != usize::MAX {
                cand &= g.rows()[image[b]];
            }
        }
        let mut total = 0;
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            image[a] = x;
            total += go(p, g, rest, image, used | 1u64 << x);
        }
        image[a] = usize::MAX;
        total
    }
    go(p, g, &order, &mut image, used)
}

/// A cycle of length exactly `t`, as its vertex sequence, if one exists.
pub fn find_cycle(g: &SimpleGraph, t: usize) -> Option<Vec<usize>> {
    if t < 3 || t > g.n() {
        return None;
    }
    let adj = g.rows();
    fn go(adj: &[u64], anchor: usize, allowed: u64, path: &mut Vec<usize>, used: u64, t: usize) -> bool {
        let cur = *path.last().unwrap();
        let next = adj[cur] & allowed & !used;
        if path.len() == t - 1 {
            let close = next & adj[anchor];
            if close != 0 {
                path.push(close.trailing_zeros() as usize);
                return true;
            }
            return false;
        }
        let mut it = next;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            path.push(v);
            if go(adj, anchor, allowed, path, used | 1u64 << v, t) {
                return true;
            }
            path.pop();
        }
        false
    }
    for a in 0..g.n() {
        let allowed = above(a) & VertexSet::full(g.n()).0;
        if ((adj[a] & allowed).count_ones() as usize) < 2 {
            continue;
        }
        let mut path = vec![a];
        if go(adj, a, allowed, &mut path, 1u64 << a, t) {
            return Some(path);
        }
    }
    None
}

/// Cycle lengths in `[3, max_len]` present in `g`, each with one witness.
pub fn cycle_spectrum(g: &SimpleGraph, max_len: usize) -> BTreeMap<usize, Vec<usize>> {
    (3..=max_len.min(g.n())).filter_map(|t| find_cycle(g, t).map(|c| (t, c))).collect()
}

/// True when `cycle` is a cycle of `g` (distinct vertices, consecutive and
/// closing pairs adjacent).
pub fn is_cycle_in(g: &SimpleGraph, cycle: &[usize]) -> bool {
    let t = cycle.len();
    if t < 3 {
        return false;
    }
    let set: VertexSet = cycle.iter().copied().collect();
    set.len() == t && (0..t).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % t]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> SimpleGraph {
        SimpleGraph::complete(n).unwrap()
    }

    #[test]
    fn cycles_in_complete_graphs() {
        assert_eq!(count_copies(&k(5), &PatternGraph::Cycle(5)).unwrap(), 12);
        assert_eq!(count_copies(&k(9), &PatternGraph::Cycle(5)).unwrap(), 1512);
        assert_eq!(count_copies(&k(4), &PatternGraph::Cycle(3)).unwrap(), 4);
    }

    #[test]
    fn bipartite_has_no_odd_cycles() {
        let g = SimpleGraph::complete_bipartite(5, 4).unwrap();
        assert_eq!(count_copies(&g, &PatternGraph::Cycle(5)).unwrap(), 0);
        // C(5,2) * C(4,2) four-cycles
        assert_eq!(count_copies(&g, &PatternGraph::Cycle(4)).unwrap(), 60);
    }

    #[test]
    fn paths_in_k4() {
        assert_eq!(count_copies(&k(4), &PatternGraph::Path(3)).unwrap(), 12);
        assert_eq!(count_copies(&k(4), &PatternGraph::Path(2)).unwrap(), 6);
    }

    #[test]
    fn pattern_larger_than_host_counts_zero() {
        assert_eq!(count_copies(&k(4), &PatternGraph::Cycle(5)).unwrap(), 0);
    }

    #[test]
    fn stars_and_cliques() {
        assert_eq!(count_copies(&k(5), &PatternGraph::Star(3)).unwrap(), 5 * 4);
        assert_eq!(count_copies(&k(6), &PatternGraph::Complete(3)).unwrap(), 20);
        assert_eq!(count_copies(&k(6), &PatternGraph::Star(1)).unwrap(), 15);
    }

    #[test]
    fn explicit_matches_named_patterns() {
        let g = SimpleGraph::complete_bipartite(3, 4).unwrap();
        for h in [PatternGraph::Cycle(4), PatternGraph::Path(4), PatternGraph::Star(2)] {
            let e = PatternGraph::Explicit(h.to_graph());
            assert_eq!(count_copies(&g, &h).unwrap(), count_copies(&g, &e).unwrap(), "{h}");
        }
    }

    #[test]
    fn oversized_explicit_is_an_error() {
        let big = PatternGraph::Explicit(SimpleGraph::cycle(11).unwrap());
        assert!(matches!(count_copies(&k(12), &big), Err(Error::PatternTooLarge { .. })));
    }

    #[test]
    fn edge_deltas_sum_to_edge_multiplicity() {
        // Summing copies-through-edge over all edges counts each copy |E(H)| times.
        let mut g = k(7);
        g.remove_edge(0, 3);
        g.remove_edge(2, 5);
        g.remove_edge(4, 6);
        for h in [
            PatternGraph::Cycle(4),
            PatternGraph::Cycle(5),
            PatternGraph::Path(4),
            PatternGraph::Star(3),
            PatternGraph::Star(1),
            PatternGraph::Complete(3),
            PatternGraph::Explicit(SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()),
        ] {
            let through: u128 = g.edges().map(|(u, v)| copies_through_edge(&g, &h, u, v)).sum();
            let total = count_copies(&g, &h).unwrap();
            assert_eq!(through, total * h.edge_count() as u128, "{h}");
        }
    }

    #[test]
    fn spectrum_examples() {
        let spectrum = cycle_spectrum(&k(5), 5);
        assert_eq!(spectrum.keys().copied().collect::<Vec<_>>(), vec![3, 4, 5]);
        let kb = SimpleGraph::complete_bipartite(3, 3).unwrap();
        let spectrum = cycle_spectrum(&kb, 6);
        assert_eq!(spectrum.keys().copied().collect::<Vec<_>>(), vec![4, 6]);
        for w in spectrum.values() {
            assert!(is_cycle_in(&kb, w));
        }
        let c7 = SimpleGraph::cycle(7).unwrap();
        assert_eq!(cycle_spectrum(&c7, 7).keys().copied().collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn paths_between_in_complete_graph() {
        // u..v with 2 interior vertices chosen in order from the other 3.
        assert_eq!(count_paths_between(&k(5), 0, 1, 3, VertexSet::EMPTY), 6);
        assert_eq!(count_paths_between(&k(5), 0, 1, 3, VertexSet::singleton(2)), 2);
    }
}
