//! Cycle-count lower bounds from local structure, each paired with a
//! verifier that checks the hypotheses on a concrete graph and brute-counts.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::count::count_cycles;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    /// Closed-form bound as evaluated (before flooring).
    pub bound_value: f64,
    /// Integer threshold the count is compared against.
    pub bound: u128,
    pub exact_count: u128,
    pub pass: bool,
}

pub(crate) fn floor_bound(x: f64) -> u128 {
    if !x.is_finite() || x < 1.0 {
        0
    } else {
        // One ulp of slack so a value sitting on an integer is not rounded up.
        let down = f64::from_bits(x.to_bits() - 1);
        down.floor() as u128
    }
}

fn odd_in_range(l: usize, lo: usize, hi: usize, what: &str) -> Result<()> {
    if l.is_multiple_of(2) {
        return Err(Error::pre(format!("cycle length {l} must be odd")));
    }
    in_range(l, lo, hi, what)
}

fn in_range(l: usize, lo: usize, hi: usize, what: &str) -> Result<()> {
    if l < lo || l > hi {
        return Err(Error::pre(format!("cycle length {l} outside [{lo}, {hi}] ({what})")));
    }
    Ok(())
}

/// `(s - (l-3)/2)^((l-1)/2) * (|S| - (l-1)/2)^((l-3)/2)`, exact.
pub fn claim_common_neighbor_bound(s: usize, s_size: usize, l: usize) -> Result<u128> {
    let hi = (2 * s + 1).min((2 * s_size).saturating_sub(1));
    odd_in_range(l, 3, hi, "3 <= l <= min(2s+1, 2|S|-1)")?;
    let base1 = (s - (l - 3) / 2) as u128;
    let base2 = (s_size - (l - 1) / 2) as u128;
    Ok(base1.pow(((l - 1) / 2) as u32) * base2.pow(((l - 3) / 2) as u32))
}

/// `(((l-1)/2 - 3)/e)^(l-6)`.
pub fn bridged_cliques_bound(l: usize) -> f64 {
    let base = ((l as f64 - 1.0) / 2.0 - 3.0) / E;
    base.max(0.0).powi(l as i32 - 6)
}

/// `((l-5)/(2e))^(l-5)`.
pub fn claim_alternating_bound(l: usize) -> f64 {
    ((l as f64 - 5.0) / (2.0 * E)).powi(l as i32 - 5)
}

fn check_sets(f: &SimpleGraph, s: VertexSet, t: VertexSet) -> Result<()> {
    let all = VertexSet::full(f.n());
    if !s.is_subset(all) || !t.is_subset(all) {
        return Err(Error::hyp("S and T must be vertex sets of F"));
    }
    if !s.is_disjoint(t) {
        return Err(Error::hyp("S and T must be disjoint"));
    }
    Ok(())
}

/// Minimum over pairs of `S` of the common neighbourhood size in `T`,
/// with the pair attaining it.
pub fn min_common_neighbors(f: &SimpleGraph, s: VertexSet, t: VertexSet) -> Option<(usize, (usize, usize))> {
    let v = s.to_vec();
    let mut best: Option<(usize, (usize, usize))> = None;
    for (i, &x) in v.iter().enumerate() {
        for &y in &v[i + 1..] {
            let c = f.neighbors(x).intersection(f.neighbors(y)).intersection(t).len();
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, (x, y)));
            }
        }
    }
    best
}

/// Hypotheses of the common-neighbour claim; returns `(s, bound)`.
pub(crate) fn common_neighbor_hypotheses(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    l: usize,
) -> Result<(usize, u128)> {
    check_sets(f, s, t)?;
    if f.edges_within(s) == 0 {
        return Err(Error::hyp("no edge inside S"));
    }
    let (common, _) = min_common_neighbors(f, s, t).expect("an edge inside S means |S| >= 2");
    let bound = claim_common_neighbor_bound(common, s.len(), l)?;
    Ok((common, bound))
}

/// Checks the common-neighbour claim on `f`: `s` is the least number of
/// common neighbours in `T` over all pairs of `S`.
pub fn verify_claim_common_neighbor(f: &SimpleGraph, s: VertexSet, t: VertexSet, l: usize) -> Result<ClaimCheck> {
    let (_, bound) = common_neighbor_hypotheses(f, s, t, l)?;
    let exact = count_cycles(f, l);
    Ok(ClaimCheck { bound_value: bound as f64, bound, exact_count: exact, pass: exact >= bound })
}

fn is_clique(f: &SimpleGraph, s: VertexSet) -> bool {
    s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(f.neighbors(v)))
}

/// Validates a short path from `S` to `T` whose interior avoids both.
fn check_bridge(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    p: &[usize],
    max_len: usize,
    name: &str,
) -> Result<VertexSet> {
    if p.len() < 2 || p.len() > max_len + 1 {
        return Err(Error::hyp(format!("{name} must have between 1 and {max_len} edges")));
    }
    let (first, last) = (p[0], p[p.len() - 1]);
    let ends_ok = (s.contains(first) && t.contains(last)) || (t.contains(first) && s.contains(last));
    if !ends_ok {
        return Err(Error::hyp(format!("{name} must have one end in S and the other in T")));
    }
    for &m in &p[1..p.len() - 1] {
        if s.contains(m) || t.contains(m) {
            return Err(Error::hyp(format!("interior vertex {m} of {name} lies in S or T")));
        }
    }
    for w in p.windows(2) {
        if w[0] >= f.n() || w[1] >= f.n() || !f.has_edge(w[0], w[1]) {
            return Err(Error::hyp(format!("{name} uses a non-edge {}-{}", w[0], w[1])));
        }
    }
    let verts: VertexSet = p.iter().copied().collect();
    if verts.len() != p.len() {
        return Err(Error::hyp(format!("{name} repeats a vertex")));
    }
    Ok(verts)
}

pub(crate) fn bridged_hypotheses(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    p1: &[usize],
    p2: &[usize],
    l: usize,
) -> Result<f64> {
    check_sets(f, s, t)?;
    if !is_clique(f, s) || !is_clique(f, t) {
        return Err(Error::hyp("S and T must both be cliques"));
    }
    let a = check_bridge(f, s, t, p1, 2, "P1")?;
    let b = check_bridge(f, s, t, p2, 2, "P2")?;
    if !a.is_disjoint(b) {
        return Err(Error::hyp("P1 and P2 share a vertex"));
    }
    let hi = (2 * s.len()).min(2 * t.len()).saturating_sub(1);
    in_range(l, 7, hi, "7 <= l <= min(2|S|-1, 2|T|-1)")?;
    Ok(bridged_cliques_bound(l))
}

/// Checks the bridged-cliques claim: `S`, `T` cliques joined by two
/// disjoint paths of length at most two.
pub fn verify_claim_bridged_cliques(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    p1: &[usize],
    p2: &[usize],
    l: usize,
) -> Result<ClaimCheck> {
    let value = bridged_hypotheses(f, s, t, p1, p2, l)?;
    let bound = floor_bound(value);
    let exact = count_cycles(f, l);
    Ok(ClaimCheck { bound_value: value, bound, exact_count: exact, pass: exact >= bound })
}

pub(crate) fn alternating_hypotheses(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    w: usize,
    p: &[usize],
    l: usize,
) -> Result<f64> {
    check_sets(f, s, t)?;
    if !s.contains(w) {
        return Err(Error::hyp(format!("w = {w} is not in S")));
    }
    let rest = s.difference(VertexSet::singleton(w));
    for x in rest.iter() {
        if !t.is_subset(f.neighbors(x)) {
            return Err(Error::hyp(format!("S \\ {{w}} is not completely joined to T (vertex {x})")));
        }
    }
    if f.neighbors(w).is_disjoint(t) {
        return Err(Error::hyp(format!("w = {w} has no neighbour in T")));
    }
    if p.len() != 3 {
        return Err(Error::hyp("P' must be a path with exactly two edges"));
    }
    check_bridge(f, s, t, p, 2, "P'")?;
    odd_in_range(l, 7, (2 * s.len() + 1).min(2 * t.len() + 1), "7 <= l <= min(2|S|+1, 2|T|+1)")?;
    Ok(claim_alternating_bound(l))
}

/// Checks the alternating claim: `S \ {w}` completely joined to `T`, `w`
/// with a neighbour in `T`, and a two-edge path `P'` outside `S ∪ T`.
pub fn verify_claim_alternating(
    f: &SimpleGraph,
    s: VertexSet,
    t: VertexSet,
    w: usize,
    p: &[usize],
    l: usize,
) -> Result<ClaimCheck> {
    let value = alternating_hypotheses(f, s, t, w, p, l)?;
    let bound = floor_bound(value);
    let exact = count_cycles(f, l);
    Ok(ClaimCheck { bound_value: value, bound, exact_count: exact, pass: exact >= bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "kebab-case")]
pub enum Reduction {
    /// There is no edge between `S` and `T` at all.
    NoneNeeded,
    /// Deleting this vertex leaves no edge between `S` and `T`.
    Remove(usize),
}

/// Without two disjoint `S`–`T` edges, at most one vertex meets them all.
pub fn two_matching_reduction(f: &SimpleGraph, s: VertexSet, t: VertexSet) -> Result<Reduction> {
    if !s.is_disjoint(t) {
        return Err(Error::pre("S and T must be disjoint"));
    }
    let edges: Vec<(usize, usize)> =
        s.iter().flat_map(|a| f.neighbors(a).intersection(t).iter().map(move |b| (a, b))).collect();
    let Some(&(a0, b0)) = edges.first() else {
        return Ok(Reduction::NoneNeeded);
    };
    if edges.iter().all(|&(a, _)| a == a0) {
        return Ok(Reduction::Remove(a0));
    }
    if edges.iter().all(|&(_, b)| b == b0) {
        return Ok(Reduction::Remove(b0));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a != c && b != d {
                return Err(Error::TwoMatching { first: (a, b), second: (c, d) });
            }
        }
    }
    unreachable!("S-T edges with two distinct endpoints on each side contain a 2-matching")
}
