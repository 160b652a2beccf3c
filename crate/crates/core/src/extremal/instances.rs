//! Seeded structured instances for the claim verifiers.
//!
//! Each generator plants the claim's hypothesis on a random background so
//! that the verifier has something real to check; instances on which the
//! hypotheses happen to fail are redrawn.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::claims::{verify_claim_alternating, verify_claim_bridged_cliques, verify_claim_common_neighbor, ClaimCheck};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// Largest instance drawn by the generators.
pub const MAX_INSTANCE_VERTICES: usize = 12;
pub const MAX_INSTANCE_CYCLE: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructuredClaim {
    CommonNeighbor,
    BridgedCliques,
    Alternating,
}

impl std::str::FromStr for StructuredClaim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "common-neighbor" => Ok(StructuredClaim::CommonNeighbor),
            "bridged-cliques" => Ok(StructuredClaim::BridgedCliques),
            "alternating" => Ok(StructuredClaim::Alternating),
            _ => Err(Error::pre(format!("unknown claim {s:?} (common-neighbor | bridged-cliques | alternating)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimExtra {
    None,
    Bridges { p1: Vec<usize>, p2: Vec<usize> },
    Alternating { w: usize, p: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimInstance {
    pub claim: StructuredClaim,
    pub graph: SimpleGraph,
    pub s: VertexSet,
    pub t: VertexSet,
    pub l: usize,
    pub extra: ClaimExtra,
}

impl ClaimInstance {
    pub fn verify(&self) -> Result<ClaimCheck> {
        match &self.extra {
            ClaimExtra::None => verify_claim_common_neighbor(&self.graph, self.s, self.t, self.l),
            ClaimExtra::Bridges { p1, p2 } => verify_claim_bridged_cliques(&self.graph, self.s, self.t, p1, p2, self.l),
            ClaimExtra::Alternating { w, p } => verify_claim_alternating(&self.graph, self.s, self.t, *w, p, self.l),
        }
    }

    pub fn describe(&self) -> String {
        format!("n={} |S|={} |T|={} l={}", self.graph.n(), self.s.len(), self.t.len(), self.l)
    }
}

fn random_edges(g: &mut SimpleGraph, within: VertexSet, p: f64, rng: &mut ChaCha8Rng) {
    let v = within.to_vec();
    for (i, &x) in v.iter().enumerate() {
        for &y in &v[i + 1..] {
            if rng.random::<f64>() < p {
                g.add_edge(x, y);
            }
        }
    }
}

fn random_cross(g: &mut SimpleGraph, x: VertexSet, y: VertexSet, p: f64, rng: &mut ChaCha8Rng) {
    for a in x.iter() {
        for b in y.iter() {
            if rng.random::<f64>() < p {
                g.add_edge(a, b);
            }
        }
    }
}

fn pick_odd(lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let odds: Vec<usize> = (lo..=hi).filter(|l| l % 2 == 1).collect();
    odds.choose(rng).copied()
}

fn draw(claim: StructuredClaim, rng: &mut ChaCha8Rng) -> Option<ClaimInstance> {
    match claim {
        StructuredClaim::CommonNeighbor => {
            let ns = rng.random_range(2..=6);
            let nt = rng.random_range(1..=6);
            let extra = rng.random_range(0..=(MAX_INSTANCE_VERTICES - ns - nt).min(2));
            let n = ns + nt + extra;
            let s = VertexSet::range(0, ns);
            let t = VertexSet::range(ns, ns + nt);
            let mut g = SimpleGraph::empty(n).ok()?;
            random_cross(&mut g, s, t, rng.random_range(0.6..=1.0), rng);
            random_edges(&mut g, s, rng.random_range(0.0..=1.0), rng);
            random_edges(&mut g, t, rng.random_range(0.0..=0.6), rng);
            let rest = VertexSet::range(ns + nt, n);
            random_cross(&mut g, rest, s.union(t), 0.5, rng);
            let u = rng.random_range(0..ns);
            let v = (u + 1) % ns;
            g.add_edge(u, v);
            let (common, _) = super::min_common_neighbors(&g, s, t)?;
            let hi = (2 * common + 1).min(2 * ns - 1).min(MAX_INSTANCE_CYCLE);
            let l = pick_odd(3, hi, rng)?;
            Some(ClaimInstance { claim, graph: g, s, t, l, extra: ClaimExtra::None })
        }
        StructuredClaim::BridgedCliques => {
            let ns = rng.random_range(4..=6);
            let nt = rng.random_range(4..=(MAX_INSTANCE_VERTICES - ns).min(6));
            let mids = rng.random_range(0..=(MAX_INSTANCE_VERTICES - ns - nt).min(2));
            let n = ns + nt + mids;
            let s = VertexSet::range(0, ns);
            let t = VertexSet::range(ns, ns + nt);
            let mut g = SimpleGraph::empty(n).ok()?;
            g.make_clique(s);
            g.make_clique(t);
            random_cross(&mut g, s, t, rng.random_range(0.0..=0.3), rng);
            let mut sv = s.to_vec();
            let mut tv = t.to_vec();
            sv.shuffle(rng);
            tv.shuffle(rng);
            let mut middles: Vec<usize> = (ns + nt..n).collect();
            let mut path = |a: usize, b: usize, g: &mut SimpleGraph, rng: &mut ChaCha8Rng| -> Vec<usize> {
                match middles.pop().filter(|_| rng.random_bool(0.7)) {
                    Some(m) => {
                        g.add_edge(a, m);
                        g.add_edge(m, b);
                        vec![a, m, b]
                    }
                    None => {
                        g.add_edge(a, b);
                        vec![a, b]
                    }
                }
            };
            let p1 = path(sv[0], tv[0], &mut g, rng);
            let p2 = path(sv[1], tv[1], &mut g, rng);
            let hi = (2 * ns - 1).min(2 * nt - 1).min(MAX_INSTANCE_CYCLE);
            let l = rng.random_range(7..=hi);
            Some(ClaimInstance { claim, graph: g, s, t, l, extra: ClaimExtra::Bridges { p1, p2 } })
        }
        StructuredClaim::Alternating => {
            let ns = rng.random_range(3..=5);
            let nt = rng.random_range(3..=5);
            let extra = rng.random_range(0..=(MAX_INSTANCE_VERTICES - ns - nt - 1).min(1));
            let n = ns + nt + 1 + extra;
            let s = VertexSet::range(0, ns);
            let t = VertexSet::range(ns, ns + nt);
            let m = ns + nt;
            let mut g = SimpleGraph::empty(n).ok()?;
            let w = rng.random_range(0..ns);
            g.join(s.difference(VertexSet::singleton(w)), t);
            random_cross(&mut g, VertexSet::singleton(w), t, 0.5, rng);
            let tw = rng.random_range(ns..ns + nt);
            g.add_edge(w, tw);
            random_edges(&mut g, s, rng.random_range(0.0..=0.5), rng);
            random_edges(&mut g, t, rng.random_range(0.0..=0.5), rng);
            let a = rng.random_range(0..ns);
            let b = rng.random_range(ns..ns + nt);
            g.add_edge(a, m);
            g.add_edge(m, b);
            random_cross(&mut g, VertexSet::range(m, n), VertexSet::range(0, m), 0.3, rng);
            let hi = (2 * ns + 1).min(2 * nt + 1).min(MAX_INSTANCE_CYCLE);
            let l = pick_odd(7, hi, rng)?;
            Some(ClaimInstance { claim, graph: g, s, t, l, extra: ClaimExtra::Alternating { w, p: vec![a, m, b] } })
        }
    }
}

/// The `index`-th instance of the stream for `(claim, seed)`.
pub fn generate(claim: StructuredClaim, seed: u64, index: u64) -> ClaimInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        if let Some(inst) = draw(claim, &mut rng) {
            if inst.verify_hypotheses_only() {
                return inst;
            }
        }
    }
}

impl ClaimInstance {
    fn verify_hypotheses_only(&self) -> bool {
        use super::claims::{alternating_hypotheses, bridged_hypotheses, common_neighbor_hypotheses};
        match &self.extra {
            ClaimExtra::None => common_neighbor_hypotheses(&self.graph, self.s, self.t, self.l).is_ok(),
            ClaimExtra::Bridges { p1, p2 } => bridged_hypotheses(&self.graph, self.s, self.t, p1, p2, self.l).is_ok(),
            ClaimExtra::Alternating { w, p } => {
                alternating_hypotheses(&self.graph, self.s, self.t, *w, p, self.l).is_ok()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub index: u64,
    pub instance: String,
    pub bound_value: f64,
    pub bound: u128,
    pub exact: u128,
    pub pass: bool,
}

/// Draws `count` instances and verifies each.
pub fn run_claim_suite(claim: StructuredClaim, count: u64, seed: u64) -> Result<Vec<ClaimRow>> {
    (0..count)
        .map(|i| {
            let inst = generate(claim, seed, i);
            let r = inst.verify()?;
            Ok(ClaimRow {
                index: i,
                instance: inst.describe(),
                bound_value: r.bound_value,
                bound: r.bound,
                exact: r.exact_count,
                pass: r.pass,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoMatchingSummary {
    pub max_side: usize,
    pub graphs: u64,
    pub reductions: u64,
    pub matchings: u64,
    /// Outputs contradicted by a direct search for two disjoint edges.
    pub mismatches: u64,
}

/// Runs the reduction on every bipartite graph between `S` and `T` with
/// `1 ≤ |S|, |T| ≤ max_side` and checks each answer directly.
pub fn two_matching_exhaustive(max_side: usize) -> Result<TwoMatchingSummary> {
    use super::claims::{two_matching_reduction, Reduction};
    if max_side > 5 {
        return Err(Error::pre(format!("exhaustive two-matching check supports sides up to 5, got {max_side}")));
    }
    let mut out = TwoMatchingSummary { max_side, ..Default::default() };
    for ns in 1..=max_side {
        for nt in 1..=max_side {
            let (s, t) = (VertexSet::range(0, ns), VertexSet::range(ns, ns + nt));
            let pairs: Vec<(usize, usize)> = s.iter().flat_map(|a| t.iter().map(move |b| (a, b))).collect();
            for mask in 0u64..(1u64 << pairs.len()) {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &e)| e).collect();
                let g = SimpleGraph::from_edges(ns + nt, &edges)?;
                let disjoint =
                    edges.iter().enumerate().any(|(i, &(a, b))| edges[i + 1..].iter().any(|&(c, d)| a != c && b != d));
                out.graphs += 1;
                let ok = match two_matching_reduction(&g, s, t) {
                    Ok(Reduction::NoneNeeded) => {
                        out.reductions += 1;
                        edges.is_empty()
                    }
                    Ok(Reduction::Remove(v)) => {
                        out.reductions += 1;
                        !disjoint && !edges.is_empty() && edges.iter().all(|&(a, b)| a == v || b == v)
                    }
                    Err(Error::TwoMatching { first, second }) => {
                        out.matchings += 1;
                        disjoint && first.0 != second.0 && first.1 != second.1
                    }
                    Err(e) => return Err(e),
                };
                if !ok {
                    out.mismatches += 1;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        for claim in [StructuredClaim::CommonNeighbor, StructuredClaim::BridgedCliques, StructuredClaim::Alternating] {
            let a = generate(claim, 5, 3);
            let b = generate(claim, 5, 3);
            assert_eq!(a, b);
            assert!(a.graph.n() <= MAX_INSTANCE_VERTICES && a.l <= MAX_INSTANCE_CYCLE);
        }
    }

    #[test]
    fn two_matching_small_sides() {
        let s = two_matching_exhaustive(3).unwrap();
        assert_eq!(s.mismatches, 0);
        assert_eq!(s.graphs, s.reductions + s.matchings);
    }
}
