//! Dense graphs on `n` vertices either contain every cycle length in
//! `[3, ⌈(1/2+α)n⌉]` or are close to a complete bipartite graph or to the
//! complement of one. This checks which alternative a concrete graph shows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::count::find_cycle;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};
use crate::regular::{HypothesisCheck, HypothesisKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    /// `G − U0` lies inside the complete bipartite graph on `(U1, U2)`.
    Bipartite,
    /// `G − U0` lies inside the disjoint cliques on `U1` and `U2`.
    BipartiteComplement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DichotomyOutcome {
    CyclesFound { max_len: usize, cycles: BTreeMap<usize, Vec<usize>> },
    PartitionFound { u0: VertexSet, u1: VertexSet, u2: VertexSet, structure: Structure },
    Inconclusive { diagnostics: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NsReport {
    pub n: usize,
    pub edges: usize,
    pub alpha: f64,
    pub beta: f64,
    pub hypotheses: Vec<HypothesisCheck>,
    pub outcome: DichotomyOutcome,
}

fn radius(alpha: f64, beta: f64) -> f64 {
    10.0 * (alpha + beta).sqrt()
}

/// Re-checks the three size bounds and the containment for a partition.
pub fn verify_partition(
    g: &SimpleGraph,
    alpha: f64,
    beta: f64,
    u0: VertexSet,
    u1: VertexSet,
    u2: VertexSet,
    structure: Structure,
) -> Result<()> {
    let n = g.n() as f64;
    if u0.union(u1).union(u2) != VertexSet::full(g.n())
        || !u0.is_disjoint(u1)
        || !u0.is_disjoint(u2)
        || !u1.is_disjoint(u2)
    {
        return Err(Error::hyp("U0, U1, U2 do not partition the vertex set"));
    }
    if u0.len() as f64 >= 2000.0 * alpha * n {
        return Err(Error::hyp(format!("|U0| = {} is not below 2000 alpha n", u0.len())));
    }
    let r = radius(alpha, beta);
    let (a, b) = (u1.len() as f64, u2.len() as f64);
    if !((0.5 - r) * n < a && a <= b && b < (0.5 + r) * n) {
        return Err(Error::hyp(format!("part sizes {a} and {b} are outside the window")));
    }
    let bad = match structure {
        Structure::Bipartite => g.edges_within(u1) + g.edges_within(u2),
        Structure::BipartiteComplement => g.edges_between(u1, u2),
    };
    if bad > 0 {
        return Err(Error::hyp(format!("{bad} edges break the {structure:?} structure")));
    }
    Ok(())
}

/// Attainable `|U1|` sizes when each component contributes `(x, y)` or `(y, x)`
/// (bipartite) or all-or-nothing (complement). Returns the component choices.
fn split_sizes(options: &[(usize, usize)], total: usize) -> Vec<Option<Vec<bool>>> {
    // reach[i][s]: choice for item i-1 that first reached size s.
    let mut reach: Vec<Vec<Option<bool>>> = vec![vec![None; total + 1]; options.len() + 1];
    let mut can = vec![false; total + 1];
    can[0] = true;
    for (i, &(x, y)) in options.iter().enumerate() {
        let mut next = vec![false; total + 1];
        for s in 0..=total {
            if !can[s] {
                continue;
            }
            for (flip, add) in [(false, x), (true, y)] {
                if s + add <= total && !next[s + add] {
                    next[s + add] = true;
                    reach[i + 1][s + add] = Some(flip);
                }
            }
        }
        can = next;
    }
    (0..=total)
        .map(|s| {
            if !can[s] {
                return None;
            }
            let mut choice = vec![false; options.len()];
            let mut at = s;
            for i in (0..options.len()).rev() {
                let flip = reach[i + 1][at].expect("reachable");
                choice[i] = flip;
                at -= if flip { options[i].1 } else { options[i].0 };
            }
            Some(choice)
        })
        .collect()
}

/// Two-colors each component of `g[w]`; `None` if some component has an odd cycle.
fn bipartition(g: &SimpleGraph, w: VertexSet) -> Option<Vec<(VertexSet, VertexSet)>> {
    let mut out = Vec::new();
    for comp in g.components(w) {
        let start = comp.first().unwrap();
        let (mut side0, mut side1) = (VertexSet::singleton(start), VertexSet::EMPTY);
        let mut frontier = VertexSet::singleton(start);
        let mut seen = frontier;
        let mut parity = false;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(g.neighbors(v).intersection(comp));
            }
            next = next.difference(seen);
            seen = seen.union(next);
            parity = !parity;
            if parity {
                side1 = side1.union(next);
            } else {
                side0 = side0.union(next);
            }
            frontier = next;
        }
        if g.edges_within(side0) + g.edges_within(side1) > 0 {
            return None;
        }
        out.push((side0, side1));
    }
    Some(out)
}

/// Best `(U1, U2)` on `w` for a structure: sizes in the window, `|U1|` as
/// close to `|W|/2` as possible.
fn best_split(g: &SimpleGraph, w: VertexSet, structure: Structure, lo: f64, hi: f64) -> Option<(VertexSet, VertexSet)> {
    let pieces: Vec<(VertexSet, VertexSet)> = match structure {
        Structure::Bipartite => bipartition(g, w)?,
        Structure::BipartiteComplement => g.components(w).into_iter().map(|c| (c, VertexSet::EMPTY)).collect(),
    };
    let options: Vec<(usize, usize)> = pieces.iter().map(|(a, b)| (a.len(), b.len())).collect();
    let total = w.len();
    let choices = split_sizes(&options, total);
    let mut sizes: Vec<usize> = (0..=total / 2).collect();
    sizes.sort_by_key(|&s| total / 2 - s);
    for s in sizes {
        let (a, b) = (s as f64, (total - s) as f64);
        if !(lo < a && a <= b && b < hi) {
            continue;
        }
        if let Some(choice) = &choices[s] {
            let mut u1 = VertexSet::EMPTY;
            for (k, &(x, y)) in pieces.iter().enumerate() {
                u1 = u1.union(if choice[k] { y } else { x });
            }
            return Some((u1, w.difference(u1)));
        }
    }
    None
}

/// Which alternative of the dichotomy `g` exhibits.
///
/// Cycles are looked for first. Failing that, `U0` grows greedily from the
/// lowest-degree vertices up to its cap, and for each candidate the
/// remaining graph is split exactly: components are two-colored (bipartite
/// case) or kept whole (complement case) and a subset-sum over the
/// components finds the most balanced split in the size window.
pub fn ns_check(g: &SimpleGraph, alpha: f64, beta: f64) -> Result<NsReport> {
    let n = g.n();
    let e = g.edge_count();
    let nf = n as f64;
    if (e as f64) <= (0.25 - beta) * nf * nf {
        return Err(Error::hyp(format!("e(G) = {e} is not above (1/4 - beta) n^2 = {}", (0.25 - beta) * nf * nf)));
    }
    let hypotheses = vec![
        HypothesisCheck {
            name: "0 < alpha < 5e-6".into(),
            kind: HypothesisKind::Regime,
            satisfied: alpha > 0.0 && alpha < 5e-6,
        },
        HypothesisCheck {
            name: "0 <= beta <= alpha/25".into(),
            kind: HypothesisKind::Instance,
            satisfied: beta >= 0.0 && beta <= alpha / 25.0,
        },
        HypothesisCheck { name: "n >= 1/alpha".into(), kind: HypothesisKind::Regime, satisfied: nf * alpha >= 1.0 },
    ];
    let report = |outcome| NsReport { n, edges: e, alpha, beta, hypotheses: hypotheses.clone(), outcome };

    let max_len = ((0.5 + alpha) * nf - 1e-12).ceil() as usize;
    let mut cycles = BTreeMap::new();
    let mut missing = None;
    for t in 3..=max_len {
        match find_cycle(g, t) {
            Some(c) => {
                cycles.insert(t, c);
            }
            None => {
                missing = Some(t);
                break;
            }
        }
    }
    let Some(missing) = missing else {
        return Ok(report(DichotomyOutcome::CyclesFound { max_len, cycles }));
    };

    let r = radius(alpha, beta);
    let (lo, hi) = ((0.5 - r) * nf, (0.5 + r) * nf);
    let cap = 2000.0 * alpha * nf;
    let mut u0 = VertexSet::EMPTY;
    let mut rest = g.clone();
    loop {
        let w = VertexSet::full(n).difference(u0);
        for structure in [Structure::Bipartite, Structure::BipartiteComplement] {
            if let Some((a, b)) = best_split(&rest, w, structure, lo, hi) {
                let (u1, u2) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                verify_partition(g, alpha, beta, u0, u1, u2, structure)?;
                return Ok(report(DichotomyOutcome::PartitionFound { u0, u1, u2, structure }));
            }
        }
        if (u0.len() + 1) as f64 >= cap || w.len() <= 2 {
            break;
        }
        let v = w.iter().min_by_key(|&v| (rest.degree(v), v)).unwrap();
        u0.insert(v);
        rest = g.without_vertices(u0);
    }
    Ok(report(DichotomyOutcome::Inconclusive {
        diagnostics: vec![
            format!("no cycle of length {missing}"),
            format!("no admissible partition with |U0| <= {} (cap {cap:.3})", u0.len()),
        ],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_splits() {
        let g = SimpleGraph::complete_bipartite(5, 5).unwrap();
        let r = ns_check(&g, 0.01, 0.01).unwrap();
        match r.outcome {
            DichotomyOutcome::PartitionFound { u0, u1, u2, structure } => {
                assert!(u0.is_empty());
                assert_eq!(structure, Structure::Bipartite);
                assert_eq!((u1.len(), u2.len()), (5, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_graph_is_pancyclic() {
        let g = SimpleGraph::complete(10).unwrap();
        match ns_check(&g, 0.1, 0.01).unwrap().outcome {
            DichotomyOutcome::CyclesFound { max_len, cycles } => {
                assert_eq!(max_len, 6);
                assert_eq!(cycles.keys().copied().collect::<Vec<_>>(), (3..=6).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_cliques_split_into_complement_structure() {
        let mut g = SimpleGraph::empty(10).unwrap();
        g.make_clique(VertexSet::range(0, 5));
        g.make_clique(VertexSet::range(5, 10));
        match ns_check(&g, 0.1, 0.06).unwrap().outcome {
            DichotomyOutcome::PartitionFound { structure, u1, .. } => {
                assert_eq!(structure, Structure::BipartiteComplement);
                assert!(u1 == VertexSet::range(0, 5) || u1 == VertexSet::range(5, 10));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sparse_graph_is_rejected() {
        let g = SimpleGraph::cycle(10).unwrap();
        assert!(matches!(ns_check(&g, 0.1, 0.01), Err(Error::Hypothesis(_))));
    }
}
