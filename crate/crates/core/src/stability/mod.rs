//! Reduced graphs of a partitioned coloring, the cycles-or-partition
//! dichotomy for dense graphs, and the two-case classifier.

mod ns;

pub use ns::{ns_check, verify_partition, DichotomyOutcome, NsReport, Structure};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TwoColoring};
use crate::count::find_cycle;
use crate::error::{Error, Result};
use crate::extremal::{extremal_parameter, ExtremalAssessment, ExtremalMode};
use crate::graph::{SimpleGraph, VertexSet};
use crate::regular::{check_regularity, HypothesisCheck, HypothesisKind, RegimeParams, Regularity, RegularityMode};

/// `m` near-equal parts of `0..n` after a seeded shuffle.
pub fn random_equitable_partition(n: usize, m: usize, seed: u64) -> Result<Vec<VertexSet>> {
    if m == 0 || m > n {
        return Err(Error::pre(format!("cannot split {n} vertices into {m} nonempty parts")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut parts = vec![VertexSet::EMPTY; m];
    for (i, v) in order.into_iter().enumerate() {
        parts[i % m].insert(v);
    }
    Ok(parts)
}

/// `m` near-equal blocks of consecutive vertices.
pub fn block_partition(n: usize, m: usize) -> Result<Vec<VertexSet>> {
    if m == 0 || m > n {
        return Err(Error::pre(format!("cannot split {n} vertices into {m} nonempty parts")));
    }
    let mut out = Vec::with_capacity(m);
    let mut at = 0;
    for i in 0..m {
        let size = n / m + usize::from(i < n % m);
        out.push(VertexSet::range(at, at + size));
        at += size;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairInfo {
    pub i: usize,
    pub j: usize,
    pub red_density: f64,
    pub regular: bool,
    /// Regular only for lack of a sampled witness.
    pub unproven: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedGraph {
    pub m: usize,
    pub part_map: Vec<usize>,
    pub parts: Vec<VertexSet>,
    pub threshold: f64,
    pub red_edges: Vec<(usize, usize)>,
    pub blue_edges: Vec<(usize, usize)>,
    pub irregular_pairs: Vec<(usize, usize)>,
    pub pairs: Vec<PairInfo>,
    pub equitable: bool,
    pub flags: Vec<String>,
}

impl ReducedGraph {
    pub fn color_graph(&self, color: Color) -> SimpleGraph {
        let edges = match color {
            Color::Red => &self.red_edges,
            Color::Blue => &self.blue_edges,
        };
        SimpleGraph::from_edges(self.m, edges).expect("part indices are in range")
    }

    pub fn pair(&self, i: usize, j: usize) -> &PairInfo {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().find(|p| p.i == i && p.j == j).expect("pair exists")
    }

    pub fn density(&self, i: usize, j: usize, color: Color) -> f64 {
        let r = self.pair(i, j).red_density;
        match color {
            Color::Red => r,
            Color::Blue => 1.0 - r,
        }
    }
}

fn check_parts(n: usize, parts: &[VertexSet]) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::pre(format!("part {i} is empty")));
        }
        for v in p.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if map[v] != usize::MAX {
                return Err(Error::pre(format!("vertex {v} lies in parts {} and {i}", map[v])));
            }
            map[v] = i;
        }
    }
    if let Some(v) = map.iter().position(|&p| p == usize::MAX) {
        return Err(Error::pre(format!("vertex {v} is in no part")));
    }
    Ok(map)
}

/// Reduced graph on the parts: a pair is an edge when ε-regular, red when
/// its red density is at least `p.d`, blue likewise (both when `d ≤ 1/2`).
pub fn build_reduced(
    c: &TwoColoring,
    parts: &[VertexSet],
    p: &RegimeParams,
    mode: RegularityMode,
) -> Result<ReducedGraph> {
    let n = c.n();
    let part_map = check_parts(n, parts)?;
    if mode == RegularityMode::Exact {
        if let Some(i) = parts.iter().position(|s| s.len() < 2) {
            return Err(Error::pre(format!("exact regularity needs parts of at least 2 vertices; part {i} has 1")));
        }
    }
    let sizes: Vec<usize> = parts.iter().map(|s| s.len()).collect();
    let equitable = sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1;
    let mut flags = Vec::new();
    if !equitable {
        flags.push("parts are not equitable".to_string());
    }
    if p.d > 1.0 {
        flags.push(format!("density threshold {:.4} exceeds 1; no pair can be colored", p.d));
    }
    let red = c.red_graph();
    let m = parts.len();
    let mut out = ReducedGraph {
        m,
        part_map,
        parts: parts.to_vec(),
        threshold: p.d,
        red_edges: Vec::new(),
        blue_edges: Vec::new(),
        irregular_pairs: Vec::new(),
        pairs: Vec::new(),
        equitable,
        flags,
    };
    for i in 0..m {
        for j in i + 1..m {
            let (x, y) = (parts[i], parts[j]);
            let rd = red.edges_between(x, y) as f64 / (x.len() * y.len()) as f64;
            // Regularity in red and in blue coincide, so red alone is checked.
            let verdict = check_regularity(x, y, &red, p.eps, mode)?;
            let (regular, unproven) = match verdict {
                Regularity::Regular => (true, false),
                Regularity::Unknown { .. } => (true, true),
                Regularity::Irregular { .. } => (false, false),
            };
            if !regular {
                out.irregular_pairs.push((i, j));
            } else {
                if rd >= p.d {
                    out.red_edges.push((i, j));
                }
                if 1.0 - rd >= p.d {
                    out.blue_edges.push((i, j));
                }
            }
            out.pairs.push(PairInfo { i, j, red_density: rd, regular, unproven });
        }
    }
    if out.pairs.iter().any(|q| q.unproven) {
        out.flags.push("randomized regularity: some pairs are unproven".to_string());
    }
    Ok(out)
}

/// The odd `t` with `(1/2+α)M ≥ t > (1/2+α)M − 2`.
pub fn ring_length(alpha: f64, m: usize) -> usize {
    let top = (0.5 + alpha) * m as f64;
    let f = (top + 1e-12).floor() as i64;
    let t = if f % 2 != 0 { f } else { f - 1 };
    t.max(0) as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Classification {
    /// A ring of `t` parts, consecutive pairs regular and dense in `color`.
    Case1 {
        t: usize,
        color: Color,
        ring: Vec<usize>,
        sets: Vec<VertexSet>,
        densities: Vec<f64>,
    },
    /// The coloring is extremal with parameter at most `threshold`.
    Case2 {
        assessment: ExtremalAssessment,
        threshold: f64,
    },
    Inconclusive {
        diagnostics: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub params: RegimeParams,
    pub t: usize,
    pub hypotheses: Vec<HypothesisCheck>,
    pub reduced: ReducedGraph,
    pub outcome: Classification,
}

/// Decides which of the two cases a concrete coloring with the given
/// partition falls into, or says neither could be established.
pub fn main2_classify(
    c: &TwoColoring,
    parts: &[VertexSet],
    p: &RegimeParams,
    reg: RegularityMode,
    extremal: ExtremalMode,
) -> Result<ClassifyReport> {
    let reduced = build_reduced(c, parts, p, reg)?;
    let m = parts.len();
    let t = ring_length(p.alpha, m);
    let floor = 11.0 * p.eps.sqrt();
    let min_part = parts.iter().map(|s| s.len()).min().unwrap_or(0);
    let hypotheses = vec![
        HypothesisCheck {
            name: "0 < eps < 1e-20".into(),
            kind: HypothesisKind::Regime,
            satisfied: p.eps > 0.0 && p.eps < 1e-20,
        },
        HypothesisCheck { name: "M >= 1/eps".into(), kind: HypothesisKind::Regime, satisfied: m as f64 * p.eps >= 1.0 },
        HypothesisCheck {
            name: "strict-mode parameters".into(),
            kind: HypothesisKind::Regime,
            satisfied: p.is_consistent(),
        },
        HypothesisCheck {
            name: "parts have at least floor(n/M) vertices".into(),
            kind: HypothesisKind::Instance,
            satisfied: min_part >= c.n() / m,
        },
    ];
    let mut diagnostics = Vec::new();
    if t >= 3 {
        for color in [Color::Red, Color::Blue] {
            let mut ring_graph = SimpleGraph::empty(m)?;
            for &(i, j) in match color {
                Color::Red => &reduced.red_edges,
                Color::Blue => &reduced.blue_edges,
            } {
                if reduced.density(i, j, color) >= floor {
                    ring_graph.add_edge(i, j);
                }
            }
            if let Some(ring) = find_cycle(&ring_graph, t) {
                let densities = (0..t).map(|k| reduced.density(ring[k], ring[(k + 1) % t], color)).collect();
                let sets = ring.iter().map(|&i| parts[i]).collect();
                let outcome = Classification::Case1 { t, color, ring, sets, densities };
                return Ok(ClassifyReport { params: *p, t, hypotheses, reduced, outcome });
            }
            diagnostics.push(format!("no {color:?} cycle of length {t} in the reduced graph"));
        }
    } else {
        diagnostics.push(format!("ring length window gives t = {t} < 3; no ring to look for"));
    }
    let assessment = extremal_parameter(c, extremal)?;
    if assessment.lambda_star <= p.lambda {
        let outcome = Classification::Case2 { assessment, threshold: p.lambda };
        return Ok(ClassifyReport { params: *p, t, hypotheses, reduced, outcome });
    }
    diagnostics.push(format!(
        "extremal parameter {:.6} exceeds the threshold {:.6}{}",
        assessment.lambda_star,
        p.lambda,
        if assessment.exact { "" } else { " (local search value)" }
    ));
    diagnostics.push(format!("{} of {} pairs irregular", reduced.irregular_pairs.len(), reduced.pairs.len()));
    Ok(ClassifyReport { params: *p, t, hypotheses, reduced, outcome: Classification::Inconclusive { diagnostics } })
}
