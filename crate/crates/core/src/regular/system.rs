//! Cyclic class systems `V_0, …, V_{t−1}` and exact transversal path counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// Node visits allowed to one transversal count before it gives up.
pub const DEFAULT_COUNT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Complete,
    /// Complete between consecutive classes minus the matching `V_i[j] ~ V_{i+1}[j]`.
    MinusMatching,
    Quasirandom {
        density: f64,
    },
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Complete => write!(f, "complete"),
            Family::MinusMatching => write!(f, "minus-matching"),
            Family::Quasirandom { density } => write!(f, "quasirandom({density})"),
        }
    }
}

/// Classes indexed mod `t`; only edges between consecutive classes are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSystem {
    classes: Vec<VertexSet>,
    graph: SimpleGraph,
}

impl PairSystem {
    pub fn new(classes: Vec<VertexSet>, g: &SimpleGraph) -> Result<Self> {
        let t = classes.len();
        if t < 2 {
            return Err(Error::pre(format!("a class system needs t >= 2, got {t}")));
        }
        let all = VertexSet::full(g.n());
        let mut seen = VertexSet::default();
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::pre(format!("class V_{i} is empty")));
            }
            if !c.is_subset(all) {
                return Err(Error::VertexOutOfRange { vertex: c.difference(all).first().unwrap(), n: g.n() });
            }
            if !c.is_disjoint(seen) {
                return Err(Error::pre(format!("class V_{i} overlaps an earlier class")));
            }
            seen = seen.union(*c);
        }
        let mut kept = SimpleGraph::empty(g.n())?;
        for i in 0..t {
            let (a, b) = (classes[i], classes[(i + 1) % t]);
            for u in a.iter() {
                for v in g.neighbors(u).intersection(b).iter() {
                    kept.add_edge(u, v);
                }
            }
        }
        Ok(PairSystem { classes, graph: kept })
    }

    /// Classes of the given sizes on consecutive vertex numbers.
    pub fn generate(family: Family, sizes: &[usize], rng: &mut impl Rng) -> Result<Self> {
        let total: usize = sizes.iter().sum();
        let mut classes = Vec::with_capacity(sizes.len());
        let mut at = 0;
        for &s in sizes {
            classes.push(VertexSet::range(at, at + s));
            at += s;
        }
        let mut g = SimpleGraph::empty(total)?;
        let t = sizes.len();
        for i in 0..t {
            let (a, b) = (classes[i].to_vec(), classes[(i + 1) % t].to_vec());
            if t == 2 && i == 1 {
                break;
            }
            for (ja, &u) in a.iter().enumerate() {
                for (jb, &v) in b.iter().enumerate() {
                    let keep = match family {
                        Family::Complete => true,
                        Family::MinusMatching => ja != jb,
                        Family::Quasirandom { density } => rng.random_bool(density.clamp(0.0, 1.0)),
                    };
                    if keep {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        PairSystem::new(classes, &g)
    }

    pub fn seeded(family: Family, sizes: &[usize], seed: u64) -> Result<Self> {
        Self::generate(family, sizes, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn t(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, i: usize) -> VertexSet {
        self.classes[i % self.t()]
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn min_class_size(&self) -> usize {
        self.classes.iter().map(|c| c.len()).min().unwrap_or(0)
    }

    /// The consecutive pairs `(V_i, V_{i+1})`; a single pair when `t = 2`.
    pub fn pairs(&self) -> Vec<(VertexSet, VertexSet)> {
        let t = self.t();
        let k = if t == 2 { 1 } else { t };
        (0..k).map(|i| (self.classes[i], self.classes[(i + 1) % t])).collect()
    }

    /// The same system with `V_r` relabelled as `V_0`.
    pub fn rotated(&self, r: usize) -> PairSystem {
        let t = self.t();
        PairSystem { classes: (0..t).map(|i| self.classes[(i + r) % t]).collect(), graph: self.graph.clone() }
    }
}

struct Counter<'a> {
    sys: &'a PairSystem,
    nodes: u64,
    budget: u64,
}

impl Counter<'_> {
    fn visit(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { nodes: self.nodes });
        }
        Ok(())
    }

    /// Extensions of a path ending at `last` (position `i - 1`) by `left` more steps.
    fn open(&mut self, last: usize, i: usize, left: usize, used: VertexSet) -> Result<u128> {
        self.visit()?;
        let cand = self.sys.graph.neighbors(last).intersection(self.sys.class(i)).difference(used);
        if left == 1 {
            return Ok(cand.len() as u128);
        }
        let mut total = 0;
        for w in cand.iter() {
            let mut u = used;
            u.insert(w);
            total += self.open(w, i + 1, left - 1, u)?;
        }
        Ok(total)
    }

    fn closed(&mut self, last: usize, i: usize, left: usize, used: VertexSet, end: usize) -> Result<u128> {
        self.visit()?;
        if left == 1 {
            return Ok(self.sys.graph.has_edge(last, end) as u128);
        }
        let cand = self.sys.graph.neighbors(last).intersection(self.sys.class(i)).difference(used);
        let mut total = 0;
        for w in cand.iter() {
            let mut u = used;
            u.insert(w);
            total += self.closed(w, i + 1, left - 1, u, end)?;
        }
        Ok(total)
    }
}

fn check_start(sys: &PairSystem, w: usize) -> Result<()> {
    if !sys.class(0).contains(w) {
        return Err(Error::pre(format!("vertex {w} is not in V_0")));
    }
    Ok(())
}

/// Paths `w0 w1 … wℓ` on distinct vertices with `w_i ∈ V_{i mod t}`.
pub fn count_transversal_paths(sys: &PairSystem, w0: usize, l: usize) -> Result<u128> {
    count_transversal_paths_with_budget(sys, w0, l, DEFAULT_COUNT_BUDGET)
}

pub fn count_transversal_paths_with_budget(sys: &PairSystem, w0: usize, l: usize, budget: u64) -> Result<u128> {
    check_start(sys, w0)?;
    if l == 0 {
        return Err(Error::pre("path length must be at least 1"));
    }
    Counter { sys, nodes: 0, budget }.open(w0, 1, l, VertexSet::singleton(w0))
}

/// Transversal paths of length `ℓ` from `w0` to `w0′` (`t | ℓ`, both in `V_0`).
/// With `w0 = w0′` these are the closed transversal walks on distinct interiors.
pub fn count_transversal_paths_between(sys: &PairSystem, w0: usize, w1: usize, l: usize) -> Result<u128> {
    count_transversal_paths_between_with_budget(sys, w0, w1, l, DEFAULT_COUNT_BUDGET)
}

pub fn count_transversal_paths_between_with_budget(
    sys: &PairSystem,
    w0: usize,
    w1: usize,
    l: usize,
    budget: u64,
) -> Result<u128> {
    check_start(sys, w0)?;
    check_start(sys, w1)?;
    if l == 0 || !l.is_multiple_of(sys.t()) {
        return Err(Error::pre(format!("length {l} is not a positive multiple of t = {}", sys.t())));
    }
    if w0 == w1 && l < 3 {
        return Err(Error::pre("a closed transversal path needs length at least 3"));
    }
    let mut used = VertexSet::singleton(w0);
    used.insert(w1);
    Counter { sys, nodes: 0, budget }.closed(w0, 1, l, used, w1)
}
