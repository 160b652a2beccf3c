//! Exact Ramsey multiplicity by branch-and-bound over edge colorings.
//!
//! The search assigns colors to the edges of `K_n` in row-major order, red
//! first. The lower bound at a node is the number of monochromatic copies
//! whose edges are all decided; a node is cut when that bound cannot beat the
//! incumbent. The tree is split into fixed-depth prefixes that run as
//! independent tasks sharing only the incumbent value, so the result (value
//! and witness) does not depend on thread scheduling: the witness is always
//! the first optimal coloring in depth-first order.

mod engine;
mod symmetry;

use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::coloring::TwoColoring;
use crate::count::mono_total;
use crate::error::{Error, Result};
use crate::extremal::chi;
use crate::pattern::PatternGraph;

pub use symmetry::Symmetry;

/// Boards larger than this are refused outright.
pub const MAX_SEARCH_VERTICES: usize = 12;

/// Largest board the default budget is expected to finish exhaustively.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 8;

pub const DEFAULT_MAX_NODES: u64 = 20_000_000_000;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    #[serde(with = "opt_duration_ms")]
    pub max_time: Option<Duration>,
    pub threads: usize,
    pub symmetry: Symmetry,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Some(DEFAULT_MAX_NODES), max_time: None, threads: 1, symmetry: Symmetry::default() }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None, ..Budget::default() }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }
}

mod opt_duration_ms {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        d.map(|d| d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub pruned_bound: u64,
    pub pruned_symmetry: u64,
    pub tasks: usize,
    pub tasks_completed: usize,
    pub elapsed_ms: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.pruned_bound += other.pruned_bound;
        self.pruned_symmetry += other.pruned_symmetry;
        self.tasks += other.tasks;
        self.tasks_completed += other.tasks_completed;
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// Outcome of a multiplicity search at one board size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub pattern: PatternGraph,
    pub n: usize,
    /// Exact minimum when `exact`, otherwise the best value found.
    pub value: u128,
    #[serde(with = "crate::report::kcol_serde")]
    pub witness: TwoColoring,
    pub exact: bool,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Task results are persisted here and reloaded on restart.
    pub checkpoint: Option<PathBuf>,
}

fn check_board(h: &PatternGraph, n: usize) -> Result<()> {
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::pre(format!("board size {n} exceeds search limit {MAX_SEARCH_VERTICES}")));
    }
    if h.vertex_count() > n {
        return Err(Error::pre(format!("pattern {h} has {} vertices, board has {n}", h.vertex_count())));
    }
    if matches!(h, PatternGraph::Explicit(_)) {
        h.clone().validated()?;
    }
    Ok(())
}

/// Cheap structured colorings used as the starting incumbent.
fn heuristic_incumbent(h: &PatternGraph, n: usize) -> Result<(u128, TwoColoring)> {
    let mut best = (mono_total(&TwoColoring::all_red(n)?, h)?, TwoColoring::all_red(n)?);
    for a in 1..n {
        let c = chi(a, n - a)?;
        let v = mono_total(&c, h)?;
        if v < best.0 {
            best = (v, c);
        }
    }
    Ok(best)
}

/// `M(h, n)`: the minimum number of monochromatic copies of `h` over all
/// two-colorings of `K_n`.
pub fn multiplicity(h: &PatternGraph, n: usize, budget: &Budget) -> Result<MultiplicityReport> {
    multiplicity_with(h, n, &SearchOptions { budget: budget.clone(), checkpoint: None })
}

pub fn multiplicity_with(h: &PatternGraph, n: usize, opts: &SearchOptions) -> Result<MultiplicityReport> {
    check_board(h, n)?;
    let (heur_value, heur_witness) = heuristic_incumbent(h, n)?;
    let run = engine::run(h, n, engine::Goal::Minimize { incumbent: heur_value as u64 }, opts)?;
    let (value, witness) = match run.best {
        Some((v, w)) => (v as u128, w),
        None => (heur_value, heur_witness),
    };
    Ok(MultiplicityReport { pattern: h.clone(), n, value, witness, exact: run.complete, stats: run.stats })
}

/// Outcome of asking whether some coloring of `K_n` has at most `target`
/// monochromatic copies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub pattern: PatternGraph,
    pub n: usize,
    pub target: u128,
    #[serde(with = "crate::report::opt_kcol_serde")]
    pub witness: Option<TwoColoring>,
    /// The search finished: `witness == None` is then a proof of absence.
    pub complete: bool,
    pub stats: SearchStats,
}

pub fn coloring_at_most(h: &PatternGraph, n: usize, target: u128, budget: &Budget) -> Result<DecisionReport> {
    check_board(h, n)?;
    let target64 = u64::try_from(target).unwrap_or(u64::MAX);
    let opts = SearchOptions { budget: budget.clone(), checkpoint: None };
    let run = engine::run(h, n, engine::Goal::AtMost { target: target64 }, &opts)?;
    let found = run.best.map(|(_, w)| w);
    Ok(DecisionReport {
        pattern: h.clone(),
        n,
        target,
        complete: run.complete || found.is_some(),
        witness: found,
        stats: run.stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RamseyOutcome {
    /// `r(h) = value`.
    Exact { value: usize },
    /// Every board up to `n_max` admits a monochromatic-free coloring.
    ExceedsMax { n_max: usize },
    /// The budget ran out while deciding board `n`.
    Unknown { n: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyReport {
    pub pattern: PatternGraph,
    pub outcome: RamseyOutcome,
    /// A coloring of the largest board shown to avoid monochromatic copies.
    #[serde(with = "crate::report::opt_kcol_serde")]
    pub witness_below: Option<TwoColoring>,
    pub stats: SearchStats,
}

impl RamseyReport {
    pub fn value(&self) -> Option<usize> {
        match self.outcome {
            RamseyOutcome::Exact { value } => Some(value),
            _ => None,
        }
    }
}

/// `r(h)`: least `n <= n_max` such that every coloring of `K_n` has a
/// monochromatic copy.
pub fn ramsey_number(h: &PatternGraph, n_max: usize, budget: &Budget) -> Result<RamseyReport> {
    let k = h.vertex_count();
    if n_max > MAX_SEARCH_VERTICES {
        return Err(Error::pre(format!("n_max {n_max} exceeds search limit {MAX_SEARCH_VERTICES}")));
    }
    // K_{k-1} has no copy at all.
    let mut witness_below = Some(TwoColoring::all_red(k - 1)?);
    let mut stats = SearchStats::default();
    for n in k..=n_max {
        let d = coloring_at_most(h, n, 0, budget)?;
        stats.absorb(&d.stats);
        match (d.witness, d.complete) {
            (Some(w), _) => witness_below = Some(w),
            (None, true) => {
                return Ok(RamseyReport {
                    pattern: h.clone(),
                    outcome: RamseyOutcome::Exact { value: n },
                    witness_below,
                    stats,
                })
            }
            (None, false) => {
                return Ok(RamseyReport {
                    pattern: h.clone(),
                    outcome: RamseyOutcome::Unknown { n },
                    witness_below,
                    stats,
                })
            }
        }
    }
    Ok(RamseyReport { pattern: h.clone(), outcome: RamseyOutcome::ExceedsMax { n_max }, witness_below, stats })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub ramsey: RamseyReport,
    pub multiplicity: Option<MultiplicityReport>,
}

/// `m(h) = M(h, r(h))`.
pub fn threshold_multiplicity(h: &PatternGraph, n_max: usize, budget: &Budget) -> Result<ThresholdReport> {
    let ramsey = ramsey_number(h, n_max, budget)?;
    let multiplicity = match ramsey.value() {
        Some(r) => Some(multiplicity(h, r, budget)?),
        None => None,
    };
    Ok(ThresholdReport { ramsey, multiplicity })
}
