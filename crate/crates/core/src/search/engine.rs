//! The task-parallel depth-first engine behind [`super::multiplicity`].

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::symmetry::SymmetryTable;
use super::{SearchOptions, SearchStats, Symmetry};
use crate::coloring::{pairs, Color, TwoColoring};
use crate::count::through_edge_rows;
use crate::error::{Error, Result};
use crate::pattern::PatternGraph;

/// Edges fixed by a task's prefix; `2^PREFIX_EDGES` tasks at most.
const PREFIX_EDGES: usize = 10;
/// Nodes a task expands between checks of the shared budget.
const FLUSH_EVERY: u64 = 1 << 12;
const FULL_SYMMETRY_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug)]
pub(super) enum Goal {
    /// Find the minimum; `incumbent` is a value known to be attainable.
    Minimize { incumbent: u64 },
    /// Find any coloring with at most `target` copies.
    AtMost { target: u64 },
}

impl Goal {
    fn label(&self) -> String {
        match self {
            Goal::Minimize { .. } => "minimize".into(),
            Goal::AtMost { target } => format!("at-most-{target}"),
        }
    }
}

pub(super) struct Run {
    pub best: Option<(u64, TwoColoring)>,
    pub complete: bool,
    pub stats: SearchStats,
}

struct Shared {
    /// Global incumbent: no leaf above this value is interesting.
    incumbent: AtomicU64,
    /// Lowest task index that reached the goal floor.
    first_hit: AtomicUsize,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Shared {
    fn flush(&self, nodes: u64) {
        let total = self.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.max_nodes || self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TaskRecord {
    value: Option<u64>,
    /// Edge colors as a string of `0` (red) / `1` (blue).
    coloring: Option<String>,
    stats: SearchStats,
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    pattern: String,
    n: usize,
    goal: String,
    symmetry: Symmetry,
    prefix_edges: usize,
    tasks: BTreeMap<usize, TaskRecord>,
}

enum TaskEnd {
    Finished,
    /// A lower-indexed task already reached the floor.
    Superseded,
    Budget,
}

struct Task<'a> {
    h: &'a PatternGraph,
    edges: &'a [(usize, usize)],
    sym: &'a SymmetryTable,
    shared: &'a Shared,
    goal: Goal,
    index: usize,
    col: Vec<u8>,
    adj: [Vec<u64>; 2],
    best: Option<(u64, Vec<u8>)>,
    pending: u64,
    stats: SearchStats,
    end: Option<TaskEnd>,
}

impl<'a> Task<'a> {
    /// Cheapest attainable-or-better value worth exploring from here.
    fn admits(&self, lb: u64) -> bool {
        match self.goal {
            Goal::AtMost { target } => lb <= target,
            Goal::Minimize { .. } => {
                if lb > self.shared.incumbent.load(Ordering::Relaxed) {
                    return false;
                }
                // Ties with another task's incumbent are kept so the witness
                // is the first optimum in search order, independent of timing.
                self.best.as_ref().is_none_or(|(v, _)| lb < *v)
            }
        }
    }

    fn floor(&self) -> u64 {
        match self.goal {
            Goal::AtMost { target } => target,
            Goal::Minimize { .. } => 0,
        }
    }

    fn push(&mut self, depth: usize, color: u8) -> u64 {
        let (u, v) = self.edges[depth];
        self.col.push(color);
        let adj = &mut self.adj[color as usize];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        through_edge_rows(adj, self.h, u, v) as u64
    }

    fn pop(&mut self, depth: usize) {
        let (u, v) = self.edges[depth];
        let color = self.col.pop().unwrap();
        let adj = &mut self.adj[color as usize];
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
    }

    fn should_stop(&mut self) -> bool {
        if self.end.is_some() {
            return true;
        }
        if self.shared.first_hit.load(Ordering::Relaxed) < self.index {
            self.end = Some(TaskEnd::Superseded);
        } else if self.shared.exhausted.load(Ordering::Relaxed) {
            self.end = Some(TaskEnd::Budget);
        }
        self.end.is_some()
    }

    fn count_node(&mut self) -> bool {
        self.stats.nodes += 1;
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.shared.flush(self.pending);
            self.pending = 0;
            return self.should_stop();
        }
        false
    }

    fn leaf(&mut self, value: u64) {
        self.stats.leaves += 1;
        self.best = Some((value, self.col.clone()));
        self.shared.incumbent.fetch_min(value, Ordering::Relaxed);
        if value <= self.floor() {
            self.shared.first_hit.fetch_min(self.index, Ordering::Relaxed);
            self.end = Some(TaskEnd::Finished);
        }
    }

    /// Explores every completion of the current prefix; `fixed` gives
    /// forced colors for the first edges (the task prefix).
    fn dfs(&mut self, depth: usize, lb: u64, fixed: &[u8]) {
        if depth == self.edges.len() {
            self.leaf(lb);
            return;
        }
        let choices: &[u8] = match fixed.get(depth) {
            Some(c) => std::slice::from_ref(c),
            None => &[0, 1],
        };
        for &color in choices {
            if self.end.is_some() || self.count_node() {
                return;
            }
            let delta = self.push(depth, color);
            let child = lb + delta;
            if !self.sym.is_canonical(&self.col, depth + 1) {
                self.stats.pruned_symmetry += 1;
            } else if !self.admits(child) {
                self.stats.pruned_bound += 1;
            } else {
                self.dfs(depth + 1, child, fixed);
            }
            self.pop(depth);
        }
    }
}

fn col_to_coloring(n: usize, edges: &[(usize, usize)], col: &[u8]) -> TwoColoring {
    let mut c = TwoColoring::all_blue(n).expect("board size checked");
    for (&(u, v), &b) in edges.iter().zip(col) {
        if b == 0 {
            c.set(u, v, Color::Red);
        }
    }
    c
}

fn load_checkpoint(path: &Path, header: &Checkpoint) -> Result<BTreeMap<usize, TaskRecord>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(Error::pre(format!("cannot read checkpoint {}: {e}", path.display()))),
    };
    let ck: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| Error::pre(format!("checkpoint {} is malformed: {e}", path.display())))?;
    if ck.pattern != header.pattern
        || ck.n != header.n
        || ck.goal != header.goal
        || ck.symmetry != header.symmetry
        || ck.prefix_edges != header.prefix_edges
    {
        return Err(Error::pre(format!("checkpoint {} belongs to a different search", path.display())));
    }
    Ok(ck.tasks)
}

fn save_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(ck).expect("checkpoint serializes");
    std::fs::write(&tmp, text)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Error::pre(format!("cannot write checkpoint {}: {e}", path.display())))
}

pub(super) fn run(h: &PatternGraph, n: usize, goal: Goal, opts: &SearchOptions) -> Result<Run> {
    let started = Instant::now();
    let budget = &opts.budget;
    if budget.symmetry == Symmetry::Full && n > FULL_SYMMETRY_LIMIT {
        return Err(Error::pre(format!("full symmetry pruning is limited to n <= {FULL_SYMMETRY_LIMIT}")));
    }
    let edges: Vec<(usize, usize)> = pairs(n).collect();
    let sym = SymmetryTable::new(n, budget.symmetry);
    let prefix = edges.len().min(PREFIX_EDGES);
    let n_tasks = 1usize << prefix;

    let header = Checkpoint {
        pattern: h.to_string(),
        n,
        goal: goal.label(),
        symmetry: budget.symmetry,
        prefix_edges: prefix,
        tasks: BTreeMap::new(),
    };
    let done = match &opts.checkpoint {
        Some(p) => load_checkpoint(p, &header)?,
        None => BTreeMap::new(),
    };

    let initial = match goal {
        Goal::Minimize { incumbent } => incumbent,
        Goal::AtMost { target } => target,
    };
    let shared = Shared {
        incumbent: AtomicU64::new(initial),
        first_hit: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.max_time.map(|d| started + d),
    };
    for (&i, rec) in &done {
        if let Some(v) = rec.value {
            shared.incumbent.fetch_min(v, Ordering::Relaxed);
            let floor = if let Goal::AtMost { target } = goal { target } else { 0 };
            if v <= floor {
                shared.first_hit.fetch_min(i, Ordering::Relaxed);
            }
        }
    }
    let checkpoint = Mutex::new(Checkpoint { tasks: done.clone(), ..header });

    let record = |task: &Task| TaskRecord {
        value: task.best.as_ref().map(|b| b.0),
        coloring: task.best.as_ref().map(|b| b.1.iter().map(|&x| (b'0' + x) as char).collect()),
        stats: task.stats.clone(),
    };
    let run_task = |index: usize| -> (usize, bool, Option<TaskRecord>) {
        if let Some(rec) = done.get(&index) {
            return (index, true, Some(rec.clone()));
        }
        let task_start = Instant::now();
        let fixed: Vec<u8> = (0..prefix).map(|e| ((index >> (prefix - 1 - e)) & 1) as u8).collect();
        let mut task = Task {
            h,
            edges: &edges,
            sym: &sym,
            shared: &shared,
            goal,
            index,
            col: Vec::with_capacity(edges.len()),
            adj: [vec![0; n], vec![0; n]],
            best: None,
            pending: 0,
            stats: SearchStats { tasks: 1, ..SearchStats::default() },
            end: None,
        };
        if task.should_stop() {
            return (index, false, None);
        }
        task.dfs(0, 0, &fixed);
        shared.flush(task.pending);
        task.stats.elapsed_ms = task_start.elapsed().as_millis() as u64;
        let finished = matches!(task.end, None | Some(TaskEnd::Finished));
        if !finished {
            // Partial tasks still contribute their incumbent.
            return (index, false, Some(record(&task)));
        }
        task.stats.tasks_completed = 1;
        let rec = record(&task);
        if let Some(path) = &opts.checkpoint {
            let mut ck = checkpoint.lock().unwrap();
            ck.tasks.insert(index, rec.clone());
            // A failed write only costs resumability, never correctness.
            let _ = save_checkpoint(path, &ck);
        }
        (index, true, Some(rec))
    };

    let results: Vec<(usize, bool, Option<TaskRecord>)> = if budget.threads <= 1 {
        (0..n_tasks).map(run_task).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.threads)
            .build()
            .map_err(|e| Error::pre(format!("cannot start thread pool: {e}")))?;
        pool.install(|| (0..n_tasks).into_par_iter().map(run_task).collect())
    };

    // Complete when every task that could still matter ran to the end:
    // tasks after the first one reaching the floor are irrelevant.
    let first_hit = shared.first_hit.load(Ordering::Relaxed);
    let complete = results.iter().all(|(i, finished, _)| *finished || *i > first_hit);
    let mut stats = SearchStats::default();
    let mut best: Option<(u64, usize, &String)> = None;
    for (index, _, rec) in &results {
        let Some(rec) = rec else { continue };
        stats.absorb(&rec.stats);
        if let (Some(v), Some(c)) = (rec.value, &rec.coloring) {
            if best.as_ref().is_none_or(|(bv, bi, _)| (v, *index) < (*bv, *bi)) {
                best = Some((v, *index, c));
            }
        }
    }
    stats.tasks = n_tasks;
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    let best = best.map(|(v, _, c)| {
        let col: Vec<u8> = c.bytes().map(|b| b - b'0').collect();
        (v, col_to_coloring(n, &edges, &col))
    });
    Ok(Run { best, complete, stats })
}
