//! ε-regular pairs: densities, an exact regularity decision procedure, the
//! measured regularity defect of a concrete pair, and degree exceptions.

mod bounds;
mod harness;
mod system;

pub use bounds::{
    countcycle1_bound, countpath2_part1_bound, countpath2_part2_bound, BoundEvaluation, HypothesisCheck,
    HypothesisKind, ParamMode, RegimeParams,
};
pub use harness::{
    generate_system, measure, verify_counting_lemma, CountingLemma, GridSpec, LemmaReport, LemmaRow, Verdict,
    DEFAULT_QUASIRANDOM_DENSITY,
};
pub use system::{
    count_transversal_paths, count_transversal_paths_between, count_transversal_paths_between_with_budget,
    count_transversal_paths_with_budget, Family, PairSystem, DEFAULT_COUNT_BUDGET,
};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// Exact mode enumerates every subset of the smaller side.
pub const EXACT_REGULARITY_LIMIT: usize = 14;

const SIZE_EPS: f64 = 1e-9;
const DEV_EPS: f64 = 1e-12;

/// `d(X, Y)`; when `x == y` this is the same-set density `2e(X)/|X|²`.
pub fn density(x: VertexSet, y: VertexSet, g: &SimpleGraph) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::pre("density of an empty vertex set"));
    }
    check_in_graph(x.union(y), g)?;
    if x == y {
        let m = x.len() as f64;
        return Ok(2.0 * g.edges_within(x) as f64 / (m * m));
    }
    if !x.is_disjoint(y) {
        return Err(Error::pre("bipartite density needs disjoint sets"));
    }
    Ok(g.edges_between(x, y) as f64 / (x.len() * y.len()) as f64)
}

fn check_in_graph(s: VertexSet, g: &SimpleGraph) -> Result<()> {
    if !s.is_subset(VertexSet::full(g.n())) {
        let v = s.difference(VertexSet::full(g.n())).first().unwrap();
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

/// Smallest subset size allowed by the definition: `|U| ≥ ε|X|`.
pub fn size_floor(eps: f64, m: usize) -> usize {
    ((eps * m as f64 - SIZE_EPS).ceil().max(1.0) as usize).min(m.max(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RegularityMode {
    Exact,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    Irregular {
        u: Vec<usize>,
        v: Vec<usize>,
        deviation: f64,
    },
    /// No witness among the samples; randomized mode never certifies.
    Unknown {
        samples: u64,
    },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

fn check_pair(x: VertexSet, y: VertexSet, g: &SimpleGraph) -> Result<()> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::pre("regularity of an empty vertex set"));
    }
    if !x.is_disjoint(y) {
        return Err(Error::pre("regular pair sides must be disjoint"));
    }
    check_in_graph(x.union(y), g)
}

/// `|d(U,V) − d(X,Y)|` from integer edge counts, rounded once.
fn deviation(e_uv: usize, a: usize, b: usize, e_xy: usize, nx: usize, ny: usize) -> f64 {
    let lhs = (e_uv * nx * ny) as i128;
    let rhs = (e_xy * a * b) as i128;
    (lhs - rhs).unsigned_abs() as f64 / (a * b * nx * ny) as f64
}

/// For each pair of subset sizes `(a, b)` (on the enumerated side `E` and the
/// other side `O`), the largest deviation over all subsets of those sizes.
struct DevTable {
    e: Vec<usize>,
    o: Vec<usize>,
    /// `(deviation, U mask over e, b, high side?)`, row-major over `(a-1, b-1)`.
    best: Vec<(f64, u64, usize, bool)>,
    swapped: bool,
}

impl DevTable {
    fn build(x: VertexSet, y: VertexSet, g: &SimpleGraph) -> Result<Self> {
        check_pair(x, y, g)?;
        let swapped = y.len() < x.len();
        let (es, os) = if swapped { (y, x) } else { (x, y) };
        if es.len() > EXACT_REGULARITY_LIMIT {
            return Err(Error::pre(format!(
                "exact regularity enumerates the smaller side; {} > {EXACT_REGULARITY_LIMIT} vertices",
                es.len()
            )));
        }
        let e = es.to_vec();
        let o = os.to_vec();
        let (ne, no) = (e.len(), o.len());
        let e_xy = g.edges_between(es, os);
        let mut best = vec![(-1.0, 0u64, 0usize, true); ne * no];
        let mut deg: Vec<(usize, usize)> = vec![(0, 0); no];
        for mask in 1u64..(1u64 << ne) {
            let u = lift(mask, &e);
            let a = mask.count_ones() as usize;
            for (j, &w) in o.iter().enumerate() {
                deg[j] = (g.degree_into(w, u), j);
            }
            deg.sort_unstable();
            let (mut lo, mut hi) = (0usize, 0usize);
            for b in 1..=no {
                lo += deg[b - 1].0;
                hi += deg[no - b].0;
                let slot = &mut best[(a - 1) * no + (b - 1)];
                let dh = deviation(hi, a, b, e_xy, ne, no);
                let dl = deviation(lo, a, b, e_xy, ne, no);
                let (d, high) = if dh >= dl { (dh, true) } else { (dl, false) };
                if d > slot.0 {
                    *slot = (d, mask, b, high);
                }
            }
        }
        Ok(DevTable { e, o, best, swapped })
    }

    /// Largest deviation over sizes `a ≥ fe`, `b ≥ fo` with its slot.
    fn max_from(&self, fe: usize, fo: usize) -> (f64, (u64, usize, bool)) {
        let no = self.o.len();
        let mut out = (0.0, (0, 0, true));
        for a in fe..=self.e.len() {
            for b in fo..=no {
                let s = self.best[(a - 1) * no + (b - 1)];
                if s.0 > out.0 {
                    out = (s.0, (s.1, s.2, s.3));
                }
            }
        }
        out
    }

    fn floors(&self, eps: f64) -> (usize, usize) {
        (size_floor(eps, self.e.len()), size_floor(eps, self.o.len()))
    }

    /// Rebuilds the `V` of a stored slot by the same deterministic sort.
    fn witness(&self, g: &SimpleGraph, slot: (u64, usize, bool)) -> (VertexSet, VertexSet) {
        let (mask, b, high) = slot;
        let u = lift(mask, &self.e);
        let mut deg: Vec<(usize, usize)> = self.o.iter().enumerate().map(|(j, &w)| (g.degree_into(w, u), j)).collect();
        deg.sort_unstable();
        let chosen: Vec<usize> = if high { deg[deg.len() - b..].to_vec() } else { deg[..b].to_vec() }
            .into_iter()
            .map(|(_, j)| self.o[j])
            .collect();
        let v: VertexSet = chosen.into_iter().collect();
        if self.swapped {
            (v, u)
        } else {
            (u, v)
        }
    }
}

fn lift(mask: u64, verts: &[usize]) -> VertexSet {
    let mut s = VertexSet::default();
    for (i, &v) in verts.iter().enumerate() {
        if (mask >> i) & 1 == 1 {
            s.insert(v);
        }
    }
    s
}

pub fn check_regularity(
    x: VertexSet,
    y: VertexSet,
    g: &SimpleGraph,
    eps: f64,
    mode: RegularityMode,
) -> Result<Regularity> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::pre(format!("eps must lie in (0,1), got {eps}")));
    }
    match mode {
        RegularityMode::Exact => {
            let table = DevTable::build(x, y, g)?;
            let (fe, fo) = table.floors(eps);
            let (dev, slot) = table.max_from(fe, fo);
            if dev > eps + DEV_EPS {
                let (u, v) = table.witness(g, slot);
                Ok(Regularity::Irregular { u: u.to_vec(), v: v.to_vec(), deviation: dev })
            } else {
                Ok(Regularity::Regular)
            }
        }
        RegularityMode::Randomized { samples, seed } => {
            check_pair(x, y, g)?;
            if samples == 0 {
                return Err(Error::pre("randomized regularity needs at least one sample"));
            }
            let (xv, yv) = (x.to_vec(), y.to_vec());
            let (a, b) = (size_floor(eps, xv.len()), size_floor(eps, yv.len()));
            let e_xy = g.edges_between(x, y);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let u = pick(&xv, a, &mut rng);
                let v = pick(&yv, b, &mut rng);
                let dev = deviation(g.edges_between(u, v), a, b, e_xy, xv.len(), yv.len());
                if dev > eps + DEV_EPS {
                    return Ok(Regularity::Irregular { u: u.to_vec(), v: v.to_vec(), deviation: dev });
                }
            }
            Ok(Regularity::Unknown { samples })
        }
    }
}

fn pick(from: &[usize], k: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    sample(rng, from.len(), k).iter().map(|i| from[i]).collect()
}

/// The smallest `ε` for which the pair is ε-regular (exactly).
///
/// The size floors jump at `i/|X|` and `j/|Y|`, so the set of admissible ε is
/// a union of half-open intervals. When the infimum sits on a jump and is not
/// itself admissible, a value a hair above it is returned; every bound in this
/// crate is non-increasing in ε, so that stays on the safe side.
pub fn regularity_defect(x: VertexSet, y: VertexSet, g: &SimpleGraph) -> Result<f64> {
    let table = DevTable::build(x, y, g)?;
    let (ne, no) = (table.e.len(), table.o.len());
    let mut cuts: Vec<f64> =
        (0..=ne).map(|i| i as f64 / ne as f64).chain((0..=no).map(|j| j as f64 / no as f64)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (fe, fo) = table.floors(hi);
        let (dev, _) = table.max_from(fe, fo);
        if dev <= hi + DEV_EPS {
            if dev > lo {
                return Ok(dev);
            }
            return Ok(if lo == 0.0 { 0.0 } else { lo + lo * 1e-12 });
        }
    }
    Ok(1.0)
}

/// Vertices of `X` whose `Y′`-degree is above `(d+ε)|Y′|` and below `(d−ε)|Y′|`.
pub fn degree_exception_counts(x: VertexSet, y_prime: VertexSet, g: &SimpleGraph, d: f64, eps: f64) -> (usize, usize) {
    let m = y_prime.len() as f64;
    let (hi, lo) = ((d + eps) * m, (d - eps) * m);
    let mut out = (0, 0);
    for v in x.iter().filter(|&v| v < g.n()) {
        let k = g.degree_into(v, y_prime) as f64;
        if k > hi + SIZE_EPS {
            out.0 += 1;
        }
        if k < lo - SIZE_EPS {
            out.1 += 1;
        }
    }
    out
}

/// Regularity parameter of a slice `(X′, Y′)` with `|X′| ≥ α|X|`, `|Y′| ≥ α|Y|`.
pub fn slice_params(eps: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::pre(format!("alpha must lie in (0,1], got {alpha}")));
    }
    Ok((eps / alpha).max(2.0 * eps))
}
