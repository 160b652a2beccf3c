//! The two-clique colorings `chi(a, b)`, distance to extremality, and the
//! structural claims used to lower-bound monochromatic odd cycles in
//! near-extremal colorings.

mod case2;
mod claims;
pub mod instances;

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TwoColoring};
use crate::error::{Error, Result};
use crate::graph::{VertexSet, MAX_VERTICES};

pub use case2::{case2_lower_bound, CaseTwoCertificate, ClaimKind, WitnessStructure};
pub use claims::{
    bridged_cliques_bound, claim_alternating_bound, claim_common_neighbor_bound, min_common_neighbors,
    two_matching_reduction, verify_claim_alternating, verify_claim_bridged_cliques, verify_claim_common_neighbor,
    ClaimCheck, Reduction,
};

/// Largest board for exact extremal-parameter enumeration.
pub const EXACT_EXTREMAL_LIMIT: usize = 24;

/// Two blue cliques on `0..a` and `a..a+b`, every cross edge red.
pub fn chi(a: usize, b: usize) -> Result<TwoColoring> {
    if a == 0 || b == 0 {
        return Err(Error::pre(format!("chi({a}, {b}): both parts must be non-empty")));
    }
    let n = a.checked_add(b).filter(|&n| n <= MAX_VERTICES).ok_or(Error::TooManyVertices(a.saturating_add(b)))?;
    let mut c = TwoColoring::all_blue(n)?;
    for i in 0..a {
        for j in a..n {
            c.set(i, j, Color::Red);
        }
    }
    Ok(c)
}

/// A non-negative rational, kept exact for reporting extremal parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den).max(1);
        Fraction { num: num / g, den: den / g }
    }

    pub fn zero() -> Self {
        Fraction { num: 0, den: 1 }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `max(0, (p - q) / r)` as a fraction.
fn deficit(p: u64, q: u64, r: u64) -> Fraction {
    if q >= p || r == 0 {
        Fraction::zero()
    } else {
        Fraction::new(p - q, r)
    }
}

/// Density of `e` edges inside an `m`-set, normalised by `C(m, 2)`; sets
/// with fewer than two vertices count as fully dense.
pub fn within_density(e: usize, m: usize) -> f64 {
    if m < 2 {
        1.0
    } else {
        e as f64 / (m * (m - 1) / 2) as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ExtremalMode {
    Exact,
    LocalSearch { restarts: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalAssessment {
    pub a: VertexSet,
    pub b: VertexSet,
    pub lambda_star: f64,
    pub lambda_exact: Fraction,
    /// The color that is dense inside both parts.
    pub inside_color: Color,
    /// False for local search, whose value is only an upper bound.
    pub exact: bool,
}

/// Edge counts of one bipartition in the inside color `red`.
#[derive(Clone, Copy)]
struct Split {
    a: u64,
    b: u64,
    red_a: u64,
    red_b: u64,
    red_cross: u64,
}

impl Split {
    /// Least λ for which this split satisfies every inequality, in the
    /// given role (`inside_red = true`: red inside, blue across).
    fn lambda(&self, n: u64, inside_red: bool) -> Fraction {
        let pa = self.a * self.a.saturating_sub(1) / 2;
        let pb = self.b * self.b.saturating_sub(1) / 2;
        let cross = self.a * self.b;
        let (in_a, in_b, across) = if inside_red {
            (self.red_a, self.red_b, cross - self.red_cross)
        } else {
            (pa - self.red_a, pb - self.red_b, self.red_cross)
        };
        [
            deficit(n, 2 * self.a, 2 * n),
            deficit(n, 2 * self.b, 2 * n),
            deficit(pa, in_a, pa),
            deficit(pb, in_b, pb),
            deficit(cross, across, cross),
        ]
        .into_iter()
        .max()
        .unwrap()
    }
}

fn split_of(red: &[u64], a_mask: u64, n: usize) -> Split {
    let b_mask = VertexSet::full(n).0 & !a_mask;
    let mut s =
        Split { a: a_mask.count_ones() as u64, b: b_mask.count_ones() as u64, red_a: 0, red_b: 0, red_cross: 0 };
    for (v, &row) in red.iter().enumerate().take(n) {
        if (a_mask >> v) & 1 == 1 {
            s.red_a += (row & a_mask).count_ones() as u64;
            s.red_cross += (row & b_mask).count_ones() as u64;
        } else {
            s.red_b += (row & b_mask).count_ones() as u64;
        }
    }
    s.red_a /= 2;
    s.red_b /= 2;
    s
}

/// Smallest λ for which `c` is an extremal coloring with parameter λ.
pub fn extremal_parameter(c: &TwoColoring, mode: ExtremalMode) -> Result<ExtremalAssessment> {
    let n = c.n();
    if n < 2 {
        return Err(Error::pre("extremal parameter needs at least two vertices"));
    }
    let red = c.red_graph();
    let rows = red.rows();
    let (mask, lam, inside_red) = match mode {
        ExtremalMode::Exact => {
            if n > EXACT_EXTREMAL_LIMIT {
                return Err(Error::pre(format!(
                    "exact mode enumerates 2^(n-1) bipartitions; n = {n} exceeds {EXACT_EXTREMAL_LIMIT}"
                )));
            }
            exact_search(rows, n)
        }
        ExtremalMode::LocalSearch { restarts, seed } => local_search(rows, n, restarts.max(1), seed),
    };
    let a = VertexSet(mask);
    Ok(ExtremalAssessment {
        a,
        b: VertexSet::full(n).difference(a),
        lambda_star: lam.to_f64(),
        lambda_exact: lam,
        inside_color: if inside_red { Color::Red } else { Color::Blue },
        exact: matches!(mode, ExtremalMode::Exact),
    })
}

/// Gray-code walk over every bipartition with vertex `n-1` in `B`.
fn exact_search(red: &[u64], n: usize) -> (u64, Fraction, bool) {
    let nn = n as u64;
    let mut a_mask = 0u64;
    let mut s = Split {
        a: 0,
        b: nn,
        red_a: 0,
        red_b: (red.iter().map(|r| r.count_ones() as u64).sum::<u64>()) / 2,
        red_cross: 0,
    };
    let mut best: Option<(Fraction, u64, bool)> = None;
    let total: u64 = 1 << (n - 1);
    for step in 1..total {
        let v = step.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let b_mask = VertexSet::full(n).0 & !a_mask;
        let ra = (red[v] & a_mask).count_ones() as u64;
        let rb = (red[v] & b_mask).count_ones() as u64;
        if a_mask & bit == 0 {
            s.red_a += ra;
            s.red_b -= rb;
            s.red_cross = s.red_cross + rb - ra;
            s.a += 1;
            s.b -= 1;
        } else {
            s.red_a -= ra;
            s.red_b += rb;
            s.red_cross = s.red_cross + ra - rb;
            s.a -= 1;
            s.b += 1;
        }
        a_mask ^= bit;
        for inside_red in [true, false] {
            let lam = s.lambda(nn, inside_red);
            if best.is_none_or(|(b, _, _)| lam < b) {
                best = Some((lam, a_mask, inside_red));
            }
        }
    }
    let (lam, mask, role) = best.expect("n >= 2 has a bipartition");
    (mask, lam, role)
}

fn local_search(red: &[u64], n: usize, restarts: usize, seed: u64) -> (u64, Fraction, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = n as u64;
    let full = VertexSet::full(n).0;
    let score = |mask: u64| -> (Fraction, bool) {
        let s = split_of(red, mask, n);
        let (r, b) = (s.lambda(nn, true), s.lambda(nn, false));
        if r <= b {
            (r, true)
        } else {
            (b, false)
        }
    };
    let mut best: Option<(Fraction, u64, bool)> = None;
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..restarts {
        let mut mask = 0u64;
        while mask == 0 || mask == full {
            mask = rng.random::<u64>() & full;
        }
        let (mut cur, mut role) = score(mask);
        loop {
            let mut improved = false;
            order.shuffle(&mut rng);
            for &v in &order {
                let next = mask ^ (1 << v);
                if next == 0 || next == full {
                    continue;
                }
                let (lam, r) = score(next);
                if lam < cur {
                    (mask, cur, role, improved) = (next, lam, r, true);
                }
            }
            if !improved {
                break;
            }
        }
        if best.is_none_or(|(b, _, _)| cur < b) {
            best = Some((cur, mask, role));
        }
    }
    let (lam, mask, role) = best.unwrap();
    (mask, lam, role)
}

/// Checks the inequalities for `(a, b)` at `lambda` with `inside` dense
/// within both parts; returns the first violated one.
pub fn check_extremal(
    c: &TwoColoring,
    a: VertexSet,
    b: VertexSet,
    lambda: f64,
    inside: Color,
    sizes: bool,
) -> Result<()> {
    let n = c.n();
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) || a.union(b) != VertexSet::full(n) {
        return Err(Error::pre("A and B must be non-empty and partition the vertex set"));
    }
    let tol = 1e-12;
    if sizes {
        for (name, s) in [("A", a), ("B", b)] {
            if (s.len() as f64) < (0.5 - lambda) * n as f64 - tol {
                return Err(Error::pre(format!("|{name}| = {} is below (1/2 - lambda) n", s.len())));
            }
        }
    }
    for (name, s) in [("A", a), ("B", b)] {
        let d = within_density(c.edges_within(s, inside), s.len());
        if d < 1.0 - lambda - tol {
            return Err(Error::pre(format!("{name} {inside} density {d:.4} below 1-lambda")));
        }
    }
    let cross = c.edges_between(a, b, inside.other()) as f64 / (a.len() * b.len()) as f64;
    if cross < 1.0 - lambda - tol {
        return Err(Error::pre(format!("cross {} density below 1-lambda ({cross:.4})", inside.other())));
    }
    Ok(())
}

/// Picks the color role in which `(a, b)` is extremal at `lambda`; on
/// failure reports the red-inside violation unless only the blue-inside
/// role gets past the within-part densities.
fn detect_role(c: &TwoColoring, a: VertexSet, b: VertexSet, lambda: f64, sizes: bool) -> Result<Color> {
    let red = check_extremal(c, a, b, lambda, Color::Red, sizes);
    if red.is_ok() {
        return Ok(Color::Red);
    }
    let blue = check_extremal(c, a, b, lambda, Color::Blue, sizes);
    if blue.is_ok() {
        return Ok(Color::Blue);
    }
    let within_failed =
        |e: &Result<()>| matches!(e, Err(Error::Precondition(m)) if m.contains("density") && !m.starts_with("cross"));
    if within_failed(&red) && !within_failed(&blue) {
        blue.map(|_| Color::Blue)
    } else {
        red.map(|_| Color::Red)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CleanupResult {
    pub a_prime: VertexSet,
    pub b_prime: VertexSet,
    pub x: VertexSet,
    pub y: VertexSet,
    pub lambda: f64,
    /// The color dense inside `A` and `B` (called red in the argument).
    pub inside_color: Color,
}

/// Removes the low-degree vertices of a near-extremal partition.
///
/// A vertex of `A` goes to `X` when its inside-color degree in `A` is at
/// most `(1-√λ)(|A|-1)` or its cross-color degree into `B` is at most
/// `(1-√λ)|B|`; `Y` is defined symmetrically.
pub fn cleanup(c: &TwoColoring, a: VertexSet, b: VertexSet, lambda: f64) -> Result<CleanupResult> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::pre(format!("lambda = {lambda} must lie in [0, 1]")));
    }
    let inside = detect_role(c, a, b, lambda, false)?;
    let g_in = c.graph(inside);
    let g_out = c.graph(inside.other());
    let root = lambda.sqrt();
    let bad = |own: VertexSet, other: VertexSet| -> VertexSet {
        own.iter()
            .filter(|&v| {
                g_in.degree_into(v, own) as f64 <= (1.0 - root) * (own.len() - 1) as f64
                    || g_out.degree_into(v, other) as f64 <= (1.0 - root) * other.len() as f64
            })
            .collect()
    };
    let x = bad(a, b);
    let y = bad(b, a);
    let r = CleanupResult { a_prime: a.difference(x), b_prime: b.difference(y), x, y, lambda, inside_color: inside };
    r.verify(c, a, b)?;
    Ok(r)
}

impl CleanupResult {
    /// Re-checks the partition, size and degree guarantees.
    pub fn verify(&self, c: &TwoColoring, a: VertexSet, b: VertexSet) -> Result<()> {
        if self.a_prime.union(self.x) != a || self.b_prime.union(self.y) != b || !self.a_prime.is_disjoint(self.x) {
            return Err(Error::hyp("cleanup parts do not partition A and B"));
        }
        let root = self.lambda.sqrt();
        let tol = 1e-9;
        if self.x.len() as f64 > 2.0 * root * a.len() as f64 + tol
            || self.y.len() as f64 > 2.0 * root * b.len() as f64 + tol
        {
            return Err(Error::hyp("cleanup removed more than 2 sqrt(lambda) of a part"));
        }
        let g_in = c.graph(self.inside_color);
        let g_out = c.graph(self.inside_color.other());
        for (own, other, full_own, full_other) in
            [(self.a_prime, self.b_prime, a, b), (self.b_prime, self.a_prime, b, a)]
        {
            for v in own.iter() {
                let din = g_in.degree_into(v, own) as f64;
                let dout = g_out.degree_into(v, other) as f64;
                if din < (1.0 - 3.0 * root) * full_own.len() as f64 - 1.0 - tol
                    || dout < (1.0 - 3.0 * root) * full_other.len() as f64 - tol
                {
                    return Err(Error::hyp(format!("vertex {v} misses the post-cleanup degree guarantee")));
                }
            }
        }
        Ok(())
    }
}

/// Random λ-perturbation helper shared by tests and the verification
/// harness: flips each edge independently with probability `p`.
pub fn perturb(c: &TwoColoring, p: f64, rng: &mut impl Rng) -> TwoColoring {
    let mut out = c.clone();
    for (i, j) in crate::coloring::pairs(c.n()) {
        if rng.random::<f64>() < p {
            out.flip(i, j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::mono_counts;
    use crate::pattern::PatternGraph;

    #[test]
    fn chi_counts() {
        assert_eq!(mono_counts(&chi(5, 4).unwrap(), &PatternGraph::Cycle(5)).unwrap(), (0, 12));
        assert_eq!(mono_counts(&chi(4, 4).unwrap(), &PatternGraph::Cycle(5)).unwrap(), (0, 0));
        let one = chi(1, 1).unwrap();
        assert_eq!(one.color(0, 1), Color::Red);
        assert!(chi(0, 3).is_err());
    }

    #[test]
    fn lambda_of_chi() {
        let e = extremal_parameter(&chi(5, 5).unwrap(), ExtremalMode::Exact).unwrap();
        assert_eq!(e.lambda_exact, Fraction::zero());
        assert_eq!(e.inside_color, Color::Blue);
        let e = extremal_parameter(&chi(5, 4).unwrap(), ExtremalMode::Exact).unwrap();
        assert_eq!(e.lambda_exact, Fraction { num: 1, den: 18 });
        let e = extremal_parameter(&TwoColoring::all_red(6).unwrap(), ExtremalMode::Exact).unwrap();
        assert_eq!(e.lambda_exact, Fraction { num: 1, den: 1 });
        assert!(extremal_parameter(&TwoColoring::all_red(1).unwrap(), ExtremalMode::Exact).is_err());
    }

    /// Direct recomputation over every bipartition, no Gray code.
    fn lambda_direct(c: &TwoColoring) -> Fraction {
        let n = c.n();
        let red = c.red_graph();
        let mut best = Fraction { num: u64::MAX, den: 1 };
        for mask in 1..(1u64 << n) - 1 {
            let s = split_of(red.rows(), mask, n);
            best = best.min(s.lambda(n as u64, true)).min(s.lambda(n as u64, false));
        }
        best
    }

    #[test]
    fn gray_code_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=9 {
            for _ in 0..5 {
                let c = perturb(&chi(n / 2 + n % 2, n / 2).unwrap_or(TwoColoring::all_red(n).unwrap()), 0.2, &mut rng);
                let e = extremal_parameter(&c, ExtremalMode::Exact).unwrap();
                assert_eq!(e.lambda_exact, lambda_direct(&c), "n = {n}");
                let l = extremal_parameter(&c, ExtremalMode::LocalSearch { restarts: 4, seed: 1 }).unwrap();
                assert!(l.lambda_exact >= e.lambda_exact);
            }
        }
    }

    #[test]
    fn cleanup_examples() {
        let a = VertexSet::range(0, 5);
        let b = VertexSet::range(5, 9);
        let r = cleanup(&chi(5, 4).unwrap(), a, b, 0.01).unwrap();
        assert!(r.x.is_empty() && r.y.is_empty());
        let mut c = chi(5, 4).unwrap();
        c.flip(0, 1);
        let r = cleanup(&c, a, b, 0.2).unwrap();
        assert!(r.x.is_empty());
        let err = cleanup(&TwoColoring::all_red(6).unwrap(), VertexSet::range(0, 3), VertexSet::range(3, 6), 0.01);
        assert!(matches!(err, Err(Error::Precondition(m)) if m.contains("cross blue density")));
    }
}
