//! Bitset graphs on at most [`MAX_VERTICES`] vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on vertex count: one `u64` adjacency row per vertex.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices below [`MAX_VERTICES`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn range(start: usize, end: usize) -> Self {
        VertexSet(Self::full(end).0 & !Self::full(start).0)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(Error::TooManyVertices(bad + 1));
        }
        Ok(v.into_iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of a [`VertexSet`], ascending.
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

/// Undirected simple graph with one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// Complete bipartite graph between `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut g = Self::empty(a + b)?;
        let left = VertexSet::range(0, a);
        let right = VertexSet::range(a, a + b);
        g.join(left, right);
        Ok(g)
    }

    /// The cycle `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPattern(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Self::empty(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidPattern(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows, checking symmetry and loop-freeness.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let all = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !all != 0 || (row >> v) & 1 == 1 {
                return Err(Error::InvalidPattern(format!("bad adjacency row for vertex {v}")));
            }
            for u in VertexSet(row).iter() {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(Error::InvalidPattern(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(SimpleGraph { n, adj: rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    /// Add every edge between `x` and `y` (which must be disjoint).
    pub fn join(&mut self, x: VertexSet, y: VertexSet) {
        debug_assert!(x.is_disjoint(y));
        for u in x.iter() {
            self.adj[u] |= y.0;
        }
        for v in y.iter() {
            self.adj[v] |= x.0;
        }
    }

    /// Make `s` a clique.
    pub fn make_clique(&mut self, s: VertexSet) {
        for u in s.iter() {
            self.adj[u] |= s.0 & !(1u64 << u);
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degree_into(&self, v: usize, s: VertexSet) -> usize {
        (self.adj[v] & s.0).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, s)).sum::<usize>() / 2
    }

    /// Number of edges with one end in `x` and the other in `y` (disjoint sets).
    pub fn edges_between(&self, x: VertexSet, y: VertexSet) -> usize {
        x.iter().map(|v| self.degree_into(v, y)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| VertexSet(self.adj[u] & !VertexSet::full(u + 1).0).iter().map(move |v| (u, v)))
    }

    /// Graph on the same vertex set with the complementary edge set.
    pub fn complement(&self) -> SimpleGraph {
        let all = VertexSet::full(self.n).0;
        let adj = self.adj.iter().enumerate().map(|(v, &r)| !r & all & !(1u64 << v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// Relabel: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                adj[perm[u]] |= 1u64 << perm[v];
            }
        }
        SimpleGraph { n: self.n, adj }
    }

    /// Subgraph induced on `s`, relabelled to `0..|s|` in ascending order.
    pub fn induced(&self, s: VertexSet) -> SimpleGraph {
        let verts = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| VertexSet(self.adj[v] & s.0).iter().fold(0u64, |acc, u| acc | 1u64 << index[u]))
            .collect();
        SimpleGraph { n: verts.len(), adj }
    }

    /// Same vertex set with every edge touching `s` removed.
    pub fn without_vertices(&self, s: VertexSet) -> SimpleGraph {
        let adj = self.adj.iter().enumerate().map(|(v, &r)| if s.contains(v) { 0 } else { r & !s.0 }).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// Connected components restricted to `within`.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                let fresh = VertexSet(next & within.0 & !comp.0);
                comp = comp.union(fresh);
                frontier = fresh;
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
