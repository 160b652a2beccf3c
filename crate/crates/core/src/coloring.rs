//! Red/blue edge-colorings of the complete graph.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Number of unordered pairs of an `n`-set.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major index of the pair `(i, j)`, `i < j < n`.
#[inline]
pub const fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)`, `i < j`, in row-major order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// A two-coloring of the edges of `K_n`. Bit `pair_index(n, i, j)` of the
/// mask is 1 when `ij` is red; blue is the complement.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoColoring {
    n: usize,
    red_mask: Vec<u64>,
}

impl TwoColoring {
    pub fn all_blue(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(TwoColoring { n, red_mask: vec![0; pair_count(n).div_ceil(64)] })
    }

    pub fn all_red(n: usize) -> Result<Self> {
        let mut c = Self::all_blue(n)?;
        for (i, j) in pairs(n) {
            c.set(i, j, Color::Red);
        }
        Ok(c)
    }

    /// The coloring whose red graph is `red`.
    pub fn from_red_graph(red: &SimpleGraph) -> Self {
        let n = red.n();
        let mut c = Self::all_blue(n).expect("graph already within cap");
        for (i, j) in red.edges() {
            c.set(i, j, Color::Red);
        }
        c
    }

    /// Build from the packed mask words; bits past `C(n,2)` must be clear.
    pub fn from_mask_words(n: usize, words: Vec<u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let bits = pair_count(n);
        if words.len() != bits.div_ceil(64) {
            return Err(Error::pre(format!("expected {} mask words, got {}", bits.div_ceil(64), words.len())));
        }
        if !bits.is_multiple_of(64) {
            if let Some(last) = words.last() {
                if last >> (bits % 64) != 0 {
                    return Err(Error::pre("mask has bits beyond C(n,2)"));
                }
            }
        }
        Ok(TwoColoring { n, red_mask: words })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask_words(&self) -> &[u64] {
        &self.red_mask
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let b = pair_index(self.n, i, j);
        if (self.red_mask[b / 64] >> (b % 64)) & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, color: Color) {
        debug_assert!(i != j);
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let b = pair_index(self.n, i, j);
        match color {
            Color::Red => self.red_mask[b / 64] |= 1u64 << (b % 64),
            Color::Blue => self.red_mask[b / 64] &= !(1u64 << (b % 64)),
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let c = self.color(i, j);
        self.set(i, j, c.other());
    }

    pub fn graph(&self, color: Color) -> SimpleGraph {
        let mut rows = vec![0u64; self.n];
        for (i, j) in pairs(self.n) {
            if self.color(i, j) == color {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
        }
        SimpleGraph::from_rows(rows).expect("rows are symmetric by construction")
    }

    pub fn red_graph(&self) -> SimpleGraph {
        self.graph(Color::Red)
    }

    pub fn blue_graph(&self) -> SimpleGraph {
        self.graph(Color::Blue)
    }

    /// Exchange the two colors on every edge.
    pub fn swapped(&self) -> TwoColoring {
        let bits = pair_count(self.n);
        let mut words: Vec<u64> = self.red_mask.iter().map(|w| !w).collect();
        if !bits.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (bits % 64)) - 1;
            }
        }
        TwoColoring { n: self.n, red_mask: words }
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> TwoColoring {
        let mut out = TwoColoring::all_blue(self.n).unwrap();
        for (i, j) in pairs(self.n) {
            if self.color(i, j) == Color::Red {
                out.set(perm[i], perm[j], Color::Red);
            }
        }
        out
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Within-set count of `color` edges.
    pub fn edges_within(&self, s: VertexSet, color: Color) -> usize {
        let v: Vec<usize> = s.to_vec();
        let mut count = 0;
        for (a, &i) in v.iter().enumerate() {
            for &j in &v[a + 1..] {
                if self.color(i, j) == color {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn edges_between(&self, x: VertexSet, y: VertexSet, color: Color) -> usize {
        let mut count = 0;
        for i in x.iter() {
            for j in y.iter() {
                if i != j && self.color(i, j) == color {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoColoring(n={}, red={:?})", self.n, self.red_graph())
    }
}
