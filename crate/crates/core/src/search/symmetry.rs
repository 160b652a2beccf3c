//! Partial lex-min tests under a fixed set of vertex permutations.
//!
//! Colorings are compared as edge vectors in search order with red (0)
//! before blue (1). A partial coloring is rejected when some listed
//! permutation, optionally composed with the color swap, maps it to a
//! vector that is already lexicographically smaller on a fully decided
//! prefix. The lex-least member of every orbit under the generated group
//! always survives, so pruning with any subset of the group is sound.

use serde::{Deserialize, Serialize};

use crate::coloring::{pair_index, pairs};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// No symmetry pruning at all.
    None,
    /// Only the red/blue exchange (forces the first edge red).
    ColorSwap,
    /// Color swap plus every vertex transposition.
    #[default]
    Transpositions,
    /// Color swap plus the full symmetric group (only for n <= 8).
    Full,
}

pub(crate) struct SymmetryTable {
    /// For each group element, `src[e]` is the edge whose color lands on `e`.
    maps: Vec<Vec<u16>>,
    color_swap: bool,
}

impl SymmetryTable {
    pub fn new(n: usize, level: Symmetry) -> Self {
        let identity: Vec<usize> = (0..n).collect();
        let mut perms: Vec<Vec<usize>> = Vec::new();
        match level {
            Symmetry::None | Symmetry::ColorSwap => {}
            Symmetry::Transpositions => {
                for (i, j) in pairs(n) {
                    let mut p = identity.clone();
                    p.swap(i, j);
                    perms.push(p);
                }
            }
            Symmetry::Full => {
                let mut p = identity.clone();
                while next_permutation(&mut p) {
                    perms.push(p.clone());
                }
            }
        }
        let color_swap = level != Symmetry::None;
        let mut maps: Vec<Vec<u16>> = perms.iter().map(|p| edge_map(n, p)).collect();
        if color_swap {
            maps.insert(0, edge_map(n, &identity));
        }
        SymmetryTable { maps, color_swap }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    /// False when the first `decided` entries of `col` already prove the
    /// coloring is not the lex-least representative of its orbit.
    pub fn is_canonical(&self, col: &[u8], decided: usize) -> bool {
        for (idx, map) in self.maps.iter().enumerate() {
            let identity_slot = self.color_swap && idx == 0;
            if !identity_slot && !prefix_not_smaller(map, col, decided, 0) {
                return false;
            }
            if self.color_swap && !prefix_not_smaller(map, col, decided, 1) {
                return false;
            }
        }
        true
    }
}

/// Compares the image (optionally color-flipped by `flip`) against `col`
/// on the decided prefix; false means the image is strictly smaller.
#[inline]
fn prefix_not_smaller(map: &[u16], col: &[u8], decided: usize, flip: u8) -> bool {
    for e in 0..decided {
        let s = map[e] as usize;
        if s >= decided {
            return true;
        }
        let img = col[s] ^ flip;
        if img != col[e] {
            return img > col[e];
        }
    }
    true
}

fn edge_map(n: usize, p: &[usize]) -> Vec<u16> {
    pairs(n)
        .map(|(i, j)| {
            let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
            pair_index(n, a, b) as u16
        })
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
