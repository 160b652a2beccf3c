//! Brute-force oracles shared by the integration tests. Deliberately naive:
//! plain adjacency matrices, no bitsets, nothing borrowed from the library's
//! counting code.

#![allow(dead_code)]

use ramsey_multiplicity::{Color, SimpleGraph, TwoColoring};

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &SimpleGraph) -> Matrix {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn color_matrix(c: &TwoColoring, color: Color) -> Matrix {
    (0..c.n()).map(|u| (0..c.n()).map(|v| u != v && c.color(u, v) == color).collect()).collect()
}

/// Number of `k`-cycles: sequences starting at their minimum vertex, each
/// cycle seen once per direction.
pub fn cycles(adj: &Matrix, k: usize) -> u128 {
    fn go(adj: &Matrix, start: usize, path: &mut Vec<usize>, k: usize, out: &mut u128) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if adj[last][start] {
                *out += 1;
            }
            return;
        }
        for v in start + 1..adj.len() {
            if adj[last][v] && !path.contains(&v) {
                path.push(v);
                go(adj, start, path, k, out);
                path.pop();
            }
        }
    }
    let mut total = 0;
    for s in 0..adj.len() {
        go(adj, s, &mut vec![s], k, &mut total);
    }
    total / 2
}

/// Monochromatic `k`-cycles in both colors.
pub fn mono_cycles(c: &TwoColoring, k: usize) -> (u128, u128) {
    (cycles(&color_matrix(c, Color::Red), k), cycles(&color_matrix(c, Color::Blue), k))
}

/// Paths `w0 w1 … wl` with distinct vertices, `wi` in `classes[i mod t]`,
/// consecutive vertices adjacent. With `end = Some(x)` the last vertex must be
/// `x` (and may equal `w0` when closing a cycle).
pub fn transversal_paths(adj: &Matrix, classes: &[Vec<usize>], w0: usize, l: usize, end: Option<usize>) -> u128 {
    fn go(adj: &Matrix, classes: &[Vec<usize>], path: &mut Vec<usize>, l: usize, end: Option<usize>, out: &mut u128) {
        let i = path.len();
        let last = *path.last().unwrap();
        if i == l + 1 {
            if end.is_none_or(|e| e == last) {
                *out += 1;
            }
            return;
        }
        for &v in &classes[i % classes.len()] {
            if !adj[last][v] {
                continue;
            }
            let closing = i == l && end == Some(v) && v == path[0];
            if path.contains(&v) && !closing {
                continue;
            }
            path.push(v);
            go(adj, classes, path, l, end, out);
            path.pop();
        }
    }
    let mut total = 0;
    go(adj, classes, &mut vec![w0], l, end, &mut total);
    total
}

/// Maximum matching size in the bipartite graph `left × right` (Kuhn's
/// augmenting paths).
pub fn max_matching(adj: &Matrix, left: &[usize], right: &[usize]) -> usize {
    fn augment(adj: &Matrix, u: usize, right: &[usize], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for (j, &v) in right.iter().enumerate() {
            if adj[u][v] && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|w| augment(adj, w, right, seen, owner)) {
                    owner[j] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right.len()];
    left.iter().filter(|&&u| augment(adj, u, right, &mut vec![false; right.len()], &mut owner)).count()
}

/// Whether `X` (rows) vs `Y` is ε-regular, straight from the definition,
/// with `ε = num/den` kept exact.
pub fn regular_by_definition(adj: &Matrix, x: &[usize], y: &[usize], num: i64, den: i64) -> bool {
    let e = |u: &[usize], v: &[usize]| u.iter().map(|&a| v.iter().filter(|&&b| adj[a][b]).count() as i64).sum::<i64>();
    let subsets = |s: &[usize]| -> Vec<Vec<usize>> {
        (1u32..1 << s.len())
            .map(|m| s.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>())
            .filter(|u| den * u.len() as i64 >= num * s.len() as i64)
            .collect()
    };
    let (exy, nxy) = (e(x, y), (x.len() * y.len()) as i64);
    for u in subsets(x) {
        for v in subsets(y) {
            let nuv = (u.len() * v.len()) as i64;
            // |e(U,V)/nuv - exy/nxy| <= num/den
            let diff = (e(&u, &v) * nxy - exy * nuv).abs();
            if diff * den > num * nuv * nxy {
                return false;
            }
        }
    }
    true
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn falling(n: u128, k: u128) -> u128 {
    (0..k).map(|i| n - i).product()
}
