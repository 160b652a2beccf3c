//! Library results against the naive oracles in `common`.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_multiplicity::count::is_cycle_in;
use ramsey_multiplicity::extremal::{case2_lower_bound, chi, extremal_parameter, perturb, ExtremalMode};
use ramsey_multiplicity::regular::{
    check_regularity, count_transversal_paths, count_transversal_paths_between, Family, PairSystem, RegularityMode,
};
use ramsey_multiplicity::search::{multiplicity, Budget, Symmetry};
use ramsey_multiplicity::stability::{ns_check, DichotomyOutcome, Structure};
use ramsey_multiplicity::{Error, PatternGraph, SimpleGraph, TwoColoring, VertexSet};

use common::*;

/// Undirected p-cycles that follow the classes V_0 → V_1 → … cyclically in
/// some direction.
fn transversal_cycles(adj: &Matrix, class_of: &[usize], t: usize, p: usize) -> u128 {
    let n = adj.len();
    let mut total = 0;
    fn go(adj: &Matrix, path: &mut Vec<usize>, p: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == p {
            if adj[last][path[0]] && path[1] < last {
                out.push(path.clone());
            }
            return;
        }
        for v in path[0] + 1..adj.len() {
            if adj[last][v] && !path.contains(&v) {
                path.push(v);
                go(adj, path, p, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        let mut found = Vec::new();
        go(adj, &mut vec![s], p, &mut found);
        for cyc in found {
            let step = |d: usize| (0..p).all(|i| class_of[cyc[(i + 1) % p]] == (class_of[cyc[i]] + d) % t);
            if step(1) || step(t - 1) {
                total += 1;
            }
        }
    }
    total
}

#[test]
fn closed_transversal_paths_count_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..24 {
        let t = [2, 3][round % 2];
        let size = if t == 2 { rng.random_range(2..=9) } else { rng.random_range(2..=6) };
        let fam = [Family::Complete, Family::MinusMatching, Family::Quasirandom { density: 0.6 }][round % 3];
        let sys = PairSystem::generate(fam, &vec![size; t], &mut rng).unwrap();
        let mut class_of = vec![0; sys.graph().n()];
        for (i, c) in sys.classes().iter().enumerate() {
            for v in c.iter() {
                class_of[v] = i;
            }
        }
        let adj = matrix(sys.graph());
        for p in [t * 2, t * 3].into_iter().filter(|&p| (3..=6).contains(&p)) {
            let mut closed = 0u128;
            for r in 0..t {
                let rot = sys.rotated(r);
                for w in rot.class(0).iter() {
                    closed += count_transversal_paths_between(&rot, w, w, p).unwrap();
                }
            }
            let cycles = transversal_cycles(&adj, &class_of, t, p);
            let factor = if t == 2 { 2 * p } else { p } as u128;
            assert_eq!(closed, factor * cycles, "round {round}: t={t} size={size} p={p} {fam}");
        }
    }
}

#[test]
fn transversal_paths_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..40 {
        let t = rng.random_range(2..=3);
        let size = rng.random_range(2..=6);
        let sys = PairSystem::generate(Family::Quasirandom { density: 0.55 }, &vec![size; t], &mut rng).unwrap();
        let classes: Vec<Vec<usize>> = sys.classes().iter().map(|c| c.to_vec()).collect();
        let adj = matrix(sys.graph());
        let w0 = classes[0][rng.random_range(0..size)];
        let l = rng.random_range(1..=6);
        assert_eq!(
            count_transversal_paths(&sys, w0, l).unwrap(),
            transversal_paths(&adj, &classes, w0, l, None),
            "round {round}"
        );
        let l = t * rng.random_range(2..=3);
        let end = classes[0][rng.random_range(0..size)];
        assert_eq!(
            count_transversal_paths_between(&sys, w0, end, l).unwrap(),
            transversal_paths(&adj, &classes, w0, l, Some(end)),
            "round {round} between"
        );
    }
}

#[test]
fn search_matches_exhaustive_minimum() {
    let n = 6;
    let colorings: Vec<TwoColoring> = (0u64..1 << 15)
        .map(|m| {
            let mut c = TwoColoring::all_blue(n).unwrap();
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if m >> bit & 1 == 1 {
                        c.set(i, j, ramsey_multiplicity::Color::Red);
                    }
                    bit += 1;
                }
            }
            c
        })
        .collect();
    for k in 3..=5 {
        let brute = colorings.iter().map(|c| {
            let (r, b) = mono_cycles(c, k);
            r + b
        });
        let want = brute.min().unwrap();
        for sym in [Symmetry::None, Symmetry::ColorSwap, Symmetry::Transpositions, Symmetry::Full] {
            let got = multiplicity(&PatternGraph::Cycle(k), n, &Budget::default().with_symmetry(sym)).unwrap();
            assert!(got.exact);
            assert_eq!(got.value, want, "C{k} with {sym:?}");
            let (r, b) = mono_cycles(&got.witness, k);
            assert_eq!(r + b, want);
        }
    }
}

#[test]
fn regularity_matches_definition_on_uneven_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let (a, b) = (rng.random_range(2..=5), rng.random_range(2..=6));
        let mut g = SimpleGraph::empty(a + b).unwrap();
        let p = rng.random_range(0.1..0.9);
        for u in 0..a {
            for v in a..a + b {
                if rng.random_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let (x, y) = (VertexSet::range(0, a), VertexSet::range(a, a + b));
        let (num, den) = [(1, 5), (1, 3), (1, 2), (3, 10)][rng.random_range(0..4)];
        let lib = check_regularity(x, y, &g, num as f64 / den as f64, RegularityMode::Exact).unwrap().is_regular();
        assert_eq!(
            lib,
            regular_by_definition(&matrix(&g), &x.to_vec(), &y.to_vec(), num, den),
            "{a}x{b} at {num}/{den}"
        );
    }
}

#[test]
fn case2_bounds_are_sound_under_heavier_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let base = chi(5, 4).unwrap();
    let mut certified = 0;
    for _ in 0..150 {
        let c = perturb(&base, rng.random_range(0.0..0.2), &mut rng);
        let ext = extremal_parameter(&c, ExtremalMode::Exact).unwrap();
        match case2_lower_bound(&c, 5, ext.a, ext.b, ext.lambda_star.max(1e-3) * (1.0 + 1e-9)) {
            Ok(cert) => {
                let (r, b) = mono_cycles(&c, 5);
                assert!(cert.bound <= r + b, "bound {} above count {}", cert.bound, r + b);
                certified += 1;
            }
            // Heavy noise can leave nothing for the decision tree to certify.
            Err(Error::Precondition(_) | Error::Hypothesis(_) | Error::DecisionTreeExhausted(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(certified > 50);
}

#[test]
fn dichotomy_outcomes_check_out() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut partitions = 0;
    for round in 0..60 {
        let n = rng.random_range(8..=14);
        let half = n / 2;
        let mut g = match round % 3 {
            0 => SimpleGraph::complete_bipartite(half, n - half).unwrap(),
            1 => {
                let mut g = SimpleGraph::empty(n).unwrap();
                g.make_clique(VertexSet::range(0, half));
                g.make_clique(VertexSet::range(half, n));
                g
            }
            _ => SimpleGraph::complete(n).unwrap(),
        };
        // A little noise.
        for _ in 0..rng.random_range(0..3) {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            if u != v {
                if g.has_edge(u, v) {
                    g.remove_edge(u, v);
                } else {
                    g.add_edge(u, v);
                }
            }
        }
        let Ok(rep) = ns_check(&g, 0.05, 0.002) else { continue };
        let adj = matrix(&g);
        match rep.outcome {
            DichotomyOutcome::CyclesFound { max_len, cycles } => {
                assert_eq!(cycles.len(), max_len - 2);
                for (len, c) in cycles {
                    assert_eq!(c.len(), len);
                    assert!(is_cycle_in(&g, &c));
                    assert!((0..len).all(|i| adj[c[i]][c[(i + 1) % len]]));
                }
            }
            DichotomyOutcome::PartitionFound { u0, u1, u2, structure } => {
                partitions += 1;
                assert_eq!(u0.len() + u1.len() + u2.len(), n);
                let bad = match structure {
                    Structure::Bipartite => [u1, u2].iter().map(|s| cross(&adj, *s, *s) / 2).sum::<usize>(),
                    Structure::BipartiteComplement => cross(&adj, u1, u2),
                };
                assert_eq!(bad, 0);
            }
            DichotomyOutcome::Inconclusive { .. } => {}
        }
    }
    assert!(partitions > 0);
}

fn cross(adj: &Matrix, a: VertexSet, b: VertexSet) -> usize {
    a.iter().map(|u| b.iter().filter(|&v| adj[u][v]).count()).sum()
}
