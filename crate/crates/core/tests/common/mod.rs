//! Shared graph corpus for the integration suites.

use bcx_core::graph::{build_undirected, families, EdgeList, Graph};
use bcx_core::prng::SplitMix64;
use bcx_core::rmat::{generate_rmat, RmatParams};

pub fn er_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.next_f64() < p {
                pairs.push((u, v));
            }
        }
    }
    build_undirected(&EdgeList { n, pairs }).unwrap()
}

pub fn rmat_graph(scale: u32, ef: u32, seed: u64) -> Graph {
    let edges = generate_rmat(&RmatParams::new(scale, ef, seed)).unwrap();
    build_undirected(&edges).unwrap()
}

/// Uniform random attachment tree on n vertices.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut pairs = Vec::new();
    for v in 1..n as u32 {
        let parent = rng.next_below(v as u64) as u32;
        pairs.push((parent, v));
    }
    build_undirected(&EdgeList { n, pairs }).unwrap()
}

/// A graph plus `extra` isolated vertices appended at the top of the id
/// space.
pub fn with_isolated(g: &Graph, extra: usize) -> Graph {
    build_undirected(&EdgeList {
        n: g.vertex_count() + extra,
        pairs: g.to_edge_list().pairs,
    })
    .unwrap()
}

/// The oracle-equivalence corpus: Erdos-Renyi, R-MAT, paths, cycles,
/// stars, random trees and multi-component unions. Labeled for failure
/// reports; deterministic.
pub fn oracle_suite() -> Vec<(String, Graph)> {
    let mut suite = Vec::new();

    for n in [8usize, 16, 24, 32, 48, 64] {
        for p in [0.05f64, 0.1, 0.3] {
            for seed in 0..5u64 {
                let tag = format!("er n={n} p={p} seed={seed}");
                suite.push((tag, er_graph(n, p, seed ^ (n as u64) << 8)));
            }
        }
    }
    for scale in [4u32, 5, 6] {
        for ef in [2u32, 8] {
            for seed in 0..5u64 {
                let tag = format!("rmat scale={scale} ef={ef} seed={seed}");
                suite.push((tag, rmat_graph(scale, ef, seed)));
            }
        }
    }
    for n in 2..=25 {
        suite.push((format!("path n={n}"), families::path(n)));
    }
    for n in 3..=25 {
        suite.push((format!("cycle n={n}"), families::cycle(n)));
    }
    for k in 1..=20 {
        suite.push((format!("star k={k}"), families::star(k)));
    }
    for (i, n) in (5..=50).step_by(3).enumerate() {
        suite.push((format!("tree n={n}"), random_tree(n, 7000 + i as u64)));
    }
    // Multi-component unions, some with isolated vertices.
    let unions: Vec<(String, Graph)> = vec![
        (
            "p3+p3".into(),
            families::union(&families::path(3), &families::path(3)),
        ),
        (
            "p5+c4".into(),
            families::union(&families::path(5), &families::cycle(4)),
        ),
        (
            "star4+p2".into(),
            families::union(&families::star(4), &families::path(2)),
        ),
        (
            "k4+p3".into(),
            families::union(&families::complete(4), &families::path(3)),
        ),
        (
            "c6+c5".into(),
            families::union(&families::cycle(6), &families::cycle(5)),
        ),
        (
            "tree+star".into(),
            families::union(&random_tree(9, 1), &families::star(5)),
        ),
        ("p7+iso3".into(), with_isolated(&families::path(7), 3)),
        ("c5+iso2".into(), with_isolated(&families::cycle(5), 2)),
        ("er+iso".into(), with_isolated(&er_graph(20, 0.1, 42), 4)),
        (
            "p2+p2".into(),
            families::union(&families::path(2), &families::path(2)),
        ),
        (
            "star3+star3".into(),
            families::union(&families::star(3), &families::star(3)),
        ),
        (
            "p4+c4+iso".into(),
            with_isolated(&families::union(&families::path(4), &families::cycle(4)), 2),
        ),
        (
            "tree+tree".into(),
            families::union(&random_tree(12, 5), &random_tree(8, 6)),
        ),
        (
            "k5+c6".into(),
            families::union(&families::complete(5), &families::cycle(6)),
        ),
        (
            "er+er".into(),
            families::union(&er_graph(16, 0.2, 9), &er_graph(12, 0.3, 10)),
        ),
    ];
    suite.extend(unions);
    suite
}
