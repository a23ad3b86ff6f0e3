//! Brute-force betweenness oracle.
//!
//! Independent of the round engine: textbook queue BFS from every vertex,
//! then a direct sum over ordered pairs using the Bellman criterion
//! (v lies on a shortest s-t path iff d(s,t) = d(s,v) + d(v,t)).
//! Intended for graphs up to a few hundred vertices.

use std::collections::VecDeque;

use crate::brandes::BcScores;
use crate::graph::Graph;

/// Distances and shortest-path counts from one source; -1 marks
/// unreachable vertices.
pub fn oracle_bfs(g: &Graph, s: u32) -> (Vec<i64>, Vec<f64>) {
    let n = g.vertex_count();
    let mut dist = vec![-1i64; n];
    let mut paths = vec![0.0f64; n];
    dist[s as usize] = 0;
    paths[s as usize] = 1.0;
    let mut queue = VecDeque::new();
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[v as usize] + 1 {
                paths[w as usize] += paths[v as usize];
            }
        }
    }
    (dist, paths)
}

/// Exact betweenness by pair enumeration, unnormalized ordered-pair
/// convention. O(n^2) memory for the distance tables, O(n^3) time.
pub fn bc_oracle(g: &Graph) -> BcScores {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n);
    let mut paths = Vec::with_capacity(n);
    for s in g.vertices() {
        let (d, p) = oracle_bfs(g, s);
        dist.push(d);
        paths.push(p);
    }

    let mut values = vec![0.0f64; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || dist[s][t] < 0 {
                continue;
            }
            for v in 0..n {
                if v == s || v == t || dist[s][v] < 0 {
                    continue;
                }
                if dist[s][t] == dist[s][v] + dist[v][t] {
                    values[v] += paths[s][v] * paths[v][t] / paths[s][t];
                }
            }
        }
    }
    BcScores { values }
}

/// Dependency of source `s` on every vertex, from the same pair
/// enumeration: delta_s(v) = sum_t [d(s,t) = d(s,v) + d(v,t)] *
/// sigma(s,v) * sigma(v,t) / sigma(s,t). Test support for per-round checks.
pub fn oracle_dependency(g: &Graph, s: u32) -> Vec<f64> {
    let n = g.vertex_count();
    let (ds, ps) = oracle_bfs(g, s);
    let mut per_vertex: Vec<(Vec<i64>, Vec<f64>)> = Vec::with_capacity(n);
    for v in g.vertices() {
        per_vertex.push(oracle_bfs(g, v));
    }

    let mut delta = vec![0.0f64; n];
    for v in 0..n {
        if v == s as usize || ds[v] < 0 {
            continue;
        }
        let (dv, pv) = &per_vertex[v];
        for t in 0..n {
            if t == s as usize || t == v || ds[t] < 0 {
                continue;
            }
            if ds[t] == ds[v] + dv[t] {
                delta[v] += ps[v] * pv[t] / ps[t];
            }
        }
    }
    delta
}
