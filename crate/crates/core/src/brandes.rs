//! Single-worker Brandes rounds.
//!
//! The forward sweep is a level-synchronous BFS whose per-level work is
//! enumerated over *active edges*: the out-degrees of the current frontier
//! are prefix-summed and each work item is mapped back to its (frontier
//! slot, local edge) pair by binary search. The prefix arrays are kept for
//! the whole round, so the backward dependency sweep revisits the same
//! frontiers in reverse order without recomputing a single scan.
//!
//! Dependencies use the successor-checking formulation: a vertex pulls
//! (1 + delta(v)) / sigma(v) from each neighbor one level deeper, then
//! multiplies the accumulated sum by its own sigma. The sweep starts one
//! level below the deepest frontier, since leaves have no successors.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Unnormalized per-vertex betweenness, ordered-pair convention (on an
/// undirected graph each unordered pair contributes twice).
#[derive(Debug, Clone, PartialEq)]
pub struct BcScores {
    pub values: Vec<f64>,
}

impl BcScores {
    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n],
        }
    }

    /// Largest absolute difference against another score vector.
    pub fn max_abs_diff(&self, other: &BcScores) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest |a - b| / max(1, |b|) against a reference.
    pub fn max_rel_diff(&self, reference: &BcScores) -> f64 {
        self.values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Exclusive prefix sum of frontier out-degrees plus the total, i.e. the
/// work-item offsets for one level. `[2,1,3]` maps to `([0,2,3], 6)`.
pub fn enumerate_active_edges(frontier_degrees: &[u64]) -> (Vec<u64>, u64) {
    let mut prefix = Vec::with_capacity(frontier_degrees.len());
    let mut total = 0u64;
    for &deg in frontier_degrees {
        prefix.push(total);
        total += deg;
    }
    (prefix, total)
}

/// Map work item `i` to (frontier slot, local edge index): the largest slot
/// `k` with `prefix[k] <= i`, and the remainder. `prefix` is the exclusive
/// prefix from [`enumerate_active_edges`]; a trailing total entry is allowed
/// and ignored. Panics if `i` is not a valid work item.
pub fn map_work_item(prefix: &[u64], i: u64) -> (usize, u64) {
    let slot = prefix.partition_point(|&p| p <= i);
    assert!(slot > 0, "work item {i} below first offset");
    let slot = slot - 1;
    (slot, i - prefix[slot])
}

/// Scan-work instrumentation for one round.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Prefix-sum computations performed in the forward sweep.
    pub forward_prefix_scans: u64,
    /// Prefix-sum computations performed in the backward sweep; zero when
    /// the stored offsets are reused.
    pub backward_prefix_scans: u64,
    /// Elements scanned by backward prefix computations.
    pub backward_scan_elements: u64,
}

/// Complete traversal state of one source, kept for the backward sweep.
#[derive(Debug, Clone)]
pub struct RoundState {
    pub source: u32,
    /// Shortest-path counts; exact integers while below 2^53.
    pub sigma: Vec<f64>,
    /// BFS level per vertex, -1 when unreachable.
    pub depth: Vec<i32>,
    /// Brandes dependencies after the backward sweep.
    pub delta: Vec<f64>,
    /// Accumulated frontier: vertices in discovery order.
    pub queue: Vec<u32>,
    /// Level offsets into `queue`; level k is `queue[q_off[k]..q_off[k+1]]`.
    pub q_off: Vec<usize>,
    /// Per-level active-edge offsets with the level total appended.
    pub level_prefix: Vec<Vec<u64>>,
    pub visited: Vec<bool>,
    pub scan_stats: ScanStats,
}

impl RoundState {
    /// Number of BFS levels that hold at least one vertex.
    pub fn levels(&self) -> usize {
        self.q_off.len() - 1
    }

    pub fn frontier(&self, level: usize) -> &[u32] {
        &self.queue[self.q_off[level]..self.q_off[level + 1]]
    }
}

/// Forward sweep: shortest-path counting from `s`, building the accumulated
/// frontier and the per-level active-edge offsets.
pub fn forward_sweep(g: &Graph, s: u32) -> RoundState {
    let n = g.vertex_count();
    assert!((s as usize) < n, "source {s} out of range");
    let mut state = RoundState {
        source: s,
        sigma: vec![0.0; n],
        depth: vec![-1; n],
        delta: vec![0.0; n],
        queue: Vec::new(),
        q_off: vec![0],
        level_prefix: Vec::new(),
        visited: vec![false; n],
        scan_stats: ScanStats::default(),
    };
    state.sigma[s as usize] = 1.0;
    state.depth[s as usize] = 0;
    state.visited[s as usize] = true;
    state.queue.push(s);
    state.q_off.push(1);

    let mut level = 0usize;
    loop {
        let lo = state.q_off[level];
        let hi = state.q_off[level + 1];
        let degrees: Vec<u64> = state.queue[lo..hi].iter().map(|&v| g.degree(v)).collect();
        let (mut prefix, total) = enumerate_active_edges(&degrees);
        state.scan_stats.forward_prefix_scans += 1;

        for i in 0..total {
            let (slot, local_edge) = map_work_item(&prefix, i);
            let v = state.queue[lo + slot];
            let w = g.neighbors(v)[local_edge as usize];
            if state.depth[w as usize] < 0 {
                state.depth[w as usize] = level as i32 + 1;
                state.visited[w as usize] = true;
                state.queue.push(w);
            }
            if state.depth[w as usize] == level as i32 + 1 {
                state.sigma[w as usize] += state.sigma[v as usize];
            }
        }

        prefix.push(total);
        state.level_prefix.push(prefix);

        if state.queue.len() == hi {
            break;
        }
        state.q_off.push(state.queue.len());
        level += 1;
    }
    state
}

/// Backward dependency sweep over the stored frontiers. With `reuse` the
/// per-level offsets stored by the forward sweep are used as-is; otherwise
/// they are recomputed (for the reuse-equivalence check). `omega`, when
/// given, adds the removed-leaf weight of each successor to its (1 + delta)
/// term, the modified accumulation of the 1-degree reduction.
pub fn backward_sweep(g: &Graph, state: &mut RoundState, omega: Option<&[u64]>, reuse: bool) {
    let levels = state.levels();
    if levels < 2 {
        return;
    }
    // Leaves have no successors: start one level closer to the root.
    for level in (1..levels - 1).rev() {
        let lo = state.q_off[level];
        let hi = state.q_off[level + 1];

        let recomputed: Option<Vec<u64>> = if reuse {
            None
        } else {
            let degrees: Vec<u64> = state.queue[lo..hi].iter().map(|&v| g.degree(v)).collect();
            let (prefix, _total) = enumerate_active_edges(&degrees);
            state.scan_stats.backward_prefix_scans += 1;
            state.scan_stats.backward_scan_elements += degrees.len() as u64;
            Some(prefix)
        };
        let prefix: &[u64] = match &recomputed {
            Some(p) => p,
            None => &state.level_prefix[level],
        };
        let total = *state.level_prefix[level].last().unwrap();

        for i in 0..total {
            let (slot, local_edge) = map_work_item(prefix, i);
            let w = state.queue[lo + slot];
            let v = g.neighbors(w)[local_edge as usize];
            if state.depth[v as usize] == level as i32 + 1 {
                let leaf_weight = omega.map_or(0.0, |om| om[v as usize] as f64);
                state.delta[w as usize] +=
                    (1.0 + state.delta[v as usize] + leaf_weight) / state.sigma[v as usize];
            }
        }
        for &w in &state.queue[lo..hi] {
            state.delta[w as usize] *= state.sigma[w as usize];
        }
    }
}

/// One full Brandes round: path counting plus dependency accumulation with
/// prefix-offset reuse.
pub fn brandes_round(g: &Graph, s: u32) -> RoundState {
    let mut state = forward_sweep(g, s);
    backward_sweep(g, &mut state, None, true);
    debug_assert!(dependency_identity_holds(&state));
    state
}

/// Per-round sanity: the dependencies of one source sum to
/// sum over reachable targets of (distance - 1).
fn dependency_identity_holds(state: &RoundState) -> bool {
    let s = state.source as usize;
    let lhs: f64 = state
        .delta
        .iter()
        .enumerate()
        .filter(|(v, _)| *v != s)
        .map(|(_, d)| d)
        .sum();
    let rhs: f64 = state
        .depth
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| (d - 1) as f64)
        .sum();
    (lhs - rhs).abs() <= 1e-9 * rhs.max(1.0)
}

/// Variant that recomputes per-level offsets in the backward sweep. Must
/// produce bitwise-identical dependencies; exists to prove it.
pub fn brandes_round_recompute_prefix(g: &Graph, s: u32) -> RoundState {
    let mut state = forward_sweep(g, s);
    backward_sweep(g, &mut state, None, false);
    debug_assert!(dependency_identity_holds(&state));
    state
}

/// Exact betweenness by summing dependencies over sources. Isolated
/// vertices are skipped as sources; a source never receives its own delta.
/// With a subset of sources the result is the partial sum for them.
pub fn bc_exact(g: &Graph, sources: Option<&[u32]>) -> BcScores {
    let n = g.vertex_count();
    let mut scores = BcScores::zeros(n);
    let all: Vec<u32>;
    let sources = match sources {
        Some(list) => list,
        None => {
            all = g.vertices().collect();
            &all
        }
    };
    for &s in sources {
        if g.is_isolated(s) {
            continue;
        }
        let state = brandes_round(g, s);
        accumulate_scores(&mut scores, &state.delta, s);
    }
    scores
}

pub(crate) fn accumulate_scores(scores: &mut BcScores, delta: &[f64], source: u32) {
    for (w, d) in delta.iter().enumerate() {
        if w as u32 != source {
            scores.values[w] += d;
        }
    }
}

/// Traversed edges per second: m * n_eff / t.
pub fn teps(m: u64, n_eff: u64, seconds: f64) -> Result<f64> {
    if seconds <= 0.0 {
        return Err(Error::NonPositiveTime(seconds));
    }
    Ok(m as f64 * n_eff as f64 / seconds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_undirected, families, EdgeList};
    use crate::oracle::{bc_oracle, oracle_bfs, oracle_dependency};
    use crate::rmat::{generate_rmat, RmatParams};

    #[test]
    fn active_edge_prefix_examples() {
        assert_eq!(enumerate_active_edges(&[2, 1, 3]), (vec![0, 2, 3], 6));
        assert_eq!(enumerate_active_edges(&[]), (vec![], 0));
        assert_eq!(enumerate_active_edges(&[0, 0, 5]), (vec![0, 0, 0], 5));
    }

    #[test]
    fn work_item_mapping_examples() {
        assert_eq!(map_work_item(&[0, 2, 3], 4), (2, 1));
        assert_eq!(map_work_item(&[0, 2, 3], 0), (0, 0));
        assert_eq!(map_work_item(&[0, 2, 3], 2), (1, 0));
        // Zero-degree slots are skipped by the largest-k rule.
        assert_eq!(map_work_item(&[0, 0, 0], 2), (2, 2));
        // A trailing total entry does not change the mapping.
        assert_eq!(map_work_item(&[0, 2, 3, 6], 4), (2, 1));
    }

    #[test]
    #[should_panic]
    fn work_item_out_of_range_panics() {
        // No slot below offset zero exists for an empty prefix.
        map_work_item(&[], 0);
    }

    #[test]
    fn round_on_p3() {
        let g = families::path(3);
        let st = brandes_round(&g, 0);
        assert_eq!(st.sigma, vec![1.0, 1.0, 1.0]);
        assert_eq!(st.depth, vec![0, 1, 2]);
        assert_eq!(st.delta[1], 1.0);
        assert_eq!(st.delta[2], 0.0);
        let expected = oracle_dependency(&g, 0);
        assert_eq!(st.delta[1..], expected[1..]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn round_on_c4() {
        let g = families::cycle(4);
        let st = brandes_round(&g, 0);
        assert_eq!(st.sigma, vec![1.0, 1.0, 2.0, 1.0]);
        assert_eq!(st.depth, vec![0, 1, 2, 1]);
        assert_eq!(st.delta[1], 0.5);
        assert_eq!(st.delta[2], 0.0);
        assert_eq!(st.delta[3], 0.5);
        let expected = oracle_dependency(&g, 0);
        for v in 1..4 {
            assert!((st.delta[v] - expected[v]).abs() < 1e-12);
        }
    }

    #[test]
    fn star_center_round_has_zero_leaf_deltas() {
        let g = families::star(5);
        let st = brandes_round(&g, 0);
        for leaf in 1..=5 {
            assert_eq!(st.delta[leaf], 0.0);
        }
    }

    #[test]
    fn round_state_invariants_hold() {
        let g = families::cycle(6);
        let st = brandes_round(&g, 2);
        assert_eq!(st.depth[2], 0);
        assert_eq!(st.sigma[2], 1.0);
        for v in g.vertices() {
            assert_eq!(st.depth[v as usize] >= 0, st.visited[v as usize]);
        }
        assert!(st.q_off.windows(2).all(|w| w[0] <= w[1]));
        for level in 0..st.levels() {
            for &v in st.frontier(level) {
                assert_eq!(st.depth[v as usize], level as i32);
            }
            let prefix = &st.level_prefix[level];
            assert_eq!(prefix.len(), st.frontier(level).len() + 1);
            assert!(prefix.windows(2).all(|w| w[0] <= w[1]));
            let total: u64 = st.frontier(level).iter().map(|&v| g.degree(v)).sum();
            assert_eq!(*prefix.last().unwrap(), total);
        }
    }

    #[test]
    fn bc_exact_matches_closed_forms() {
        assert_eq!(
            bc_exact(&families::path(3), None).values,
            vec![0.0, 2.0, 0.0]
        );
        assert_eq!(
            bc_exact(&families::cycle(4), None).values,
            vec![1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(bc_exact(&families::complete(4), None).values, vec![0.0; 4]);
        assert_eq!(
            bc_exact(&families::star(3), None).values,
            vec![6.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn oracle_equivalence_on_small_random_graphs() {
        let mut rng = crate::prng::SplitMix64::new(0xBC);
        for n in [8usize, 16, 32] {
            for p in [0.05, 0.1, 0.3] {
                let mut pairs = Vec::new();
                for u in 0..n as u32 {
                    for v in (u + 1)..n as u32 {
                        if rng.next_f64() < p {
                            pairs.push((u, v));
                        }
                    }
                }
                let g = build_undirected(&EdgeList { n, pairs }).unwrap();
                let fast = bc_exact(&g, None);
                let slow = bc_oracle(&g);
                assert!(fast.max_rel_diff(&slow) <= 1e-6, "mismatch on n={n} p={p}");
            }
        }
    }

    #[test]
    fn sigma_values_are_integers() {
        let edges = generate_rmat(&RmatParams::new(6, 4, 5)).unwrap();
        let g = build_undirected(&edges).unwrap();
        for s in g.vertices() {
            let st = forward_sweep(&g, s);
            for v in g.vertices() {
                let sv = st.sigma[v as usize];
                if st.depth[v as usize] >= 0 {
                    assert!(sv >= 1.0 && sv.fract() == 0.0, "sigma {sv} not integral");
                } else {
                    assert_eq!(sv, 0.0);
                }
            }
        }
    }

    #[test]
    fn dependency_identity_per_round() {
        // Sum of dependencies equals sum over reachable targets of (d - 1).
        for g in [
            families::path(7),
            families::cycle(9),
            families::star(6),
            build_undirected(&generate_rmat(&RmatParams::new(5, 4, 11)).unwrap()).unwrap(),
        ] {
            for s in g.vertices() {
                if g.is_isolated(s) {
                    continue;
                }
                let st = brandes_round(&g, s);
                let lhs: f64 = (0..g.vertex_count())
                    .filter(|&v| v as u32 != s)
                    .map(|v| st.delta[v])
                    .sum();
                let rhs: f64 = (0..g.vertex_count())
                    .filter(|&t| t as u32 != s && st.depth[t] > 0)
                    .map(|t| (st.depth[t] - 1) as f64)
                    .sum();
                assert!((lhs - rhs).abs() < 1e-9, "identity failed for s={s}");
            }
        }
    }

    #[test]
    fn backward_reuses_prefixes_and_matches_recompute_bitwise() {
        let edges = generate_rmat(&RmatParams::new(6, 8, 3)).unwrap();
        let g = build_undirected(&edges).unwrap();
        for s in g.vertices().step_by(7) {
            let reused = brandes_round(&g, s);
            let recomputed = brandes_round_recompute_prefix(&g, s);
            assert_eq!(reused.scan_stats.backward_prefix_scans, 0);
            assert!(recomputed.scan_stats.backward_prefix_scans > 0 || recomputed.levels() < 3);
            // Bitwise equality of dependencies.
            for v in g.vertices() {
                assert_eq!(
                    reused.delta[v as usize].to_bits(),
                    recomputed.delta[v as usize].to_bits()
                );
            }
        }
    }

    #[test]
    fn source_partition_additivity() {
        let edges = generate_rmat(&RmatParams::new(5, 8, 21)).unwrap();
        let g = build_undirected(&edges).unwrap();
        let all: Vec<u32> = g.vertices().collect();
        let (left, right) = all.split_at(all.len() / 3);
        let total = bc_exact(&g, None);
        let partial_l = bc_exact(&g, Some(left));
        let partial_r = bc_exact(&g, Some(right));
        for v in 0..g.vertex_count() {
            let summed = partial_l.values[v] + partial_r.values[v];
            // Remaining sources:
            let rest = bc_exact(&g, Some(&all[left.len() + right.len()..])).values[v];
            assert!((summed + rest - total.values[v]).abs() <= 1e-9);
        }
    }

    #[test]
    fn isolated_vertices_are_skipped_as_sources() {
        let g = build_undirected(&EdgeList {
            n: 4,
            pairs: vec![(0, 1), (1, 2)],
        })
        .unwrap();
        let with_all = bc_exact(&g, None);
        let without_isolated = bc_exact(&g, Some(&[0, 1, 2]));
        assert_eq!(with_all.values, without_isolated.values);
    }

    #[test]
    fn forward_sweep_agrees_with_oracle_bfs() {
        let edges = generate_rmat(&RmatParams::new(6, 2, 17)).unwrap();
        let g = build_undirected(&edges).unwrap();
        for s in g.vertices().step_by(5) {
            let st = forward_sweep(&g, s);
            let (dist, paths) = oracle_bfs(&g, s);
            for v in 0..g.vertex_count() {
                assert_eq!(st.depth[v] as i64, dist[v]);
                assert_eq!(st.sigma[v], paths[v]);
            }
        }
    }

    #[test]
    fn teps_formula() {
        assert_eq!(teps(10, 5, 2.0).unwrap(), 25.0);
        assert_eq!(teps(0, 5, 2.0).unwrap(), 0.0);
        assert_eq!(teps(1 << 20, 1, 1.0).unwrap(), 1048576.0);
        assert!(teps(10, 5, 0.0).is_err());
        assert!(teps(10, 5, -1.0).is_err());
    }
}
