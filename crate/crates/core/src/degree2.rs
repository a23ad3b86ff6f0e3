//! 2-degree heuristic: Dynamic Merging of Frontiers.
//!
//! A vertex c with exactly two neighbors a and b never needs its own round.
//! Its BFS tree is derivable from theirs: every other vertex sits at level
//! min(lvl_a, lvl_b) + 1, with path counts taken from the closer neighbor
//! (or their sum on ties). Its dependencies are accumulated on the fly
//! while the backward sweeps of a and b run level-synchronized from
//! max(depth_a, depth_b) down to the roots.
//!
//! Each vertex w != c is "owned" by the tree that discovered it first
//! (ties go to a): only the owning pass may add c-contributions for w, and
//! an edge (w, v) counts for c exactly when v also sits at its merged
//! minimum in that tree. This fires every c-tree edge exactly once, which
//! the instrumented variant can demonstrate.
//!
//! The module also hosts the H0-H3 mode runners, since H2/H3 tie the
//! scheduling, the 1-degree reduction and the merged sweeps together.

use std::time::{Duration, Instant};

use crate::brandes::{accumulate_scores, backward_sweep, forward_sweep, BcScores, RoundState};
use crate::degree1::{
    accumulate_ns, apply_round, apply_stranded_endpoints, endpoint_contribution, preprocess_1degree,
};
use crate::graph::Graph;

/// The two completed forward sweeps a 2-degree vertex is derived from.
#[derive(Debug)]
pub struct NeighborTrees {
    pub center: u32,
    pub a: u32,
    pub b: u32,
    pub round_a: RoundState,
    pub round_b: RoundState,
}

impl NeighborTrees {
    /// Run both neighbor sweeps for a 2-degree vertex. Panics when
    /// deg(center) != 2: that is a caller contract violation.
    pub fn compute(g: &Graph, center: u32) -> Self {
        let adj = g.neighbors(center);
        assert_eq!(adj.len(), 2, "vertex {center} does not have degree 2");
        let (a, b) = (adj[0], adj[1]);
        Self::from_rounds(center, forward_sweep(g, a), forward_sweep(g, b))
    }

    /// Wrap already-computed sweeps rooted at the two neighbors.
    pub fn from_rounds(center: u32, round_a: RoundState, round_b: RoundState) -> Self {
        let (a, b) = (round_a.source, round_b.source);
        assert_ne!(a, b, "neighbors of a 2-degree vertex are distinct");
        debug_assert_eq!(round_a.depth[a as usize], 0);
        debug_assert_eq!(round_b.depth[b as usize], 0);
        debug_assert_eq!(round_a.depth[center as usize], 1);
        debug_assert_eq!(round_b.depth[center as usize], 1);
        Self {
            center,
            a,
            b,
            round_a,
            round_b,
        }
    }
}

fn level_or_max(depth: i32) -> i64 {
    if depth < 0 {
        i64::MAX
    } else {
        depth as i64
    }
}

/// Shortest-path counts and levels of the 2-degree vertex, derived from its
/// neighbors' sweeps without touching the graph. Unreachable vertices keep
/// level -1 and sigma 0; the output matches a direct BFS from the center.
pub fn derive_2degree_tree(t: &NeighborTrees) -> (Vec<f64>, Vec<i32>) {
    let n = t.round_a.sigma.len();
    let mut sigma = vec![0.0f64; n];
    let mut level = vec![-1i32; n];
    sigma[t.center as usize] = 1.0;
    level[t.center as usize] = 0;

    for v in 0..n {
        if v == t.center as usize {
            continue;
        }
        let la = level_or_max(t.round_a.depth[v]);
        let lb = level_or_max(t.round_b.depth[v]);
        if la == i64::MAX && lb == i64::MAX {
            continue;
        }
        level[v] = (la.min(lb) + 1) as i32;
        sigma[v] = match la.cmp(&lb) {
            std::cmp::Ordering::Less => t.round_a.sigma[v],
            std::cmp::Ordering::Greater => t.round_b.sigma[v],
            std::cmp::Ordering::Equal => t.round_a.sigma[v] + t.round_b.sigma[v],
        };
    }
    (sigma, level)
}

/// Dependencies of a, b and the 2-degree center from one merged backward
/// sweep. `omega`, when given, applies the 1-degree modified accumulation
/// to all three. `trace` records every (parent, child) edge that
/// contributed to delta_c.
pub fn dmf_accumulate_with(
    g: &Graph,
    t: &NeighborTrees,
    omega: Option<&[u64]>,
    mut trace: Option<&mut Vec<(u32, u32)>>,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = g.vertex_count();
    let c = t.center;
    let mut delta_a = vec![0.0f64; n];
    let mut delta_b = vec![0.0f64; n];
    let mut delta_c = vec![0.0f64; n];

    let leaf_weight = |v: usize| omega.map_or(0.0, |om| om[v] as f64);
    let lvl_a = |v: u32| level_or_max(t.round_a.depth[v as usize]);
    let lvl_b = |v: u32| level_or_max(t.round_b.depth[v as usize]);
    // Ties are owned by a's pass; b takes strictly-earlier discoveries only.
    let owned_by_a = |w: u32| lvl_a(w) <= lvl_b(w);
    let sigma_c = |v: u32| match lvl_a(v).cmp(&lvl_b(v)) {
        std::cmp::Ordering::Less => t.round_a.sigma[v as usize],
        std::cmp::Ordering::Greater => t.round_b.sigma[v as usize],
        std::cmp::Ordering::Equal => t.round_a.sigma[v as usize] + t.round_b.sigma[v as usize],
    };

    let deepest_a = t.round_a.levels() as i64 - 1;
    let deepest_b = t.round_b.levels() as i64 - 1;
    let mut depth = deepest_a.max(deepest_b);
    while depth > 0 {
        if depth <= deepest_a {
            let level = depth as usize;
            for &w in t.round_a.frontier(level) {
                let owner = w != c && owned_by_a(w);
                for &v in g.neighbors(w) {
                    if t.round_a.depth[v as usize] != depth as i32 + 1 {
                        continue;
                    }
                    delta_a[w as usize] += (1.0 + delta_a[v as usize] + leaf_weight(v as usize))
                        / t.round_a.sigma[v as usize];
                    if owner && v != c && lvl_a(v) <= lvl_b(v) {
                        delta_c[w as usize] +=
                            (1.0 + delta_c[v as usize] + leaf_weight(v as usize)) / sigma_c(v);
                        if let Some(tr) = trace.as_deref_mut() {
                            tr.push((w, v));
                        }
                    }
                }
            }
            for &w in t.round_a.frontier(level) {
                delta_a[w as usize] *= t.round_a.sigma[w as usize];
                if w != c && owned_by_a(w) {
                    delta_c[w as usize] *= sigma_c(w);
                }
            }
        }
        if depth <= deepest_b {
            let level = depth as usize;
            for &w in t.round_b.frontier(level) {
                let owner = w != c && !owned_by_a(w);
                for &v in g.neighbors(w) {
                    if t.round_b.depth[v as usize] != depth as i32 + 1 {
                        continue;
                    }
                    delta_b[w as usize] += (1.0 + delta_b[v as usize] + leaf_weight(v as usize))
                        / t.round_b.sigma[v as usize];
                    if owner && v != c && lvl_b(v) <= lvl_a(v) {
                        delta_c[w as usize] +=
                            (1.0 + delta_c[v as usize] + leaf_weight(v as usize)) / sigma_c(v);
                        if let Some(tr) = trace.as_deref_mut() {
                            tr.push((w, v));
                        }
                    }
                }
            }
            for &w in t.round_b.frontier(level) {
                delta_b[w as usize] *= t.round_b.sigma[w as usize];
                if w != c && !owned_by_a(w) {
                    delta_c[w as usize] *= sigma_c(w);
                }
            }
        }
        depth -= 1;
    }

    // The roots sit at level zero of their own sweeps, below the merged
    // loop: collect their c-contributions (c-level one) directly.
    for &v in g.neighbors(t.a) {
        if t.round_a.depth[v as usize] == 1 && v != c && lvl_a(v) <= lvl_b(v) {
            delta_c[t.a as usize] +=
                (1.0 + delta_c[v as usize] + leaf_weight(v as usize)) / sigma_c(v);
            if let Some(tr) = trace.as_deref_mut() {
                tr.push((t.a, v));
            }
        }
    }
    delta_c[t.a as usize] *= sigma_c(t.a);
    for &v in g.neighbors(t.b) {
        if t.round_b.depth[v as usize] == 1 && v != c && lvl_b(v) <= lvl_a(v) {
            delta_c[t.b as usize] +=
                (1.0 + delta_c[v as usize] + leaf_weight(v as usize)) / sigma_c(v);
            if let Some(tr) = trace.as_deref_mut() {
                tr.push((t.b, v));
            }
        }
    }
    delta_c[t.b as usize] *= sigma_c(t.b);

    (delta_a, delta_b, delta_c)
}

/// Plain merged sweep: Brandes dependencies of both neighbors plus the
/// derived dependencies of the center.
pub fn dmf_accumulate(g: &Graph, t: &NeighborTrees) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    dmf_accumulate_with(g, t, None, None)
}

/// Which vertices get their round replaced by a merged sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulePlan {
    /// (center, a, b) with deg(center) = 2 and disjoint neighbor sets.
    pub triples: Vec<(u32, u32, u32)>,
    /// Non-isolated vertices that still run a full round (this includes
    /// every triple's a and b, whose rounds run inside the merged sweep).
    pub explicit_sources: Vec<u32>,
}

/// Greedy ascending-id selection: a 2-degree vertex becomes a center when
/// neither neighbor is a previously chosen center or a member of a
/// previously chosen neighbor pair.
pub fn schedule_2degree(g: &Graph) -> SchedulePlan {
    let n = g.vertex_count();
    let mut is_center = vec![false; n];
    let mut in_pair = vec![false; n];
    let mut triples = Vec::new();

    for c in g.vertices() {
        if g.degree(c) != 2 {
            continue;
        }
        let adj = g.neighbors(c);
        let (a, b) = (adj[0], adj[1]);
        if a == b
            || is_center[a as usize]
            || is_center[b as usize]
            || in_pair[a as usize]
            || in_pair[b as usize]
        {
            continue;
        }
        is_center[c as usize] = true;
        in_pair[a as usize] = true;
        in_pair[b as usize] = true;
        triples.push((c, a, b));
    }

    let explicit_sources = g
        .vertices()
        .filter(|&v| !g.is_isolated(v) && !is_center[v as usize])
        .collect();
    SchedulePlan {
        triples,
        explicit_sources,
    }
}

/// Heuristic configuration: H0 none, H1 1-degree, H2 2-degree, H3 both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    H0,
    H1,
    H2,
    H3,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::H0, Mode::H1, Mode::H2, Mode::H3];

    pub fn name(self) -> &'static str {
        match self {
            Mode::H0 => "h0",
            Mode::H1 => "h1",
            Mode::H2 => "h2",
            Mode::H3 => "h3",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h0" => Ok(Mode::H0),
            "h1" => Ok(Mode::H1),
            "h2" => Ok(Mode::H2),
            "h3" => Ok(Mode::H3),
            other => Err(format!("unknown mode {other:?} (expected h0..h3)")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How each vertex was handled; the four counts always sum to n.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundBreakdown {
    /// Rounds actually executed (forward sweeps run).
    pub explicit_rounds: usize,
    /// Vertices removed by the 1-degree preprocessing.
    pub one_degree_removed: usize,
    /// Centers whose round was replaced by a merged sweep.
    pub two_degree_augmented: usize,
    /// Vertices that contributed no round: isolated in the input, or
    /// stripped to isolation by the reduction.
    pub isolated: usize,
}

impl RoundBreakdown {
    pub fn total(&self) -> usize {
        self.explicit_rounds + self.one_degree_removed + self.two_degree_augmented + self.isolated
    }
}

/// Wall time spent per phase across a whole run.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimes {
    pub preprocess: Duration,
    pub forward: Duration,
    pub backward: Duration,
}

#[derive(Debug, Clone)]
pub struct ModeRun {
    pub scores: BcScores,
    pub breakdown: RoundBreakdown,
    pub times: PhaseTimes,
}

/// Exact betweenness under the chosen heuristic configuration. All four
/// modes agree with the oracle within rounding.
pub fn bc_with_heuristics(g: &Graph, mode: Mode) -> BcScores {
    run_mode(g, mode).scores
}

/// Full run with round accounting and phase timings.
pub fn run_mode(g: &Graph, mode: Mode) -> ModeRun {
    match mode {
        Mode::H0 => run_h0(g),
        Mode::H1 => run_h1(g),
        Mode::H2 => run_h2(g),
        Mode::H3 => run_h3(g),
    }
}

fn run_h0(g: &Graph) -> ModeRun {
    let n = g.vertex_count();
    let mut scores = BcScores::zeros(n);
    let mut times = PhaseTimes::default();
    let mut explicit = 0usize;
    for s in g.vertices() {
        if g.is_isolated(s) {
            continue;
        }
        let t0 = Instant::now();
        let mut state = forward_sweep(g, s);
        times.forward += t0.elapsed();
        let t1 = Instant::now();
        backward_sweep(g, &mut state, None, true);
        times.backward += t1.elapsed();
        accumulate_scores(&mut scores, &state.delta, s);
        explicit += 1;
    }
    let isolated = g.vertices().filter(|&v| g.is_isolated(v)).count();
    ModeRun {
        scores,
        breakdown: RoundBreakdown {
            explicit_rounds: explicit,
            isolated,
            ..Default::default()
        },
        times,
    }
}

fn run_h1(g: &Graph) -> ModeRun {
    let n = g.vertex_count();
    let mut times = PhaseTimes::default();
    let t0 = Instant::now();
    let reduced = preprocess_1degree(&g.to_edge_list(), 1).expect("ids from a valid graph");
    times.preprocess = t0.elapsed();

    let residual = &reduced.graph;
    let omega = &reduced.omega;
    let removed_mask = omega.is_removed();
    let mut scores = BcScores::zeros(n);
    let mut explicit = 0usize;
    for s in residual.vertices() {
        if removed_mask[s as usize] || residual.is_isolated(s) {
            continue;
        }
        let t1 = Instant::now();
        let mut state = forward_sweep(residual, s);
        times.forward += t1.elapsed();
        let t2 = Instant::now();
        backward_sweep(residual, &mut state, Some(&omega.omega), true);
        times.backward += t2.elapsed();
        apply_round(&mut scores, &state, omega);
        explicit += 1;
    }
    apply_stranded_endpoints(&mut scores, residual, omega);

    let removed = omega.removed.len();
    let isolated = residual
        .vertices()
        .filter(|&v| residual.is_isolated(v) && !removed_mask[v as usize])
        .count();
    ModeRun {
        scores,
        breakdown: RoundBreakdown {
            explicit_rounds: explicit,
            one_degree_removed: removed,
            isolated,
            ..Default::default()
        },
        times,
    }
}

fn run_h2(g: &Graph) -> ModeRun {
    let n = g.vertex_count();
    let plan = schedule_2degree(g);
    let mut scores = BcScores::zeros(n);
    let mut times = PhaseTimes::default();
    let mut explicit = 0usize;

    let mut in_pair = vec![false; n];
    for &(c, a, b) in &plan.triples {
        in_pair[a as usize] = true;
        in_pair[b as usize] = true;

        let t0 = Instant::now();
        let round_a = forward_sweep(g, a);
        let round_b = forward_sweep(g, b);
        times.forward += t0.elapsed();
        explicit += 2;

        let trees = NeighborTrees::from_rounds(c, round_a, round_b);
        let t1 = Instant::now();
        let (delta_a, delta_b, delta_c) = dmf_accumulate(g, &trees);
        times.backward += t1.elapsed();
        accumulate_scores(&mut scores, &delta_a, a);
        accumulate_scores(&mut scores, &delta_b, b);
        accumulate_scores(&mut scores, &delta_c, c);
    }

    for &s in &plan.explicit_sources {
        if in_pair[s as usize] {
            continue;
        }
        let t0 = Instant::now();
        let mut state = forward_sweep(g, s);
        times.forward += t0.elapsed();
        let t1 = Instant::now();
        backward_sweep(g, &mut state, None, true);
        times.backward += t1.elapsed();
        accumulate_scores(&mut scores, &state.delta, s);
        explicit += 1;
    }
    debug_assert_eq!(explicit, plan.explicit_sources.len());

    let isolated = g.vertices().filter(|&v| g.is_isolated(v)).count();
    ModeRun {
        scores,
        breakdown: RoundBreakdown {
            explicit_rounds: explicit,
            two_degree_augmented: plan.triples.len(),
            isolated,
            ..Default::default()
        },
        times,
    }
}

fn run_h3(g: &Graph) -> ModeRun {
    let n = g.vertex_count();
    let mut times = PhaseTimes::default();
    let t0 = Instant::now();
    let reduced = preprocess_1degree(&g.to_edge_list(), 1).expect("ids from a valid graph");
    times.preprocess = t0.elapsed();

    let residual = &reduced.graph;
    let omega = &reduced.omega;
    let removed_mask = omega.is_removed();
    // Scheduling runs on the residual graph, catching vertices whose
    // degree dropped to two after the reduction.
    let plan = schedule_2degree(residual);
    let mut scores = BcScores::zeros(n);
    let mut explicit = 0usize;

    let mut in_pair = vec![false; n];
    for &(c, a, b) in &plan.triples {
        in_pair[a as usize] = true;
        in_pair[b as usize] = true;

        let t1 = Instant::now();
        let round_a = forward_sweep(residual, a);
        let round_b = forward_sweep(residual, b);
        times.forward += t1.elapsed();
        explicit += 2;

        // All three sources share one residual component.
        let n_s = accumulate_ns(&round_a, omega);
        let trees = NeighborTrees::from_rounds(c, round_a, round_b);
        let t2 = Instant::now();
        let (delta_a, delta_b, delta_c) =
            dmf_accumulate_with(residual, &trees, Some(&omega.omega), None);
        times.backward += t2.elapsed();

        for (source, delta) in [(a, &delta_a), (b, &delta_b), (c, &delta_c)] {
            let count = omega.omega[source as usize];
            let multiplier = (count + 1) as f64;
            for (w, d) in delta.iter().enumerate() {
                if w as u32 != source {
                    scores.values[w] += d * multiplier;
                }
            }
            if count > 0 {
                scores.values[source as usize] += endpoint_contribution(count, n_s);
            }
        }
    }

    for &s in &plan.explicit_sources {
        if in_pair[s as usize] {
            continue;
        }
        let t1 = Instant::now();
        let mut state = forward_sweep(residual, s);
        times.forward += t1.elapsed();
        let t2 = Instant::now();
        backward_sweep(residual, &mut state, Some(&omega.omega), true);
        times.backward += t2.elapsed();
        apply_round(&mut scores, &state, omega);
        explicit += 1;
    }
    debug_assert_eq!(explicit, plan.explicit_sources.len());
    apply_stranded_endpoints(&mut scores, residual, omega);

    let removed = omega.removed.len();
    let isolated = residual
        .vertices()
        .filter(|&v| residual.is_isolated(v) && !removed_mask[v as usize])
        .count();
    ModeRun {
        scores,
        breakdown: RoundBreakdown {
            explicit_rounds: explicit,
            one_degree_removed: removed,
            two_degree_augmented: plan.triples.len(),
            isolated,
        },
        times,
    }
}

/// Directed c-tree edges (parent, child), excluding the center's own; the
/// set a traced merged sweep must fire exactly once each.
pub fn center_tree_edges(g: &Graph, t: &NeighborTrees) -> Vec<(u32, u32)> {
    let (_, lvl_c) = derive_2degree_tree(t);
    let mut edges: Vec<(u32, u32)> = g
        .directed_pairs()
        .filter(|&(w, v)| {
            w != t.center
                && v != t.center
                && lvl_c[w as usize] >= 0
                && lvl_c[v as usize] == lvl_c[w as usize] + 1
        })
        .collect();
    edges.sort_unstable();
    edges
}
