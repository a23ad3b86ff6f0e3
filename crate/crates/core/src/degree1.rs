//! 1-degree reduction.
//!
//! Vertices with exactly one neighbor cannot lie on any shortest path, so
//! their rounds can be skipped and their pair contributions recovered in
//! closed form. Preprocessing removes them in a single pass (no cascading),
//! counting per-vertex removals in `omega`. Rounds on the residual graph
//! then use the modified accumulation (1 + delta + omega) and scale their
//! dependencies by (omega(source) + 1); each parent of removed leaves also
//! receives an endpoint term derived from its component size.
//!
//! The component size `n_s` is recovered during traversal of the residual
//! graph by summing (1 + omega) over visited vertices, which makes the
//! whole scheme correct on graphs with several connected components.

use crate::brandes::{accumulate_scores, backward_sweep, forward_sweep, BcScores, RoundState};
use crate::error::Result;
use crate::graph::{build_undirected, EdgeList, Graph};

/// Per-vertex count of removed 1-degree children plus the removal log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaMap {
    /// `omega[v]` = number of removed 1-degree neighbors of v.
    pub omega: Vec<u64>,
    /// Removed (child, parent) pairs, sorted by child id.
    pub removed: Vec<(u32, u32)>,
}

impl OmegaMap {
    pub fn is_removed(&self) -> Vec<bool> {
        let n = self.omega.len();
        let mut mask = vec![false; n];
        for &(child, _) in &self.removed {
            mask[child as usize] = true;
        }
        mask
    }
}

/// Residual graph over the same vertex-id space; removed vertices are
/// isolated in it.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: Graph,
    pub omega: OmegaMap,
}

/// Single-pass 1-degree removal with 1-D edge partitioning (edges go to
/// partition `u mod num_partitions`, kept sorted by source). A source whose
/// full-graph degree is one is removed: its (child, parent) pair is logged,
/// the parent's omega incremented, and both edge directions dropped. The
/// result does not depend on `num_partitions`.
pub fn preprocess_1degree(edges: &EdgeList, num_partitions: usize) -> Result<ReducedGraph> {
    assert!(num_partitions >= 1, "need at least one partition");
    let g = build_undirected(edges)?;
    let n = g.vertex_count();

    // Distribute directed pairs by source; each vertex's whole edge list
    // lands in one partition, so removal decisions are partition-local.
    let mut partitions: Vec<Vec<(u32, u32)>> = vec![Vec::new(); num_partitions];
    for (u, v) in g.directed_pairs() {
        partitions[u as usize % num_partitions].push((u, v));
    }

    let mut omega = vec![0u64; n];
    let mut removed: Vec<(u32, u32)> = Vec::new();
    for part in &mut partitions {
        part.sort_unstable();
        for run in part.chunk_by(|a, b| a.0 == b.0) {
            if run.len() == 1 {
                let (child, parent) = run[0];
                removed.push((child, parent));
                omega[parent as usize] += 1;
            }
        }
    }
    removed.sort_unstable();

    let mut removed_mask = vec![false; n];
    for &(child, _) in &removed {
        removed_mask[child as usize] = true;
    }

    let residual_pairs: Vec<(u32, u32)> = g
        .directed_pairs()
        .filter(|&(u, v)| u < v && !removed_mask[u as usize] && !removed_mask[v as usize])
        .collect();
    let residual = build_undirected(&EdgeList {
        n,
        pairs: residual_pairs,
    })?;

    Ok(ReducedGraph {
        graph: residual,
        omega: OmegaMap { omega, removed },
    })
}

/// Component size of the round's source in the original graph, recovered
/// from the residual traversal: visited vertices plus their removed
/// children. Only meaningful after the forward sweep.
pub fn accumulate_ns(round: &RoundState, omega: &OmegaMap) -> u64 {
    round
        .queue
        .iter()
        .map(|&v| 1 + omega.omega[v as usize])
        .sum()
}

/// Total endpoint contribution of a vertex with `omega_s` removed children
/// in a component of `n_s` vertices. Each removal contributes
/// 2 * (n_s - omega_before - 2) with omega taken before its own increment;
/// summed in closed form.
#[allow(clippy::int_plus_one)] // the component holds the children plus their parent
pub fn endpoint_contribution(omega_s: u64, n_s: u64) -> f64 {
    assert!(
        n_s >= omega_s + 1,
        "component of size {n_s} cannot hold {omega_s} children plus their parent"
    );
    let omega = omega_s as f64;
    let n = n_s as f64;
    2.0 * omega * (n - 2.0) - omega * (omega - 1.0)
}

/// Exact betweenness with the 1-degree reduction: equals
/// [`crate::bc_exact`] on the input graph within rounding.
pub fn bc_with_1degree(g: &Graph) -> BcScores {
    let reduced = preprocess_1degree(&g.to_edge_list(), 1).expect("ids from a valid graph");
    bc_over_reduced(&reduced)
}

/// Run the modified rounds over an already-preprocessed graph.
pub fn bc_over_reduced(reduced: &ReducedGraph) -> BcScores {
    let residual = &reduced.graph;
    let omega = &reduced.omega;
    let removed_mask = omega.is_removed();
    let mut scores = BcScores::zeros(residual.vertex_count());

    for s in residual.vertices() {
        if removed_mask[s as usize] || residual.is_isolated(s) {
            continue;
        }
        let mut state = forward_sweep(residual, s);
        backward_sweep(residual, &mut state, Some(&omega.omega), true);
        apply_round(&mut scores, &state, omega);
    }
    apply_stranded_endpoints(&mut scores, residual, omega);
    scores
}

/// Add one modified round into the scores: dependencies scaled by
/// (omega(s) + 1) plus the source's endpoint term when it has removed
/// children.
pub(crate) fn apply_round(scores: &mut BcScores, state: &RoundState, omega: &OmegaMap) {
    let s = state.source;
    let multiplier = (omega.omega[s as usize] + 1) as f64;
    if multiplier == 1.0 {
        accumulate_scores(scores, &state.delta, s);
    } else {
        for (w, d) in state.delta.iter().enumerate() {
            if w as u32 != s {
                scores.values[w] += d * multiplier;
            }
        }
    }
    if omega.omega[s as usize] > 0 {
        let n_s = accumulate_ns(state, omega);
        scores.values[s as usize] += endpoint_contribution(omega.omega[s as usize], n_s);
    }
}

/// Endpoint terms for parents that became isolated in the residual graph
/// (for example the middle of a path of three): they run no round, and
/// their component collapsed to the vertex plus its removed children.
pub(crate) fn apply_stranded_endpoints(scores: &mut BcScores, residual: &Graph, omega: &OmegaMap) {
    let removed_mask = omega.is_removed();
    for v in residual.vertices() {
        let count = omega.omega[v as usize];
        if count > 0 && residual.is_isolated(v) && !removed_mask[v as usize] {
            scores.values[v as usize] += endpoint_contribution(count, 1 + count);
        }
    }
}
