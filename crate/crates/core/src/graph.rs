//! Symmetric CSR representation of an unweighted undirected graph.
//!
//! Vertex ids are 32-bit; counts and offsets are 64-bit. A `Graph` is
//! immutable after construction and safe to share across threads.

use crate::error::{Error, Result};

/// Raw edge input: a vertex count and a list of (u, v) pairs. Pairs may
/// contain duplicates, self-loops and both orientations; normalization
/// happens in [`build_undirected`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub pairs: Vec<(u32, u32)>,
}

/// Undirected unweighted graph in compressed sparse row form.
///
/// Invariants, established by [`build_undirected`] and checked by
/// [`Graph::check_invariants`]:
/// - `row_offsets` is non-decreasing with `row_offsets[0] == 0` and
///   `row_offsets[n] == 2 * m`;
/// - adjacency is symmetric: `v in adj(u)` iff `u in adj(v)`;
/// - no self-loops; each adjacency list is strictly increasing
///   (hence no duplicate edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: u64,
    row_offsets: Vec<u64>,
    columns: Vec<u32>,
}

impl Graph {
    /// Construct from raw CSR parts. Callers must uphold the invariants;
    /// used by the binary cache loader which validates separately.
    pub(crate) fn from_parts(n: usize, m: u64, row_offsets: Vec<u64>, columns: Vec<u32>) -> Self {
        Self {
            n,
            m,
            row_offsets,
            columns,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of unique undirected edges; `columns.len() == 2 * m`.
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    pub fn row_offsets(&self) -> &[u64] {
        &self.row_offsets
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    pub fn degree(&self, v: u32) -> u64 {
        self.row_offsets[v as usize + 1] - self.row_offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let lo = self.row_offsets[v as usize] as usize;
        let hi = self.row_offsets[v as usize + 1] as usize;
        &self.columns[lo..hi]
    }

    pub fn is_isolated(&self, v: u32) -> bool {
        self.degree(v) == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.n as u32
    }

    /// All directed adjacency entries (u, v); each undirected edge yields two.
    pub fn directed_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Edge list with one entry per undirected edge (u < v).
    pub fn to_edge_list(&self) -> EdgeList {
        let pairs = self
            .directed_pairs()
            .filter(|&(u, v)| u < v)
            .collect::<Vec<_>>();
        EdgeList { n: self.n, pairs }
    }

    /// Panics if any structural invariant is violated. Test support.
    pub fn check_invariants(&self) {
        assert_eq!(self.row_offsets.len(), self.n + 1);
        assert_eq!(self.row_offsets[0], 0);
        assert_eq!(self.row_offsets[self.n], 2 * self.m);
        assert_eq!(self.columns.len() as u64, 2 * self.m);
        assert!(self.row_offsets.windows(2).all(|w| w[0] <= w[1]));
        for u in self.vertices() {
            let adj = self.neighbors(u);
            assert!(adj.windows(2).all(|w| w[0] < w[1]), "adjacency not strict");
            for &v in adj {
                assert_ne!(u, v, "self-loop at {u}");
                assert!((v as usize) < self.n);
                assert!(
                    self.neighbors(v).binary_search(&u).is_ok(),
                    "missing symmetric edge ({v}, {u})"
                );
            }
        }
    }
}

/// Normalize an edge list into a symmetric CSR graph: self-loops dropped,
/// duplicates (including (u,v)/(v,u) repeats) merged, adjacencies sorted.
pub fn build_undirected(edges: &EdgeList) -> Result<Graph> {
    let n = edges.n;
    for &(u, v) in &edges.pairs {
        let bad = if u as usize >= n {
            Some(u)
        } else if v as usize >= n {
            Some(v)
        } else {
            None
        };
        if let Some(vertex) = bad {
            return Err(Error::VertexOutOfRange {
                vertex: vertex as u64,
                n,
            });
        }
    }

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in &edges.pairs {
        if u == v {
            continue;
        }
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }

    let mut row_offsets = Vec::with_capacity(n + 1);
    row_offsets.push(0u64);
    let mut columns = Vec::new();
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
        columns.extend_from_slice(list);
        row_offsets.push(columns.len() as u64);
    }

    debug_assert_eq!(columns.len() % 2, 0);
    let m = columns.len() as u64 / 2;
    Ok(Graph::from_parts(n, m, row_offsets, columns))
}

/// Map every vertex to the size of its connected component. Isolated
/// vertices map to 1. Plain BFS, independent of the traversal engine.
pub fn component_sizes(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut component = vec![usize::MAX; n];
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();

    for start in g.vertices() {
        if component[start as usize] != usize::MAX {
            continue;
        }
        let id = members.len();
        members.push(vec![start]);
        component[start as usize] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if component[w as usize] == usize::MAX {
                    component[w as usize] = id;
                    members[id].push(w);
                    queue.push_back(w);
                }
            }
        }
    }

    let mut sizes = vec![0u64; n];
    for v in 0..n {
        sizes[v] = members[component[v]].len() as u64;
    }
    sizes
}

/// Convenience constructors for common test families.
pub mod families {
    use super::{build_undirected, EdgeList, Graph};

    /// Path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Graph {
        let pairs = (0..n.saturating_sub(1))
            .map(|i| (i as u32, i as u32 + 1))
            .collect();
        build_undirected(&EdgeList { n, pairs }).unwrap()
    }

    /// Cycle graph on n >= 3 vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let pairs = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
        build_undirected(&EdgeList { n, pairs }).unwrap()
    }

    /// Star K_{1,k}: center 0 with k leaves.
    pub fn star(k: usize) -> Graph {
        let pairs = (1..=k).map(|i| (0, i as u32)).collect();
        build_undirected(&EdgeList { n: k + 1, pairs }).unwrap()
    }

    /// Complete graph on n vertices.
    pub fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                pairs.push((u as u32, v as u32));
            }
        }
        build_undirected(&EdgeList { n, pairs }).unwrap()
    }

    /// Disjoint union, relabeling the second graph's ids after the first.
    pub fn union(a: &Graph, b: &Graph) -> Graph {
        let shift = a.vertex_count() as u32;
        let mut pairs: Vec<(u32, u32)> = a.to_edge_list().pairs;
        pairs.extend(
            b.to_edge_list()
                .pairs
                .iter()
                .map(|&(u, v)| (u + shift, v + shift)),
        );
        build_undirected(&EdgeList {
            n: a.vertex_count() + b.vertex_count(),
            pairs,
        })
        .unwrap()
    }
}
