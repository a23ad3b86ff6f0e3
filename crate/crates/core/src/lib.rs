//! Exact betweenness centrality for unweighted undirected graphs.
//!
//! The crate provides:
//! - a symmetric CSR graph with edge-list and binary cache I/O, plus an
//!   R-MAT generator ([`graph`], [`io`], [`rmat`]);
//! - single-worker Brandes rounds with active-edge work mapping and
//!   prefix-offset reuse ([`brandes`]), verified against a brute-force
//!   all-pairs oracle ([`oracle`]);
//! - 1-degree reduction and the 2-degree frontier-merging heuristic
//!   ([`degree1`], [`degree2`]);
//! - a deterministic simulated multi-worker runtime over an R x C mesh
//!   with 2-D partitioning and sub-cluster replication ([`dist`]).
//!
//! Scores follow the unnormalized ordered-pair convention: on an
//! undirected graph each unordered pair contributes to its intermediaries
//! twice, once per direction.

pub mod brandes;
pub mod degree1;
pub mod degree2;
pub mod dist;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod prng;
pub mod rmat;

pub use brandes::{bc_exact, BcScores};
pub use error::{Error, Result};
pub use graph::{build_undirected, component_sizes, EdgeList, Graph};
pub use oracle::bc_oracle;
