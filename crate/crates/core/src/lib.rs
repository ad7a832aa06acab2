//! Exact top-k closeness centrality.
//!
//! Vertices are visited in decreasing degree order with a breadth-first search
//! that stops as soon as an upper bound on the vertex's closeness drops to the
//! current k-th best value. Reachable-set sizes needed by the bound come from
//! connected components (undirected) or from a dynamic program over the
//! condensation DAG (directed).
//!
//! ```
//! use topk_closeness::{generate, top_k, Model};
//!
//! let g = generate(Model::Star { n: 50 }, false, 0).unwrap();
//! let run = top_k(&g, 1, 1);
//! assert_eq!(run.result.entries[0].vertex, 0);
//! ```

pub mod bounds;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod scc;
pub mod threshold;

pub use bounds::{closeness, closeness_upper_bound, farness_lower_bound, inverse_closeness_lower_bound};
pub use engine::{
    bfs_cut, degree_order, top_k, top_k_with, BoundaryRecord, EngineOptions, RankedVertex, RunStats, TopKResult,
    TopKRun, VertexOutcome, Visit, VisitOutcome, VisitState,
};
pub use error::{Error, Result};
pub use generate::{disjoint_union, generate, Model};
pub use graph::{bfs, connected_components, load_edge_list, BfsResult, ComponentMap, Graph, VertexId};
pub use oracle::{exact_closeness_all, metrics, structural_textbook_arc_count, textbook_arc_count, top_k_textbook, ClosenessTable, Metrics};
pub use scc::{compute_alpha_omega, compute_scc_dag, reachability_for, ReachabilityBounds, SccDag};
pub use threshold::{Scored, SharedThreshold, ThresholdSource, TopKHeap};
