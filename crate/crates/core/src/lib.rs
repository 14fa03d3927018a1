//! Spanning bipartite `k`-connected subgraphs: connectivity and matching
//! kernels, certificate merging, digraph peeling, the partition-refinement
//! pipeline, brute-force oracles and experiment harnesses.

pub mod connectivity;
pub mod experiments;
mod flow;
pub mod gen;
pub mod graph;
pub mod matching;
pub mod merge;
pub mod oracle;
pub mod peel;
pub mod pipeline;

pub use connectivity::{edge_connectivity, is_k_connected, vertex_connectivity, KConnectivity, SeparatorWitness};
pub use graph::{BipartiteCertificate, Color, Digraph, Graph, TwoColoring};
