//! Fault-tolerant path restoration: splitting a replacement path into
//! subpaths that are each shortest after removing only a few of the faults.

pub mod decomposition;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod greedy;
pub mod instance;
pub mod lowerbound;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod random;

pub use decomposition::Decomposition;
pub use error::{Error, Result};
pub use graph::{distances, is_shortest, shortest_path, Edge, EdgeId, FaultSet, Graph, Path, Vertex, Weight};
pub use greedy::{baseline_decompose, greedy_decompose, greedy_decompose_weighted};
pub use instance::ReplacementInstance;
pub use oracle::{min_fault_set, restorable_check, verify_decomposition, FaultOracle, RestorabilityTable};
pub use poly::{compute_subpaths, compute_subpaths_weighted, fault_reduce_between};
