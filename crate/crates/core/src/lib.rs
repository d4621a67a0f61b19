//! Resolving sets and metric dimension of graphs.
//!
//! A set `R` of vertices *resolves* a graph when every vertex is uniquely
//! identified by its vector of distances to the members of `R`; the metric
//! dimension `β(G)` is the size of a smallest such set. This crate provides
//!
//! * graph construction, all-pairs distances and seeded generators ([`graph`], [`generators`]),
//! * signatures, resolving / doubly resolving checks and exhaustive minimum search ([`resolve`]),
//! * the entropy-greedy information content heuristic ([`ich`]),
//! * the linear-time leaf formula for trees ([`tree`]),
//! * implicit Hamming graphs with resolving-set augmentation ([`hamming`]),
//! * random-graph experiments ([`experiments`]) and k-mer embeddings ([`embed`]),
//! * the plain-text edge list format ([`edgelist`]).

pub mod edgelist;
pub mod embed;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod hamming;
pub mod ich;
mod partition;
pub mod resolve;
pub mod tree;

pub use error::{Error, Result};
pub use generators::RngSeed;
pub use graph::{apsp, build_graph, DistanceMatrix, Dist, Graph, UNREACHABLE};
pub use resolve::{Method, ResolvingSet, Signature};
