//! Linear intersection numbers of graphs.
//!
//! A linear intersection representation of a graph `G` assigns to each
//! vertex a line of a linear hypergraph so that two vertices are adjacent
//! exactly when their lines meet. The smallest number of points needed is
//! `v(G)`; it equals the least number of cliques covering every edge exactly
//! once and every vertex at least twice. This crate computes `v(G)` exactly,
//! with certificates, bounds and structural checks.

pub mod canon;
pub mod certificate;
pub mod classify;
pub mod cliques;
pub mod constructions;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod solver;

pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use hypergraph::LinearHypergraph;
pub use solver::{
    linear_intersection_number, reduced_linear_intersection_number, Budget, CliqueCover, CoverMode,
    SolveError, SolveOptions, SolveResult,
};
