//! Graphs with white (external) and black (internal) vertices, their operadic
//! composition, the twisting differential and the BV graph quotient.
//!
//! Signs follow one fixed convention: edges are odd and ordered, black
//! vertices are even. Results that are only meaningful up to that choice are
//! compared up to a global sign.

pub mod enumerate;
pub mod graph;
pub mod identities;
pub mod operad;
pub mod twist;

pub use enumerate::{enumerate_graphs, square_defects};
pub use graph::{canonicalize, BVGraph, GraphJson, GraphSum, TermJson, MAX_VERTICES};
pub use identities::{verify_graph_identities, IdentityCheck, IdentityReport};
pub use operad::{compose, compose_sums, substitute, unit, unit_sum};
pub use twist::{
    black_action, bvgraphs_differential, hochschild_differential, hochschild_graph, killed_in_bvgraphs, mc_element, product,
    to_bvgraphs, twist_differential, twist_differential_graph, twist_generator,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("bad vertex: {0}")]
    Vertex(String),
    #[error("graph too large: {0} vertices")]
    TooLarge(usize),
    #[error("orientation sign must be 1 or -1, got {0}")]
    Sign(i8),
    #[error("cannot parse {0}")]
    Parse(String),
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
