//! Reflection (hyper)graphs built from parabolic cosets, cut involutions and
//! the small-graph searches used to validate them.

mod hypergraph;
mod involution;
mod io;
mod iso;
mod presets;
mod reflection;

pub use hypergraph::Hypergraph;
pub use involution::{
    classify, edge_orbits, enumerate_cut_involutions, enumerate_cut_involutions_with, involutive_automorphisms,
    is_edge_transitive_under, CutInvolution, EnumeratedInvolution, InvolutionSource, Side, Sign,
};
pub use io::{to_dot, GraphDocument, PartRecord, VertexRecord, GRAPH_SCHEMA};
pub use iso::{find_isomorphism, graph_isomorphic, SearchLimits, SEARCH_VERTEX_CAP};
pub use presets::{preset, Preset, MAX_PRESET_UNIFORMITY};
pub use reflection::{Part, ReflectionHypergraph};

use crate::coxeter::CoxeterError;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum RefgraphError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("search is limited to {limit} vertices")]
    SearchCapExceeded { limit: usize },
    #[error("search gave up after {nodes} nodes")]
    SearchBudgetExceeded { nodes: u64 },
    #[error("invalid generator subset: {0}")]
    InvalidSubset(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not a reflection")]
    NotAReflection,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}
