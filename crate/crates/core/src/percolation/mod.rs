mod certificate;
mod cstree;
mod fold;

pub use certificate::{
    build_percolating_certificate, certificate_to_monochromatic_leaf, project_certificate_to_edges, verify_percolation,
    CertificateDocument, FoldStep, PercolationCertificate, StepRecord, CERTIFICATE_SCHEMA,
};
pub use cstree::{branch_leaf, build_cs_tree, fold_coloring, CSTree, CsNode, CSTREE_DEPTH_CAP, CSTREE_SCHEMA};
pub use fold::{
    canonical_schedule, fold_word_set, is_stack, replay_on_group, shortest_percolating_sequence, signed_reflect,
    EXPLORATION_ORDER_CAP,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum PercolationError {
    #[error("element is not a reflection")]
    NotAReflection,
    #[error("exploration needs |W| <= {cap}, got {order}")]
    ExplorationCap { order: usize, cap: usize },
    #[error("certificate belongs to a different group or hypergraph")]
    GroupMismatch,
    #[error("tree depth {depth} exceeds cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("invalid certificate step {index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("invalid certificate: {0}")]
    CertificateInvalid(String),
    #[error("document error: {0}")]
    Document(String),
}
