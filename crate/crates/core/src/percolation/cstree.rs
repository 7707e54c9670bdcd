use serde::{Deserialize, Serialize};

use crate::refgraph::{CutInvolution, Hypergraph, Sign};

use super::PercolationError;

pub const CSTREE_SCHEMA: &str = "coxnorm.cstree/v1";
pub const CSTREE_DEPTH_CAP: usize = 12;

/// A node carries an edge colouring; children are the `+` and `−` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsNode {
    pub coloring: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<CsNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSTree {
    pub schema: String,
    pub depth: usize,
    pub root: CsNode,
}

/// Child colouring `e ↦ χ(φ±(e))`.
pub fn fold_coloring(g: &Hypergraph, phi: &CutInvolution, sign: Sign, coloring: &[usize]) -> Vec<usize> {
    phi.fold_edges(g, sign).into_iter().map(|e| coloring[e]).collect()
}

/// Full binary tree of folds along `sequence`, level `i` using the `i`-th
/// involution. Depth is capped at [`CSTREE_DEPTH_CAP`].
pub fn build_cs_tree(g: &Hypergraph, sequence: &[CutInvolution], coloring: &[usize]) -> Result<CSTree, PercolationError> {
    if sequence.len() > CSTREE_DEPTH_CAP {
        return Err(PercolationError::DepthCap { depth: sequence.len(), cap: CSTREE_DEPTH_CAP });
    }
    if coloring.len() != g.edge_count() {
        return Err(PercolationError::CertificateInvalid(format!(
            "colouring has {} entries for {} edges",
            coloring.len(),
            g.edge_count()
        )));
    }
    let tables: Vec<[Vec<usize>; 2]> =
        sequence.iter().map(|phi| [phi.fold_edges(g, Sign::Plus), phi.fold_edges(g, Sign::Minus)]).collect();
    fn grow(tables: &[[Vec<usize>; 2]], coloring: Vec<usize>) -> CsNode {
        match tables.split_first() {
            None => CsNode { coloring, children: Vec::new() },
            Some((level, rest)) => {
                let children = level
                    .iter()
                    .map(|t| grow(rest, t.iter().map(|&e| coloring[e]).collect()))
                    .collect();
                CsNode { coloring, children }
            }
        }
    }
    Ok(CSTree { schema: CSTREE_SCHEMA.to_string(), depth: sequence.len(), root: grow(&tables, coloring.to_vec()) })
}

impl CSTree {
    /// Leaves left to right, `+` before `−` at every level.
    pub fn leaves(&self) -> Vec<&Vec<usize>> {
        fn walk<'a>(n: &'a CsNode, out: &mut Vec<&'a Vec<usize>>) {
            if n.children.is_empty() {
                out.push(&n.coloring);
            }
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PercolationError> {
        let t: CSTree = serde_json::from_str(text).map_err(|e| PercolationError::Document(e.to_string()))?;
        if t.schema != CSTREE_SCHEMA {
            return Err(PercolationError::Document(format!("unsupported schema {:?}", t.schema)));
        }
        Ok(t)
    }
}

/// The leaf reached by following `signs` down the tree, without building it.
pub fn branch_leaf(g: &Hypergraph, sequence: &[(CutInvolution, Sign)], coloring: &[usize]) -> Vec<usize> {
    let mut c = coloring.to_vec();
    for (phi, sign) in sequence {
        c = fold_coloring(g, phi, *sign, &c);
    }
    c
}
