use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coxeter::SimpleSet;

use super::{Hypergraph, RefgraphError, ReflectionHypergraph};

pub const GRAPH_SCHEMA: &str = "coxnorm.graph/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    pub rep_word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartRecord {
    pub generators: SimpleSet,
    pub vertices: Vec<VertexRecord>,
}

/// JSON form of a reflection hypergraph. Edges list vertex ids in part order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema: String,
    pub group: String,
    pub k: usize,
    pub parts: Vec<PartRecord>,
    pub edges: Vec<Vec<String>>,
}

impl GraphDocument {
    pub fn from_reflection(h: &ReflectionHypergraph) -> Self {
        let g = h.graph();
        let parts = h
            .parts()
            .iter()
            .map(|p| PartRecord {
                generators: p.generators,
                vertices: (p.offset..p.offset + p.representatives.len())
                    .map(|v| VertexRecord { id: g.names()[v].clone(), rep_word: h.rep_word(v).to_vec() })
                    .collect(),
            })
            .collect();
        GraphDocument {
            schema: GRAPH_SCHEMA.to_string(),
            group: h.group().spec().to_string(),
            k: h.uniformity(),
            parts,
            edges: g.edges().iter().map(|e| e.iter().map(|&v| g.names()[v].clone()).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RefgraphError> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| RefgraphError::Parse(e.to_string()))?;
        if doc.schema != GRAPH_SCHEMA {
            return Err(RefgraphError::Parse(format!("unsupported schema {:?}", doc.schema)));
        }
        Ok(doc)
    }

    /// The bare hypergraph described by the document.
    pub fn to_hypergraph(&self) -> Result<Hypergraph, RefgraphError> {
        let names: Vec<String> = self.parts.iter().flat_map(|p| p.vertices.iter().map(|v| v.id.clone())).collect();
        let index: std::collections::HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|id| index.get(id.as_str()).copied().ok_or_else(|| RefgraphError::Parse(format!("unknown vertex {id}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Hypergraph::new(names, edges, self.k)
    }
}

/// Graphviz export of a bipartite reflection graph, one rank per part.
pub fn to_dot(h: &ReflectionHypergraph) -> Result<String, RefgraphError> {
    if h.uniformity() != 2 {
        return Err(RefgraphError::InvalidGraph("DOT export needs a graph (k = 2)".into()));
    }
    let g = h.graph();
    let mut out = String::new();
    writeln!(out, "graph reflection {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  label=\"{}\";", h.group().spec()).unwrap();
    for (i, p) in h.parts().iter().enumerate() {
        writeln!(out, "  subgraph part{i} {{").unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for v in p.offset..p.offset + p.representatives.len() {
            let word: Vec<String> = h.rep_word(v).iter().map(|j| format!("s{j}")).collect();
            let word = if word.is_empty() { "e".to_string() } else { word.join("") };
            writeln!(out, "    \"{}\" [part={i}, tooltip=\"{word}\"];", g.names()[v]).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", g.names()[e[0]], g.names()[e[1]]).unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refgraph::Preset;

    #[test]
    fn json_round_trip() {
        let h = Preset::SubdividedK4.build().unwrap();
        let doc = GraphDocument::from_reflection(&h);
        let back = GraphDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_hypergraph().unwrap(), *h.graph());
        assert_eq!(doc.parts[0].vertices.len(), 4);
        assert_eq!(doc.parts[1].vertices.len(), 6);
    }

    #[test]
    fn dot_for_graphs_only() {
        let c6 = Preset::C6.build().unwrap();
        let dot = to_dot(&c6).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("rank=same"));
        assert!(to_dot(&Preset::TetraFlag3Graph.build().unwrap()).is_err());
    }
}
