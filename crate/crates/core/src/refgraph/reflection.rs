use std::collections::HashMap;
use std::sync::Arc;

use crate::coxeter::{CoxeterGroup, Element, SimpleSet};

use super::{CutInvolution, Hypergraph, InvolutionSource, RefgraphError, Side};

/// One part of a reflection hypergraph: the left cosets of `⟨S_i⟩`.
#[derive(Debug, Clone)]
pub struct Part {
    pub generators: SimpleSet,
    /// Minimal-length coset representatives, in enumeration order.
    pub representatives: Vec<Element>,
    /// Coset index of every group element.
    pub coset_of: Vec<u32>,
    /// Global id of the part's first vertex.
    pub offset: usize,
}

/// The `(S_1,…,S_k; S, W)`-reflection hypergraph. Vertex `offset_i + j` is
/// the `j`-th coset of `⟨S_i⟩`; edge `e` is `(wW_1,…,wW_k)` for the elements
/// `w` listed in `edge_elements[e]`, with edge 0 the fundamental one.
#[derive(Debug, Clone)]
pub struct ReflectionHypergraph {
    group: Arc<CoxeterGroup>,
    parts: Vec<Part>,
    graph: Hypergraph,
    rep_words: Vec<Vec<usize>>,
    vertex_part: Vec<usize>,
    edge_of: Vec<u32>,
    edge_elements: Vec<Vec<Element>>,
}

impl ReflectionHypergraph {
    pub fn build(group: Arc<CoxeterGroup>, subsets: &[SimpleSet]) -> Result<Self, RefgraphError> {
        if subsets.is_empty() {
            return Err(RefgraphError::InvalidSubset("at least one generator subset is required".into()));
        }
        let full = SimpleSet::full(group.rank());
        for (i, s) in subsets.iter().enumerate() {
            if !s.is_subset(full) {
                return Err(RefgraphError::InvalidSubset(format!(
                    "subset {} uses a generator outside 0..{}",
                    i + 1,
                    group.rank()
                )));
            }
        }
        let mut parts = Vec::new();
        let mut names = Vec::new();
        let mut rep_words = Vec::new();
        let mut vertex_part = Vec::new();
        let mut offset = 0;
        for (i, &s) in subsets.iter().enumerate() {
            let (coset_of, cosets) = group.coset_partition(s);
            let representatives: Vec<Element> = cosets.iter().map(|c| c.representative).collect();
            for (j, r) in representatives.iter().enumerate() {
                names.push(format!("{i}:{j}"));
                rep_words.push(group.word(*r));
                vertex_part.push(i);
            }
            let count = representatives.len();
            parts.push(Part { generators: s, representatives, coset_of, offset });
            offset += count;
        }
        let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut edges = Vec::new();
        let mut edge_elements: Vec<Vec<Element>> = Vec::new();
        let mut edge_of = Vec::with_capacity(group.order());
        for w in group.elements() {
            let tuple: Vec<usize> = parts.iter().map(|p| p.offset + p.coset_of[w.index()] as usize).collect();
            let next = edges.len() as u32;
            let id = *index.entry(tuple.clone()).or_insert_with(|| {
                edges.push(tuple);
                edge_elements.push(Vec::new());
                next
            });
            edge_elements[id as usize].push(w);
            edge_of.push(id);
        }
        let graph = Hypergraph::new(names, edges, subsets.len())?;
        Ok(ReflectionHypergraph { group, parts, graph, rep_words, vertex_part, edge_of, edge_elements })
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }
    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }
    pub fn subsets(&self) -> Vec<SimpleSet> {
        self.parts.iter().map(|p| p.generators).collect()
    }
    pub fn uniformity(&self) -> usize {
        self.parts.len()
    }
    pub fn vertex_part(&self, v: usize) -> usize {
        self.vertex_part[v]
    }
    /// Reduced word of the minimal coset representative of a vertex.
    pub fn rep_word(&self, v: usize) -> &[usize] {
        &self.rep_words[v]
    }
    pub fn representative(&self, v: usize) -> Element {
        let p = &self.parts[self.vertex_part[v]];
        p.representatives[v - p.offset]
    }

    /// `∩ S_i`.
    pub fn common_generators(&self) -> SimpleSet {
        self.parts.iter().fold(SimpleSet::full(self.group.rank()), |acc, p| acc.intersection(p.generators))
    }

    /// True when no mirror contains an edge, i.e. `∩ S_i = ∅`.
    pub fn is_stable_family(&self) -> bool {
        self.common_generators().is_empty()
    }

    /// Edge lying in the closed chamber `wC₀`.
    pub fn edge_of(&self, w: Element) -> usize {
        self.edge_of[w.index()] as usize
    }

    /// Elements whose closed chambers contain the edge.
    pub fn edge_elements(&self, e: usize) -> &[Element] {
        &self.edge_elements[e]
    }

    pub fn fundamental_edge(&self) -> usize {
        0
    }

    /// Vertex `wW_i` in part `i`.
    pub fn vertex_of(&self, part: usize, w: Element) -> usize {
        let p = &self.parts[part];
        p.offset + p.coset_of[w.index()] as usize
    }

    /// The cut involution `wW_i ↦ twW_i` of the reflection `t`, oriented so
    /// that the left half is the set of vertices whose cones lie strictly on
    /// the positive side of `t`'s mirror.
    pub fn induced_involution(&self, t: Element) -> Result<CutInvolution, RefgraphError> {
        let root = self.group.reflection_root(t).ok_or(RefgraphError::NotAReflection)?;
        let n = self.graph.vertex_count();
        let mut perm = Vec::with_capacity(n);
        let mut sides = Vec::with_capacity(n);
        for v in 0..n {
            let i = self.vertex_part[v];
            let rep = self.representative(v);
            let tw = self.group.multiply(t, rep).expect("same group");
            perm.push(self.vertex_of(i, tw));
            sides.push(match self.group.cone_side(rep, self.parts[i].generators, root) {
                None => Side::Fixed,
                Some(true) => Side::Left,
                Some(false) => Side::Right,
            });
        }
        Ok(CutInvolution::from_sides(&self.graph, perm, sides, InvolutionSource::Reflection { root }))
    }

    /// Involutions induced by every reflection, indexed by positive root.
    pub fn reflection_involutions(&self) -> Vec<CutInvolution> {
        self.group
            .reflections()
            .into_iter()
            .map(|t| self.induced_involution(t).expect("reflections induce involutions"))
            .collect()
    }

    /// Structural self-check of the defining properties; returns every violation.
    pub fn audit(&self) -> Vec<String> {
        let mut out = Vec::new();
        let g = &self.group;
        let common = g.parabolic_order(self.common_generators());
        if self.graph.edge_count() * common != g.order() {
            out.push(format!("edge count {} is not |W|/|<∩S_i>|", self.graph.edge_count()));
        }
        for (i, p) in self.parts.iter().enumerate() {
            if p.representatives.len() * g.parabolic_order(p.generators) != g.order() {
                out.push(format!("part {i} has the wrong size"));
            }
        }
        // fibres of w ↦ edge are the cosets of ⟨∩S_i⟩
        let (owner, _) = g.coset_partition(self.common_generators());
        for e in 0..self.graph.edge_count() {
            let els = &self.edge_elements[e];
            if els.iter().any(|w| owner[w.index()] != owner[els[0].index()]) || els.len() != common {
                out.push(format!("edge {e} is not a single coset of <∩S_i>"));
            }
        }
        // degrees are constant on each part
        let deg = self.graph.degrees();
        for (i, p) in self.parts.iter().enumerate() {
            let range = p.offset..p.offset + p.representatives.len();
            if deg[range.clone()].iter().any(|&d| d != deg[p.offset]) {
                out.push(format!("part {i} is not regular"));
            }
        }
        for (r, phi) in self.reflection_involutions().iter().enumerate() {
            for v in phi.violations(&self.graph) {
                out.push(format!("reflection {r}: {v}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSpec;

    fn rg(spec: &str, subsets: &[&[usize]]) -> ReflectionHypergraph {
        let g = Arc::new(CoxeterGroup::build(&spec.parse::<CoxeterSpec>().unwrap()).unwrap());
        let s: Vec<SimpleSet> = subsets.iter().map(|s| SimpleSet::from_indices(s.iter().copied())).collect();
        ReflectionHypergraph::build(g, &s).unwrap()
    }

    #[test]
    fn hexagon_from_dihedral_group() {
        let h = rg("I2:3", &[&[0], &[1]]);
        assert_eq!((h.graph().vertex_count(), h.graph().edge_count()), (6, 6));
        assert!(h.audit().is_empty(), "{:?}", h.audit());
        for j in 0..2 {
            let phi = h.induced_involution(h.group().simple_reflection(j).unwrap()).unwrap();
            assert_eq!((phi.fixed().len(), phi.left().len(), phi.right().len()), (2, 2, 2));
            assert!(phi.stable);
        }
        assert!(matches!(h.induced_involution(h.group().identity()), Err(RefgraphError::NotAReflection)));
    }

    #[test]
    fn fundamental_edge_joins_the_trivial_cosets() {
        let h = rg("A3", &[&[1, 2], &[0, 2]]);
        assert_eq!(h.graph().edges()[0], vec![0, h.parts()[1].offset]);
        assert_eq!(h.edge_of(h.group().identity()), 0);
        assert_eq!(h.graph().names()[0], "0:0");
        assert!(h.rep_word(0).is_empty());
    }

    #[test]
    fn star_from_a3() {
        let h = rg("A3", &[&[1, 2], &[0, 1, 2]]);
        assert_eq!((h.graph().vertex_count(), h.graph().edge_count()), (5, 4));
        assert!(!h.is_stable_family());
        assert!(h.audit().is_empty(), "{:?}", h.audit());
    }

    #[test]
    fn out_of_range_subset() {
        let g = Arc::new(CoxeterGroup::build(&"A2".parse().unwrap()).unwrap());
        assert!(ReflectionHypergraph::build(g, &[SimpleSet::from_indices([2])]).is_err());
    }
}
