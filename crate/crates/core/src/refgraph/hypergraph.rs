use std::collections::{HashMap, HashSet, VecDeque};

use super::RefgraphError;

/// A uniform hypergraph with named vertices. Edges are ordered tuples; the
/// tuple order decides which kernel coordinate each vertex feeds, while
/// structural questions (automorphisms, isomorphism) treat edges as sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    names: Vec<String>,
    edges: Vec<Vec<usize>>,
    arity: usize,
}

impl Hypergraph {
    pub fn new(names: Vec<String>, edges: Vec<Vec<usize>>, arity: usize) -> Result<Self, RefgraphError> {
        for (i, e) in edges.iter().enumerate() {
            if e.len() != arity {
                return Err(RefgraphError::InvalidGraph(format!("edge {i} has {} vertices, expected {arity}", e.len())));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= names.len()) {
                return Err(RefgraphError::InvalidGraph(format!("edge {i} names missing vertex {v}")));
            }
            let distinct: HashSet<usize> = e.iter().copied().collect();
            if distinct.len() != arity {
                return Err(RefgraphError::InvalidGraph(format!("edge {i} repeats a vertex")));
            }
        }
        Ok(Hypergraph { names, edges, arity })
    }

    /// Graph on vertices `0..n` named by their index.
    pub fn from_edges(n: usize, edges: &[&[usize]]) -> Result<Self, RefgraphError> {
        let arity = edges.first().map_or(2, |e| e.len());
        Self::new((0..n).map(|i| i.to_string()).collect(), edges.iter().map(|e| e.to_vec()).collect(), arity)
    }

    /// Cycle `C_n` with vertices `0..n` and edges `(i, i+1)`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Self::new((0..n).map(|i| i.to_string()).collect(), edges, 2).expect("cycle is valid")
    }

    /// Path with `edges` edges on vertices `0..=edges`.
    pub fn path(edges: usize) -> Self {
        let e: Vec<Vec<usize>> = (0..edges).map(|i| vec![i, i + 1]).collect();
        Self::new((0..=edges).map(|i| i.to_string()).collect(), e, 2).expect("path is valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push(vec![i, a + j]);
            }
        }
        Self::new((0..a + b).map(|i| i.to_string()).collect(), edges, 2).expect("bipartite graph is valid")
    }

    /// One edge per line, whitespace-separated vertex tokens. Blank lines
    /// and lines starting with `#` are skipped. Vertices are numbered in
    /// order of first appearance.
    pub fn from_adjacency_list(text: &str) -> Result<Self, RefgraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut arity = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut edge = Vec::new();
            for tok in line.split_whitespace() {
                let next = names.len();
                let id = *ids.entry(tok.to_string()).or_insert_with(|| {
                    names.push(tok.to_string());
                    next
                });
                edge.push(id);
            }
            match arity {
                None => arity = Some(edge.len()),
                Some(a) if a != edge.len() => {
                    return Err(RefgraphError::Parse(format!("line {}: expected {a} vertices", lineno + 1)));
                }
                _ => {}
            }
            edges.push(edge);
        }
        Self::new(names, edges, arity.unwrap_or(2))
    }

    pub fn to_adjacency_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let toks: Vec<&str> = e.iter().map(|&v| self.names[v].as_str()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Adjacency lists of the clique expansion `H̃`.
    pub fn clique_adjacency(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![HashSet::new(); self.vertex_count()];
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    if a != b {
                        sets[a].insert(b);
                    }
                }
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<usize> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Connected components of `H̃` after deleting `removed`, each sorted,
    /// listed by smallest vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let adj = self.clique_adjacency();
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if removed[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if !removed[u] && comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&vec![false; self.vertex_count()]).len() <= 1
    }

    /// Sorted vertex sets of all edges, for set-level comparisons.
    pub fn edge_keys(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| {
                let mut k = e.clone();
                k.sort_unstable();
                k
            })
            .collect()
    }

    /// Index of every edge by its vertex set.
    pub fn edge_index(&self) -> HashMap<Vec<usize>, usize> {
        self.edge_keys().into_iter().enumerate().map(|(i, k)| (k, i)).collect()
    }

    /// Image of every edge under a vertex permutation, or `None` if the
    /// permutation is not an automorphism.
    pub fn edge_permutation(&self, perm: &[usize]) -> Option<Vec<usize>> {
        if perm.len() != self.vertex_count() {
            return None;
        }
        let index = self.edge_index();
        if index.len() != self.edge_count() {
            // repeated edges: compare as multisets
            let mut a = self.edge_keys();
            let mut b: Vec<Vec<usize>> = self.edges.iter().map(|e| sorted_image(e, perm)).collect();
            a.sort();
            b.sort();
            if a != b {
                return None;
            }
        }
        self.edges.iter().map(|e| index.get(&sorted_image(e, perm)).copied()).collect()
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.edge_permutation(perm).is_some()
    }

    /// Subgraph induced on `vertices` (renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| pos.contains_key(v)))
            .map(|e| e.iter().map(|v| pos[v]).collect())
            .collect();
        Hypergraph {
            names: vertices.iter().map(|&v| self.names[v].clone()).collect(),
            edges,
            arity: self.arity,
        }
    }

    /// Subhypergraph on all vertices keeping only the listed edges.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Hypergraph {
        Hypergraph {
            names: self.names.clone(),
            edges: keep.iter().map(|&i| self.edges[i].clone()).collect(),
            arity: self.arity,
        }
    }

    /// Disjoint union; vertex names of `other` get a `'` suffix when they clash.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph, RefgraphError> {
        if self.arity != other.arity && !self.edges.is_empty() && !other.edges.is_empty() {
            return Err(RefgraphError::InvalidGraph("arity mismatch".into()));
        }
        let taken: HashSet<&String> = self.names.iter().collect();
        let mut names = self.names.clone();
        for n in &other.names {
            let mut name = n.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let off = self.vertex_count();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| e.iter().map(|v| v + off).collect()));
        Hypergraph::new(names, edges, self.arity.max(other.arity))
    }

    /// Tensor (categorical) product of two bipartite graphs whose edges are
    /// oriented from the first to the second side: `(a,b) ~ (a',b')` iff
    /// `a ~ a'` and `b ~ b'`.
    pub fn tensor_product(&self, other: &Hypergraph) -> Hypergraph {
        let n2 = other.vertex_count();
        let names = (0..self.vertex_count() * n2)
            .map(|i| format!("({},{})", self.names[i / n2], other.names[i % n2]))
            .collect();
        let mut edges = Vec::new();
        for e in &self.edges {
            for f in &other.edges {
                edges.push(e.iter().zip(f).map(|(&a, &b)| a * n2 + b).collect());
            }
        }
        // drop vertices that lie on no edge
        let g = Hypergraph { names, edges, arity: self.arity };
        let used: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degrees()[v] > 0).collect();
        g.induced(&used)
    }
}

fn sorted_image(e: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut k: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
    k.sort_unstable();
    k
}
