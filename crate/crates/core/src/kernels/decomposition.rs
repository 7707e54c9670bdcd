use std::collections::{BTreeSet, HashMap};

use crate::refgraph::{find_isomorphism, Hypergraph, SearchLimits};

/// Tree decomposition whose bags each induce a copy of `template`.
#[derive(Debug, Clone)]
pub struct NDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
    pub template: Hypergraph,
    /// Optional witness per tree edge `(x, y)`: `map[i]` is the position in
    /// bag `y` of the image of the `i`-th vertex of bag `x`.
    pub witnesses: Vec<Option<Vec<usize>>>,
}

impl NDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, tree: Vec<(usize, usize)>, template: Hypergraph) -> Self {
        let witnesses = vec![None; tree.len()];
        NDecomposition { bags, tree, template, witnesses }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub violations: Vec<String>,
    /// Isomorphisms found or confirmed for each tree edge.
    pub witnesses: Vec<Option<Vec<usize>>>,
}

impl DecompositionCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_tree(nodes: usize, edges: &[(usize, usize)]) -> bool {
    if nodes == 0 || edges.len() + 1 != nodes {
        return false;
    }
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return false;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Checks coverage of vertices and edges, the running-intersection property,
/// `H[X] ≅ N` for every bag, and an isomorphism `H[X] → H[Y]` fixing `X ∩ Y`
/// for every tree edge.
pub fn validate_n_decomposition(h: &Hypergraph, dec: &NDecomposition) -> DecompositionCheck {
    let mut violations = Vec::new();
    let nb = dec.bags.len();
    let tree_ok = is_tree(nb, &dec.tree);
    if !tree_ok {
        violations.push(format!("bag tree with {nb} nodes and {} edges is not a tree", dec.tree.len()));
    }
    if let Some(v) = dec.bags.iter().flatten().find(|&&v| v >= h.vertex_count()) {
        violations.push(format!("bag names missing vertex {v}"));
        return DecompositionCheck { violations, witnesses: dec.witnesses.clone() };
    }
    let sets: Vec<BTreeSet<usize>> = dec.bags.iter().map(|b| b.iter().copied().collect()).collect();
    let covered: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    for v in (0..h.vertex_count()).filter(|v| !covered.contains(v)) {
        violations.push(format!("vertex {} lies in no bag", h.names()[v]));
    }
    for (e, verts) in h.edges().iter().enumerate() {
        if !sets.iter().any(|s| verts.iter().all(|v| s.contains(v))) {
            violations.push(format!("edge {e} lies in no bag"));
        }
    }
    if tree_ok {
        for v in 0..h.vertex_count() {
            let holding: Vec<usize> = (0..nb).filter(|&b| sets[b].contains(&v)).collect();
            let inner: Vec<(usize, usize)> = dec
                .tree
                .iter()
                .filter(|(a, b)| sets[*a].contains(&v) && sets[*b].contains(&v))
                .copied()
                .collect();
            if !holding.is_empty() && inner.len() + 1 != holding.len() {
                violations.push(format!("bags holding vertex {} are not connected in the tree", h.names()[v]));
            }
        }
    }
    let limits = SearchLimits::default();
    let induced: Vec<Hypergraph> = dec.bags.iter().map(|b| h.induced(b)).collect();
    for (i, sub) in induced.iter().enumerate() {
        match find_isomorphism(sub, &dec.template, &[], limits) {
            Ok(Some(_)) => {}
            Ok(None) => violations.push(format!("bag {i} does not induce the template")),
            Err(e) => violations.push(format!("bag {i}: {e}")),
        }
    }
    let mut witnesses = dec.witnesses.clone();
    witnesses.resize(dec.tree.len(), None);
    for (t, &(x, y)) in dec.tree.iter().enumerate() {
        if x >= nb || y >= nb {
            continue;
        }
        let pos_y: HashMap<usize, usize> = dec.bags[y].iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pins: Vec<(usize, usize)> = dec.bags[x]
            .iter()
            .enumerate()
            .filter_map(|(i, v)| pos_y.get(v).map(|&j| (i, j)))
            .collect();
        match &witnesses[t] {
            Some(map) => {
                let fixes = pins.iter().all(|&(i, j)| map.get(i) == Some(&j));
                if !fixes || !is_isomorphism(&induced[x], &induced[y], map) {
                    violations.push(format!("witness for tree edge {t} is not an isomorphism fixing the overlap"));
                }
            }
            None => match find_isomorphism(&induced[x], &induced[y], &pins, limits) {
                Ok(Some(map)) => witnesses[t] = Some(map),
                Ok(None) => violations.push(format!("no isomorphism between bags {x} and {y} fixes their overlap")),
                Err(e) => violations.push(format!("tree edge {t}: {e}")),
            },
        }
    }
    DecompositionCheck { violations, witnesses }
}

fn is_isomorphism(a: &Hypergraph, b: &Hypergraph, map: &[usize]) -> bool {
    if map.len() != a.vertex_count() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for &m in map {
        if m >= seen.len() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    let target: BTreeSet<Vec<usize>> = b.edge_keys().into_iter().collect();
    a.edges().iter().all(|e| {
        let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
        img.sort_unstable();
        target.contains(&img)
    })
}

/// Two copies of the 1-subdivided `K_4` glued along an induced 6-cycle.
/// Returns the 14-vertex graph and its two-bag decomposition.
pub fn double_subdivided_k4() -> (Hypergraph, NDecomposition) {
    // branch vertices 0..4, subdivision vertex of pair (a,b) at 4 + index
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    let sub = |a: usize, b: usize| 4 + pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut edges = Vec::new();
    for &(a, b) in &pairs {
        edges.push(vec![a, sub(a, b)]);
        edges.push(vec![b, sub(a, b)]);
    }
    // the triangle 0,1,2 subdivided is the shared 6-cycle; the second copy
    // gets its own apex 10 and subdivision vertices 11, 12, 13
    let apex = 10;
    for (i, a) in [0usize, 1, 2].into_iter().enumerate() {
        edges.push(vec![a, 11 + i]);
        edges.push(vec![apex, 11 + i]);
    }
    let h = Hypergraph::new((0..14).map(|i| i.to_string()).collect(), edges, 2).expect("valid graph");
    let cycle = [0, 1, 2, sub(0, 1), sub(0, 2), sub(1, 2)];
    let mut bag1: Vec<usize> = cycle.to_vec();
    bag1.extend([3, sub(0, 3), sub(1, 3), sub(2, 3)]);
    let mut bag2: Vec<usize> = cycle.to_vec();
    bag2.extend([10, 11, 12, 13]);
    let template = h.induced(&bag1);
    (h, NDecomposition::new(vec![bag1, bag2], vec![(0, 1)], template))
}

/// Two 4-cycles sharing one edge: 6 vertices, 7 edges.
pub fn double_four_cycle() -> (Hypergraph, NDecomposition) {
    let edges = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![1, 4], vec![4, 5], vec![5, 0]];
    let h = Hypergraph::new((0..6).map(|i| i.to_string()).collect(), edges, 2).expect("valid graph");
    let dec = NDecomposition::new(vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5]], vec![(0, 1)], Hypergraph::cycle(4));
    (h, dec)
}
