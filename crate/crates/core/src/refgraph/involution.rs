use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Hypergraph, RefgraphError, SearchLimits};

/// Folding direction: `+` copies the left half onto the right, `−` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Fixed,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvolutionSource {
    /// Induced by the reflection in the given positive root.
    Reflection { root: usize },
    Search,
}

/// An involutory automorphism with a chosen orientation of its two halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutInvolution {
    pub perm: Vec<usize>,
    pub sides: Vec<Side>,
    pub stable: bool,
    pub source: InvolutionSource,
}

impl CutInvolution {
    pub fn from_sides(g: &Hypergraph, perm: Vec<usize>, sides: Vec<Side>, source: InvolutionSource) -> Self {
        let stable = !g.edges().iter().any(|e| e.iter().all(|&v| sides[v] == Side::Fixed));
        CutInvolution { perm, sides, stable, source }
    }

    fn vertices(&self, side: Side) -> Vec<usize> {
        (0..self.perm.len()).filter(|&v| self.sides[v] == side).collect()
    }
    pub fn fixed(&self) -> Vec<usize> {
        self.vertices(Side::Fixed)
    }
    pub fn left(&self) -> Vec<usize> {
        self.vertices(Side::Left)
    }
    pub fn right(&self) -> Vec<usize> {
        self.vertices(Side::Right)
    }

    /// `φ⁺` moves right vertices across and keeps the rest; `φ⁻` mirrors it.
    pub fn fold_vertex(&self, v: usize, sign: Sign) -> usize {
        let moving = match sign {
            Sign::Plus => Side::Right,
            Sign::Minus => Side::Left,
        };
        if self.sides[v] == moving {
            self.perm[v]
        } else {
            v
        }
    }

    /// Edge index of `φ±(e)` for every edge `e`.
    pub fn fold_edges(&self, g: &Hypergraph, sign: Sign) -> Vec<usize> {
        let index = g.edge_index();
        g.edges()
            .iter()
            .map(|e| {
                let mut k: Vec<usize> = e.iter().map(|&v| self.fold_vertex(v, sign)).collect();
                k.sort_unstable();
                index[&k]
            })
            .collect()
    }

    /// Edge index of `φ(e)` for every edge.
    pub fn edge_map(&self, g: &Hypergraph) -> Vec<usize> {
        g.edge_permutation(&self.perm).expect("involution is an automorphism")
    }

    /// Every violated cut-involution condition; empty when valid.
    pub fn violations(&self, g: &Hypergraph) -> Vec<String> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        if self.perm.len() != n || self.sides.len() != n {
            return vec!["size does not match the graph".into()];
        }
        if (0..n).any(|v| self.perm[self.perm[v]] != v) {
            out.push("not an involution".into());
        }
        if !g.is_automorphism(&self.perm) {
            out.push("not an automorphism".into());
            return out;
        }
        for v in 0..n {
            let fixed = self.perm[v] == v;
            if fixed != (self.sides[v] == Side::Fixed) {
                out.push(format!("vertex {v} fixed-set label disagrees with the permutation"));
            }
            let expected = match self.sides[v] {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
                Side::Fixed => Side::Fixed,
            };
            if self.sides[self.perm[v]] != expected {
                out.push(format!("vertex {v}: the halves are not swapped by the involution"));
            }
        }
        let removed: Vec<bool> = self.sides.iter().map(|&s| s == Side::Fixed).collect();
        let comps = g.components_without(&removed);
        if comps.len() < 2 {
            out.push("fixed set is not a vertex cut of the clique expansion".into());
        }
        for c in &comps {
            let s: HashSet<Side> = c.iter().map(|&v| self.sides[v]).collect();
            if s.len() > 1 {
                out.push("a component meets both halves".into());
            }
        }
        let stable = !g.edges().iter().any(|e| e.iter().all(|&v| removed[v]));
        if stable != self.stable {
            out.push("stable flag is wrong".into());
        }
        out
    }
}

/// An involutory automorphism whose fixed set cuts `H̃`, with every
/// admissible orientation of its halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedInvolution {
    pub perm: Vec<usize>,
    pub fixed: Vec<usize>,
    pub stable: bool,
    /// Components of `H̃ ∖ F`.
    pub components: Vec<Vec<usize>>,
    /// Pairs `(L, R)`.
    pub orientations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl EnumeratedInvolution {
    pub fn oriented(&self, g: &Hypergraph, i: usize) -> CutInvolution {
        let (l, _) = &self.orientations[i];
        let mut sides = vec![Side::Right; self.perm.len()];
        for &v in &self.fixed {
            sides[v] = Side::Fixed;
        }
        for &v in l {
            sides[v] = Side::Left;
        }
        CutInvolution::from_sides(g, self.perm.clone(), sides, InvolutionSource::Search)
    }
}

/// Every involutory automorphism of `g`, cut or not (identity included).
pub fn involutive_automorphisms(g: &Hypergraph, limits: SearchLimits) -> Result<Vec<Vec<usize>>, RefgraphError> {
    let n = g.vertex_count();
    if n > limits.max_vertices {
        return Err(RefgraphError::SearchCapExceeded { limit: limits.max_vertices });
    }
    let mut m = vec![vec![0u32; n]; n];
    for e in g.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    m[a][b] += 1;
                }
            }
        }
    }
    let deg = g.degrees();
    let mut perm = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Hypergraph,
        m: &[Vec<u32>],
        deg: &[usize],
        perm: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        limit: u64,
    ) -> Result<(), RefgraphError> {
        *nodes += 1;
        if *nodes > limit {
            return Err(RefgraphError::SearchBudgetExceeded { nodes: limit });
        }
        let n = perm.len();
        let Some(v) = (0..n).find(|&v| perm[v] == usize::MAX) else {
            if g.is_automorphism(perm) {
                out.push(perm.clone());
            }
            return Ok(());
        };
        for u in v..n {
            if perm[u] != usize::MAX || deg[u] != deg[v] {
                continue;
            }
            perm[v] = u;
            perm[u] = v;
            let ok = (0..n).all(|w| {
                let pw = perm[w];
                pw == usize::MAX || (m[v][w] == m[u][pw] && m[u][w] == m[v][pw])
            });
            if ok {
                rec(g, m, deg, perm, out, nodes, limit)?;
            }
            perm[v] = usize::MAX;
            perm[u] = usize::MAX;
        }
        Ok(())
    }
    rec(g, &m, &deg, &mut perm, &mut out, &mut nodes, limits.max_nodes)?;
    Ok(out)
}

/// All cut involutions of `g` with their orientations. An involution whose
/// fixed set cuts `H̃` but which maps some component to itself admits no
/// left/right split and is left out.
pub fn enumerate_cut_involutions(g: &Hypergraph) -> Result<Vec<EnumeratedInvolution>, RefgraphError> {
    enumerate_cut_involutions_with(g, SearchLimits::default())
}

pub fn enumerate_cut_involutions_with(
    g: &Hypergraph,
    limits: SearchLimits,
) -> Result<Vec<EnumeratedInvolution>, RefgraphError> {
    let mut out = Vec::new();
    for perm in involutive_automorphisms(g, limits)? {
        if let Some(inv) = classify(g, perm) {
            out.push(inv);
        }
    }
    Ok(out)
}

/// Cut status of one involutory automorphism: `None` unless its fixed set
/// cuts `H̃` into components that the involution pairs up.
pub fn classify(g: &Hypergraph, perm: Vec<usize>) -> Option<EnumeratedInvolution> {
    let n = g.vertex_count();
    let removed: Vec<bool> = (0..n).map(|v| perm[v] == v).collect();
    let components = g.components_without(&removed);
    if components.len() < 2 {
        return None;
    }
    let mut comp_of = vec![usize::MAX; n];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut pairs = Vec::new();
    for (i, c) in components.iter().enumerate() {
        let j = comp_of[perm[c[0]]];
        if j == i {
            return None;
        }
        if i < j {
            pairs.push((i, j));
        }
    }
    let mut orientations = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for (b, &(i, j)) in pairs.iter().enumerate() {
            let (a, c) = if mask >> b & 1 == 0 { (i, j) } else { (j, i) };
            l.extend(&components[a]);
            r.extend(&components[c]);
        }
        l.sort_unstable();
        r.sort_unstable();
        orientations.push((l, r));
    }
    let fixed: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
    let stable = !g.edges().iter().any(|e| e.iter().all(|&v| removed[v]));
    Some(EnumeratedInvolution { perm, fixed, stable, components, orientations })
}

/// Edge orbits of the group generated by the given vertex permutations.
pub fn edge_orbits(g: &Hypergraph, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let maps: Vec<Vec<usize>> = generators
        .iter()
        .map(|p| g.edge_permutation(p).expect("generators must be automorphisms"))
        .collect();
    let m = g.edge_count();
    let mut orbit_of = vec![usize::MAX; m];
    let mut orbits = Vec::new();
    for s in 0..m {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let e = members[i];
            for map in &maps {
                let f = map[e];
                if orbit_of[f] == usize::MAX {
                    orbit_of[f] = id;
                    members.push(f);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Whether the generated group acts transitively on edges, with the orbit partition.
pub fn is_edge_transitive_under(g: &Hypergraph, generators: &[Vec<usize>]) -> (bool, Vec<Vec<usize>>) {
    let orbits = edge_orbits(g, generators);
    (orbits.len() <= 1, orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c6_has_three_vertex_axis_cut_involutions() {
        let c6 = Hypergraph::cycle(6);
        let all = involutive_automorphisms(&c6, SearchLimits::default()).unwrap();
        // identity, six reflections, half-turn
        assert_eq!(all.len(), 8);
        let cuts = enumerate_cut_involutions(&c6).unwrap();
        assert_eq!(cuts.len(), 3);
        for c in &cuts {
            assert_eq!(c.fixed.len(), 2);
            assert!(c.stable);
            assert_eq!(c.orientations.len(), 2);
            for i in 0..2 {
                assert!(c.oriented(&c6, i).violations(&c6).is_empty());
            }
        }
    }

    #[test]
    fn single_edge_has_none() {
        let k2 = Hypergraph::path(1);
        assert!(enumerate_cut_involutions(&k2).unwrap().is_empty());
    }

    #[test]
    fn cherry_pivots_on_its_centre() {
        let p = Hypergraph::path(2);
        let cuts = enumerate_cut_involutions(&p).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].fixed, vec![1]);
        assert!(cuts[0].stable);
    }

    #[test]
    fn orbits() {
        let g = Hypergraph::cycle(4).disjoint_union(&Hypergraph::cycle(6)).unwrap();
        let gens: Vec<Vec<usize>> = involutive_automorphisms(&g, SearchLimits::default()).unwrap();
        let (t, orbits) = is_edge_transitive_under(&g, &gens);
        assert!(!t);
        assert_eq!(orbits.len(), 2);
    }

    #[test]
    fn folding_an_edge() {
        let c6 = Hypergraph::cycle(6);
        let cut = enumerate_cut_involutions(&c6).unwrap().into_iter().find(|c| c.fixed == vec![0, 3]).unwrap();
        let phi = cut.oriented(&c6, 0);
        assert_eq!(phi.left(), vec![1, 2]);
        let plus = phi.fold_edges(&c6, Sign::Plus);
        // edges (3,4),(4,5),(5,0) fold onto (2,3),(1,2),(0,1)
        assert_eq!(plus, vec![0, 1, 2, 2, 1, 0]);
    }
}
