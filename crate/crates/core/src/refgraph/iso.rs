use std::collections::HashSet;

use super::{Hypergraph, RefgraphError};

/// Bounds for exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

pub const SEARCH_VERTEX_CAP: usize = 20;

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_vertices: SEARCH_VERTEX_CAP, max_nodes: 50_000_000 }
    }
}

/// Isomorphism test returning a witness `map[v1] = v2` on success.
pub fn graph_isomorphic(g1: &Hypergraph, g2: &Hypergraph) -> Result<Option<Vec<usize>>, RefgraphError> {
    find_isomorphism(g1, g2, &[], SearchLimits::default())
}

/// Isomorphism search where every pair `(a, b)` in `pins` must satisfy `map[a] = b`.
pub fn find_isomorphism(
    g1: &Hypergraph,
    g2: &Hypergraph,
    pins: &[(usize, usize)],
    limits: SearchLimits,
) -> Result<Option<Vec<usize>>, RefgraphError> {
    let n = g1.vertex_count();
    if n > limits.max_vertices || g2.vertex_count() > limits.max_vertices {
        return Err(RefgraphError::SearchCapExceeded { limit: limits.max_vertices });
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || (g1.edge_count() > 0 && g1.arity() != g2.arity()) {
        return Ok(None);
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let adj1 = matrix(g1);
    let adj2 = matrix(g2);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in pins {
        if a >= n || b >= n || d1[a] != d2[b] {
            return Ok(None);
        }
        if map[a] != usize::MAX && map[a] != b || used[b] && map[a] != b {
            return Ok(None);
        }
        map[a] = b;
        used[b] = true;
    }
    let order = search_order(&adj1, &map);
    let target: HashSet<Vec<usize>> = {
        let mut keys = g2.edge_keys();
        keys.sort();
        keys.into_iter().collect()
    };
    let mut state = Search {
        g1,
        adj1: &adj1,
        adj2: &adj2,
        d1: &d1,
        d2: &d2,
        order: &order,
        map,
        used,
        nodes: 0,
        limit: limits.max_nodes,
        target: &target,
    };
    // pinned pairs must already be consistent with each other
    for &(a, _) in pins {
        for &(c, _) in pins {
            if adj1[a][c] != adj2[state.map[a]][state.map[c]] {
                return Ok(None);
            }
        }
    }
    if state.extend(0)? {
        Ok(Some(state.map))
    } else {
        Ok(None)
    }
}

type Matrix = Vec<Vec<u32>>;

/// Clique-expansion edge multiplicities.
fn matrix(g: &Hypergraph) -> Matrix {
    let n = g.vertex_count();
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
    m
}

/// Unpinned vertices ordered so each one is adjacent to an earlier one when
/// possible, which makes adjacency pruning bite early.
fn search_order(adj: &Matrix, map: &[usize]) -> Vec<usize> {
    let n = adj.len();
    let mut placed: Vec<bool> = map.iter().map(|&m| m != usize::MAX).collect();
    let mut order = Vec::new();
    loop {
        let next = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| {
            let links = (0..n).filter(|&u| placed[u] && adj[v][u] > 0).count();
            let deg = adj[v].iter().filter(|&&x| x > 0).count();
            (links, deg, std::cmp::Reverse(v))
        });
        match next {
            Some(v) => {
                placed[v] = true;
                order.push(v);
            }
            None => break,
        }
    }
    order
}

struct Search<'a> {
    g1: &'a Hypergraph,
    adj1: &'a Matrix,
    adj2: &'a Matrix,
    d1: &'a [usize],
    d2: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    limit: u64,
    target: &'a HashSet<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool, RefgraphError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(RefgraphError::SearchBudgetExceeded { nodes: self.limit });
        }
        if depth == self.order.len() {
            return Ok(self.edges_match());
        }
        let v = self.order[depth];
        let n = self.map.len();
        for cand in 0..n {
            if self.used[cand] || self.d1[v] != self.d2[cand] {
                continue;
            }
            let consistent = (0..n).all(|u| {
                let mu = self.map[u];
                mu == usize::MAX || self.adj1[v][u] == self.adj2[cand][mu]
            });
            if !consistent {
                continue;
            }
            self.map[v] = cand;
            self.used[cand] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.map[v] = usize::MAX;
            self.used[cand] = false;
        }
        Ok(false)
    }

    fn edges_match(&self) -> bool {
        if self.g1.arity() <= 2 {
            return true;
        }
        self.g1.edges().iter().all(|e| {
            let mut k: Vec<usize> = e.iter().map(|&v| self.map[v]).collect();
            k.sort_unstable();
            self.target.contains(&k)
        })
    }
}
