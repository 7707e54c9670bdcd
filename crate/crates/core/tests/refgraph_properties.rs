use std::collections::HashSet;
use std::sync::Arc;

use coxnorm::coxeter::{CoxeterGroup, SimpleSet};
use coxnorm::refgraph::{
    classify, enumerate_cut_involutions, find_isomorphism, graph_isomorphic, involutive_automorphisms,
    is_edge_transitive_under, Hypergraph, Preset, ReflectionHypergraph, SearchLimits, Side,
};

fn literal(n: usize, edges: Vec<Vec<usize>>) -> Hypergraph {
    let arity = edges[0].len();
    Hypergraph::new((0..n).map(|i| i.to_string()).collect(), edges, arity).unwrap()
}

fn subdivision(n: usize, base: &[(usize, usize)]) -> Hypergraph {
    let mut edges = Vec::new();
    for (i, &(a, b)) in base.iter().enumerate() {
        edges.push(vec![a, n + i]);
        edges.push(vec![b, n + i]);
    }
    literal(n + base.len(), edges)
}

fn k4_edges() -> Vec<(usize, usize)> {
    (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect()
}

fn octahedron_edges() -> Vec<(usize, usize)> {
    (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 3).collect()
}

fn cube() -> Hypergraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push(vec![v, u]);
            }
        }
    }
    literal(8, edges)
}

/// `db_k(⋯db_1(M_0))` on parts `A_1..A_k`, vertices numbered per part.
fn doubled_edge(k: usize) -> Hypergraph {
    // a vertex is (part, label); start with one edge of label 0 everywhere
    let mut edges: Vec<Vec<usize>> = vec![vec![0; k]];
    let mut counts = vec![1usize; k];
    for i in 0..k {
        let mut next = edges.clone();
        for e in &edges {
            let mut copy = e.clone();
            for (j, c) in copy.iter_mut().enumerate() {
                if j != i {
                    *c += counts[j];
                }
            }
            next.push(copy);
        }
        for (j, c) in counts.iter_mut().enumerate() {
            if j != i {
                *c *= 2;
            }
        }
        edges = next;
    }
    let offsets: Vec<usize> = (0..k).map(|j| counts[..j].iter().sum()).collect();
    let n: usize = counts.iter().sum();
    literal(n, edges.into_iter().map(|e| e.iter().enumerate().map(|(j, &l)| offsets[j] + l).collect()).collect())
}

fn octahedral_k_graph(k: usize) -> Hypergraph {
    let edges = (0..1usize << k).map(|m| (0..k).map(|j| 2 * j + (m >> j & 1)).collect()).collect();
    literal(2 * k, edges)
}

fn tetrahedron_flags() -> Hypergraph {
    let pairs = k4_edges();
    let triples: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut edges = Vec::new();
    for v in 0..4 {
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            for (ti, t) in triples.iter().enumerate() {
                if (v == a || v == b) && t.contains(&a) && t.contains(&b) {
                    edges.push(vec![v, 4 + pi, 10 + ti]);
                }
            }
        }
    }
    literal(14, edges)
}

fn assert_iso(h: &ReflectionHypergraph, lit: &Hypergraph, limits: SearchLimits) {
    let map = find_isomorphism(h.graph(), lit, &[], limits).unwrap().expect("isomorphic");
    let target: HashSet<Vec<usize>> = lit.edge_keys().into_iter().collect();
    for e in h.graph().edges() {
        let mut k: Vec<usize> = e.iter().map(|&v| map[v]).collect();
        k.sort();
        assert!(target.contains(&k));
    }
}

#[test]
fn presets_match_literal_graphs() {
    let d = SearchLimits::default();
    assert_iso(&Preset::C6.build().unwrap(), &Hypergraph::cycle(6), d);
    assert_iso(&Preset::C4.build().unwrap(), &Hypergraph::cycle(4), d);
    assert_iso(&Preset::EvenCycle(5).build().unwrap(), &Hypergraph::cycle(10), d);
    assert_iso(&Preset::SubdividedK4.build().unwrap(), &subdivision(4, &k4_edges()), d);
    assert_iso(&Preset::K14.build().unwrap(), &Hypergraph::complete_bipartite(1, 4), d);
    assert_iso(&Preset::Q3Hypercube.build().unwrap(), &cube(), d);
    assert_iso(&Preset::OctahedronSubdivision.build().unwrap(), &subdivision(6, &octahedron_edges()), d);
    assert_iso(&Preset::GowersOctahedron(3).build().unwrap(), &octahedral_k_graph(3), d);
    assert_iso(&Preset::GowersOctahedron(4).build().unwrap(), &octahedral_k_graph(4), d);
    assert_iso(&Preset::MK(3).build().unwrap(), &doubled_edge(3), d);
    assert_iso(&Preset::TetraFlag3Graph.build().unwrap(), &tetrahedron_flags(), d);
}

#[test]
fn k22_replacement_of_octahedron() {
    // each octahedron edge ab becomes a K_{2,2} between {a,b} and two new vertices
    let base = octahedron_edges();
    let mut edges = Vec::new();
    for (i, &(a, b)) in base.iter().enumerate() {
        for new in [6 + 2 * i, 7 + 2 * i] {
            edges.push(vec![a, new]);
            edges.push(vec![b, new]);
        }
    }
    let lit = literal(6 + 2 * base.len(), edges);
    let limits = SearchLimits { max_vertices: 30, ..SearchLimits::default() };
    assert_iso(&Preset::K22ReplacementOctahedron.build().unwrap(), &lit, limits);
}

#[test]
fn simplex_incidence_family() {
    let d = SearchLimits::default();
    let si = |n, k, r| Preset::SimplexIncidence { n, k, r }.build().unwrap();
    assert_iso(&si(4, 0, 1), &subdivision(4, &k4_edges()), d);
    assert_iso(&si(4, 0, 3), &Hypergraph::complete_bipartite(1, 4), d);
    // K_{n,n} minus a perfect matching
    let mut edges = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            if a != b {
                edges.push(vec![a, 5 + b]);
            }
        }
    }
    assert_iso(&si(5, 0, 3), &literal(10, edges), d);
    // inclusion of 2-sets in 3-sets of a 5-set
    let h = si(5, 1, 2);
    assert_eq!((h.graph().vertex_count(), h.graph().edge_count()), (20, 30));
}

#[test]
fn every_preset_passes_its_audit() {
    for p in Preset::catalogue() {
        let h = p.build().unwrap();
        let audit = h.audit();
        assert!(audit.is_empty(), "{p}: {audit:?}");
    }
}

#[test]
fn sides_match_cone_geometry() {
    for p in Preset::catalogue() {
        let h = p.build().unwrap();
        let g = h.group();
        let points: Vec<Vec<f64>> = (0..h.graph().vertex_count())
            .map(|v| {
                let part = h.vertex_part(v);
                g.act_on_point(h.representative(v), &g.cone_point(h.parts()[part].generators))
            })
            .collect();
        for (r, phi) in h.reflection_involutions().iter().enumerate() {
            for v in 0..points.len() {
                let ip = g.root_product(&points[v], r);
                let expected = if ip > 1e-9 {
                    Side::Left
                } else if ip < -1e-9 {
                    Side::Right
                } else {
                    Side::Fixed
                };
                assert_eq!(phi.sides[v], expected, "{p} root {r} vertex {v}");
            }
        }
    }
}

#[test]
fn each_closed_chamber_holds_exactly_its_edge() {
    for p in [Preset::C6, Preset::SubdividedK4, Preset::K14, Preset::Q3Hypercube, Preset::TetraFlag3Graph, Preset::MK(3)] {
        let h = p.build().unwrap();
        let g = h.group();
        let points: Vec<Vec<f64>> = (0..h.graph().vertex_count())
            .map(|v| g.act_on_point(h.representative(v), &g.cone_point(h.parts()[h.vertex_part(v)].generators)))
            .collect();
        for u in g.elements() {
            // the closed chamber uC0 is where every u(α_j) pairs nonnegatively
            let inside: Vec<usize> = (0..points.len())
                .filter(|&v| {
                    (0..g.rank()).all(|j| {
                        let (r, neg) = g.root_image(u, j);
                        let ip = g.root_product(&points[v], r);
                        (if neg { -ip } else { ip }) > -1e-9
                    })
                })
                .collect();
            let mut edge = h.graph().edges()[h.edge_of(u)].clone();
            edge.sort();
            assert_eq!(inside, edge, "{p}");
        }
    }
}

#[test]
fn reflection_graphs_are_edge_transitive() {
    for p in Preset::catalogue() {
        let h = p.build().unwrap();
        let gens: Vec<Vec<usize>> = h.reflection_involutions().into_iter().map(|phi| phi.perm).collect();
        let (transitive, orbits) = is_edge_transitive_under(h.graph(), &gens);
        assert!(transitive, "{p}: {orbits:?}");
    }
}

#[test]
fn hexagon_involution_search_matches_brute_force() {
    let c6 = Hypergraph::cycle(6);
    // brute force over all 720 permutations
    let mut autos = 0;
    let mut involutions = Vec::new();
    let mut perm: Vec<usize> = (0..6).collect();
    fn permutations(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut all = Vec::new();
    permutations(0, &mut perm, &mut all);
    for p in all {
        if c6.is_automorphism(&p) {
            autos += 1;
            if (0..6).all(|v| p[p[v]] == v) {
                involutions.push(p);
            }
        }
    }
    assert_eq!(autos, 12);
    let mut found = involutive_automorphisms(&c6, SearchLimits::default()).unwrap();
    found.sort();
    involutions.sort();
    assert_eq!(found, involutions);
    let cuts = enumerate_cut_involutions(&c6).unwrap();
    let mut fixed: Vec<Vec<usize>> = cuts.iter().map(|c| c.fixed.clone()).collect();
    fixed.sort();
    assert_eq!(fixed, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
    assert!(cuts.iter().all(|c| c.stable));
    let gens: Vec<Vec<usize>> = cuts.iter().map(|c| c.perm.clone()).collect();
    assert!(is_edge_transitive_under(&c6, &gens).0);
}

#[test]
fn three_edge_hypergraph_pivots_are_rejected() {
    let g = Hypergraph::from_adjacency_list("x b c\ny c a\nz a b\n").unwrap();
    let id = |s: &str| g.vertex_by_name(s).unwrap();
    let mut phi: Vec<usize> = (0..6).collect();
    phi.swap(id("b"), id("c"));
    phi.swap(id("y"), id("z"));
    assert!(g.is_automorphism(&phi));
    assert!(involutive_automorphisms(&g, SearchLimits::default()).unwrap().contains(&phi));
    assert!(classify(&g, phi.clone()).is_none());
    assert!(enumerate_cut_involutions(&g).unwrap().iter().all(|c| c.perm != phi));
}

#[test]
fn tensor_square_of_c4_is_a_reflection_graph() {
    let c4 = Preset::C4.build().unwrap();
    let t = c4.graph().tensor_product(c4.graph());
    assert_eq!((t.vertex_count(), t.edge_count()), (8, 16));
    let group = Arc::new(CoxeterGroup::build(&"A1xA1xA1xA1".parse().unwrap()).unwrap());
    let h = ReflectionHypergraph::build(group, &[SimpleSet::from_indices([0, 2]), SimpleSet::from_indices([1, 3])]).unwrap();
    assert!(h.audit().is_empty());
    assert!(graph_isomorphic(h.graph(), &t).unwrap().is_some());
    assert!(graph_isomorphic(&t, &Hypergraph::complete_bipartite(4, 4)).unwrap().is_some());
}

#[test]
fn disconnected_union_is_not_edge_transitive() {
    let g = Hypergraph::cycle(4).disjoint_union(&Hypergraph::cycle(6)).unwrap();
    let gens = involutive_automorphisms(&g, SearchLimits::default()).unwrap();
    assert_eq!(is_edge_transitive_under(&g, &gens).1.len(), 2);
}
