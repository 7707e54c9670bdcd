use std::collections::{HashMap, HashSet, VecDeque};

use coxnorm::coxeter::{CoxeterGroup, CoxeterSpec, SimpleSet};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn build(s: &str) -> CoxeterGroup {
    CoxeterGroup::build(&s.parse::<CoxeterSpec>().unwrap()).unwrap()
}

const SMALL_GROUPS: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D2", "D3", "D4", "I2:3", "I2:5", "I2:8", "H3", "A1xA1",
    "A1xA1xA1", "B3xA1", "A2xI2:5", "A1xA1xA1xA1",
];

/// Closure of explicit signed permutation matrices, independent of the root machinery.
fn signed_permutation_closure(gens: &[Vec<(usize, i8)>]) -> usize {
    let n = gens[0].len();
    let id: Vec<(usize, i8)> = (0..n).map(|i| (i, 1)).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let prod: Vec<(usize, i8)> = (0..n).map(|i| (g[w[i].0].0, g[w[i].0].1 * w[i].1)).collect();
            if seen.insert(prod.clone()) {
                queue.push_back(prod);
            }
        }
    }
    seen.len()
}

#[test]
fn b3_and_d3_orders_match_signed_permutation_closure() {
    // B3: swaps (0 1), (1 2) and a sign flip; D3: swaps and a paired flip-swap
    let swap = |a: usize, b: usize| -> Vec<(usize, i8)> {
        (0..3).map(|i| if i == a { (b, 1) } else if i == b { (a, 1) } else { (i, 1) }).collect()
    };
    let flip = vec![(0, -1), (1, 1), (2, 1)];
    let flip_swap = vec![(1, -1), (0, -1), (2, 1)];
    assert_eq!(signed_permutation_closure(&[swap(0, 1), swap(1, 2), flip]), 48);
    assert_eq!(signed_permutation_closure(&[swap(0, 1), swap(1, 2), flip_swap]), 24);
    assert_eq!(build("B3").order(), 48);
    assert_eq!(build("D3").order(), 24);
}

#[test]
fn i2_3_length_table() {
    let g = build("I2:3");
    let mut table: Vec<(Vec<usize>, usize)> = g.elements().map(|w| (g.word(w), g.length(w))).collect();
    table.sort();
    assert_eq!(
        table,
        vec![
            (vec![], 0),
            (vec![0], 1),
            (vec![0, 1], 2),
            (vec![0, 1, 0], 3),
            (vec![1], 1),
            (vec![1, 0], 2),
        ]
    );
    let w = g.element_from_word(&[0, 1, 0]).unwrap();
    assert_eq!(g.length(w), g.positive_root_count());
}

#[test]
fn length_equals_shortest_word_by_bfs() {
    for s in SMALL_GROUPS {
        let g = build(s);
        assert!(g.order() <= 1000);
        let mut dist: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w.index()];
            for j in 0..g.rank() {
                let ws = g.right_simple(w, j);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(ws.index()) {
                    e.insert(d + 1);
                    queue.push_back(ws);
                }
            }
        }
        assert_eq!(dist.len(), g.order(), "{s}");
        for w in g.elements() {
            assert_eq!(g.length(w), dist[&w.index()], "{s}");
            assert_eq!(g.inversion_count(w), dist[&w.index()], "{s}");
        }
        assert_eq!(g.max_length(), g.positive_root_count(), "{s}");
    }
}

fn matrix_of(g: &CoxeterGroup, w: coxnorm::coxeter::Element) -> DMatrix<f64> {
    let n = g.roots().dimension();
    let mut m = DMatrix::zeros(n, n);
    for c in 0..n {
        let mut e = vec![0.0; n];
        e[c] = 1.0;
        let img = g.act_on_point(w, &e);
        for r in 0..n {
            m[(r, c)] = img[r];
        }
    }
    m
}

#[test]
fn determinant_is_parity_of_length() {
    for s in ["A3", "B3", "H3", "I2:5", "B3xA1"] {
        let g = build(s);
        for w in g.elements() {
            let det = matrix_of(&g, w).determinant();
            assert!((det - g.determinant_sign(w) as f64).abs() < 1e-9, "{s}");
        }
        for t in g.reflections() {
            for w in g.elements() {
                let tw = g.multiply(t, w).unwrap();
                assert_ne!(g.length(tw), g.length(w));
            }
        }
    }
}

#[test]
fn exchange_direction_matches_chamber_sign() {
    for s in ["A3", "B3", "D4", "H3", "I2:7"] {
        let g = build(s);
        for (r, t) in g.reflections().into_iter().enumerate() {
            for w in g.elements() {
                let shorter = g.length(g.multiply(t, w).unwrap()) < g.length(w);
                assert_eq!(shorter, !g.chamber_of(w).signs[r], "{s}");
            }
        }
    }
}

#[test]
fn chamber_sign_vectors_are_distinct() {
    for s in SMALL_GROUPS {
        let g = build(s);
        let signs: HashSet<Vec<bool>> = g.elements().map(|w| g.chamber_of(w).signs).collect();
        assert_eq!(signs.len(), g.order(), "{s}");
    }
}

#[test]
fn i2_3_chambers_match_generic_point_sampling() {
    let g = build("I2:3");
    // a generic point of the fundamental chamber, pushed into each chamber
    let base: Vec<f64> = g.cone_point(SimpleSet::EMPTY).iter().enumerate().map(|(i, x)| x * (1.0 + 0.1 * i as f64)).collect();
    for w in g.elements() {
        let x = g.act_on_point(w, &base);
        let numeric: Vec<bool> = (0..g.positive_root_count()).map(|r| g.root_product(&x, r) > 0.0).collect();
        assert_eq!(numeric, g.chamber_of(w).signs);
    }
}

#[test]
fn cosets_partition_and_representatives_are_minimal() {
    for s in ["A3", "B3", "D3", "H3", "A1xA1xA1"] {
        let g = build(s);
        for bits in 0..(1u64 << g.rank()) {
            let subset = SimpleSet::from_bits(bits);
            let cosets = g.parabolic_cosets(subset);
            let sub_order = cosets[0].members.len();
            let mut seen = HashSet::new();
            for c in &cosets {
                assert_eq!(c.members.len(), sub_order);
                let rep_len = g.length(c.representative);
                let inv = g.inverse(c.representative);
                for &m in &c.members {
                    assert!(seen.insert(m.index()));
                    if m != c.representative {
                        assert!(g.length(m) > rep_len);
                    }
                    let q = g.multiply(inv, m).unwrap();
                    assert!(g.word(q).iter().all(|&j| subset.contains(j)));
                }
            }
            assert_eq!(seen.len(), g.order());
            // ordering by representative
            for pair in cosets.windows(2) {
                assert!(pair[0].representative.index() < pair[1].representative.index());
            }
        }
    }
}

proptest! {
    #[test]
    fn words_multiply_consistently(a in proptest::collection::vec(0usize..3, 0..12),
                                   b in proptest::collection::vec(0usize..3, 0..12)) {
        let g = build("H3");
        let wa = g.element_from_word(&a).unwrap();
        let wb = g.element_from_word(&b).unwrap();
        let mut ab = a.clone();
        ab.extend(&b);
        prop_assert_eq!(g.multiply(wa, wb).unwrap(), g.element_from_word(&ab).unwrap());
        prop_assert!(g.length(wa) <= a.len());
        prop_assert_eq!(g.length(wa), g.length(g.inverse(wa)));
        prop_assert_eq!(g.length(wa) % 2, a.len() % 2);
    }

    #[test]
    fn action_is_isometric(word in proptest::collection::vec(0usize..4, 0..16),
                           p in proptest::collection::vec(-2.0f64..2.0, 4)) {
        let g = build("F4");
        let w = g.element_from_word(&word).unwrap();
        let q = g.act_on_point(w, &p);
        let n2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        prop_assert!((n2(&p) - n2(&q)).abs() < 1e-9);
    }
}
