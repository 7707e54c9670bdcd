use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU32, Ordering};

use super::roots::{inner, RootSystem, ROOT_TOLERANCE};
use super::{CoxeterError, CoxeterSpec, SimpleSet};

static NEXT_GROUP_TAG: AtomicU32 = AtomicU32::new(1);

/// Handle to an element of a specific [`CoxeterGroup`].
///
/// The index is the element's position in the deterministic enumeration
/// (length first, then lexicographically smallest reduced word), so it is
/// stable across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    group: u32,
    index: u32,
}

impl Element {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// Open chamber `wC₀`, recorded by the side of every reflecting hyperplane it lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub element: Element,
    /// `signs[i]` is true iff `⟨x, α_i⟩ > 0` on the chamber.
    pub signs: Vec<bool>,
}

/// Left coset `w⟨I⟩` of a standard parabolic subgroup.
#[derive(Debug, Clone)]
pub struct ParabolicCoset {
    pub generators: SimpleSet,
    /// The unique minimal-length member.
    pub representative: Element,
    /// Members in enumeration order.
    pub members: Vec<Element>,
}

// Signed root reference: (positive root index << 1) | negated.
type SignedRoot = u16;

fn signed_match(roots: &RootSystem, v: &[f64]) -> Result<SignedRoot, CoxeterError> {
    let (i, neg) = roots
        .match_root(v)
        .ok_or_else(|| CoxeterError::NumericalAmbiguity("reflected root matches no root".into()))?;
    Ok(((i as SignedRoot) << 1) | neg as SignedRoot)
}

#[inline]
fn apply(perm: &[SignedRoot], r: SignedRoot) -> SignedRoot {
    perm[(r >> 1) as usize] ^ (r & 1)
}

/// A finite reflection group with every element enumerated.
///
/// Elements are signed permutations of the positive roots; after the one
/// numerical matching pass at construction all arithmetic is exact.
#[derive(Debug)]
pub struct CoxeterGroup {
    tag: u32,
    spec: CoxeterSpec,
    roots: RootSystem,
    rank: usize,
    npos: usize,
    perms: Vec<SignedRoot>,
    lengths: Vec<u16>,
    /// BFS parent and the generator appended to reach this element.
    parents: Vec<(u32, u8)>,
    index: HashMap<Box<[SignedRoot]>, u32>,
    right_simple: Vec<u32>,
    left_simple: Vec<u32>,
    inverses: Vec<u32>,
    reflections: Vec<u32>,
    reflection_root: HashMap<u32, usize>,
}

impl CoxeterGroup {
    pub fn build(spec: &CoxeterSpec) -> Result<Self, CoxeterError> {
        spec.validate()?;
        let roots = RootSystem::from_coxeter_matrix(&spec.coxeter_matrix(), ROOT_TOLERANCE)?;
        Self::from_root_system(spec.clone(), roots)
    }

    /// Builds the group generated by the reflections in an arbitrary root
    /// system (for example one supplied as explicit simple roots).
    pub fn from_root_system(spec: CoxeterSpec, roots: RootSystem) -> Result<Self, CoxeterError> {
        let rank = roots.rank();
        let npos = roots.positive_count();
        let cap = spec.order_cap;

        let mut generator_perms: Vec<Vec<SignedRoot>> = Vec::with_capacity(rank);
        for j in 0..rank {
            let perm = (0..npos)
                .map(|i| signed_match(&roots, &roots.reflect(&roots.positive_roots()[i], j)))
                .collect::<Result<Vec<_>, _>>()?;
            generator_perms.push(perm);
        }

        let identity: Vec<SignedRoot> = (0..npos as SignedRoot).map(|i| i << 1).collect();
        let mut group = CoxeterGroup {
            tag: NEXT_GROUP_TAG.fetch_add(1, Ordering::Relaxed),
            spec,
            roots,
            rank,
            npos,
            perms: identity.clone(),
            lengths: vec![0],
            parents: vec![(u32::MAX, 0)],
            index: HashMap::new(),
            right_simple: Vec::new(),
            left_simple: Vec::new(),
            inverses: Vec::new(),
            reflections: Vec::new(),
            reflection_root: HashMap::new(),
        };
        group.index.insert(identity[..rank].into(), 0);

        // Breadth-first over right multiplication by generators. Elements of
        // each level are processed in lexicographic order of their minimal
        // words and generators ascending, so first discovery yields the
        // lexicographically smallest reduced word.
        let mut current = 0usize;
        let mut key = vec![0 as SignedRoot; rank];
        while current < group.lengths.len() {
            for j in 0..rank {
                let w = &group.perms[current * npos..(current + 1) * npos];
                for (k, slot) in key.iter_mut().enumerate() {
                    *slot = apply(w, generator_perms[j][k]);
                }
                let id = match group.index.get(&key[..]) {
                    Some(&id) => id,
                    None => {
                        let id = group.lengths.len() as u32;
                        if id as u64 >= cap {
                            return Err(CoxeterError::OrderCapExceeded { cap });
                        }
                        let perm: Vec<SignedRoot> =
                            (0..npos).map(|i| apply(w, generator_perms[j][i])).collect();
                        group.perms.extend_from_slice(&perm);
                        group.lengths.push(group.lengths[current] + 1);
                        group.parents.push((current as u32, j as u8));
                        group.index.insert(key.clone().into_boxed_slice(), id);
                        id
                    }
                };
                group.right_simple.push(id);
            }
            current += 1;
        }

        let order = group.lengths.len();
        group.left_simple = vec![0; order * rank];
        group.inverses = vec![0; order];
        for w in 0..order {
            for j in 0..rank {
                let sw = group.compose_ids(group.simple_index(j), w);
                group.left_simple[w * rank + j] = sw;
            }
            let perm = group.perm(w);
            let mut inv = vec![0 as SignedRoot; npos];
            for (i, &r) in perm.iter().enumerate() {
                inv[(r >> 1) as usize] = ((i as SignedRoot) << 1) | (r & 1);
            }
            group.inverses[w] = group.lookup(&inv[..rank]).expect("inverse is enumerated");
        }

        for r in 0..npos {
            let perm = (0..npos)
                .map(|i| signed_match(&group.roots, &group.roots.reflect(&group.roots.positive_roots()[i], r)))
                .collect::<Result<Vec<_>, _>>()?;
            let id = group.lookup(&perm[..rank]).ok_or_else(|| {
                CoxeterError::NumericalAmbiguity("root reflection is not a group element".into())
            })?;
            group.reflections.push(id);
            group.reflection_root.insert(id, r);
        }
        Ok(group)
    }

    fn perm(&self, w: usize) -> &[SignedRoot] {
        &self.perms[w * self.npos..(w + 1) * self.npos]
    }

    fn lookup(&self, simple_images: &[SignedRoot]) -> Option<u32> {
        self.index.get(simple_images).copied()
    }

    fn simple_index(&self, j: usize) -> usize {
        self.right_simple[j] as usize
    }

    fn compose_ids(&self, a: usize, b: usize) -> u32 {
        let (pa, pb) = (self.perm(a), self.perm(b));
        let mut key = [0 as SignedRoot; 64];
        for k in 0..self.rank {
            key[k] = apply(pa, pb[k]);
        }
        self.lookup(&key[..self.rank]).expect("group is closed under composition")
    }

    fn elem(&self, index: u32) -> Element {
        Element { group: self.tag, index }
    }

    fn check(&self, e: Element) -> usize {
        assert_eq!(e.group, self.tag, "element belongs to a different group");
        e.index as usize
    }

    pub fn spec(&self) -> &CoxeterSpec {
        &self.spec
    }
    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn order(&self) -> usize {
        self.lengths.len()
    }
    pub fn positive_root_count(&self) -> usize {
        self.npos
    }

    pub fn contains(&self, e: Element) -> bool {
        e.group == self.tag
    }

    pub fn identity(&self) -> Element {
        self.elem(0)
    }

    /// Element at position `index` of the enumeration.
    pub fn element(&self, index: usize) -> Element {
        assert!(index < self.order());
        self.elem(index as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as u32).map(|i| self.elem(i))
    }

    pub fn simple_reflection(&self, j: usize) -> Result<Element, CoxeterError> {
        if j >= self.rank {
            return Err(CoxeterError::IndexOutOfRange { index: j, rank: self.rank });
        }
        Ok(self.elem(self.right_simple[j]))
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯`.
    pub fn element_from_word(&self, word: &[usize]) -> Result<Element, CoxeterError> {
        let mut id = 0u32;
        for &j in word {
            if j >= self.rank {
                return Err(CoxeterError::IndexOutOfRange { index: j, rank: self.rank });
            }
            id = self.right_simple[id as usize * self.rank + j];
        }
        Ok(self.elem(id))
    }

    /// Composition `a ∘ b` acting on roots.
    pub fn multiply(&self, a: Element, b: Element) -> Result<Element, CoxeterError> {
        if a.group != self.tag || b.group != self.tag {
            return Err(CoxeterError::MixedGroups);
        }
        Ok(self.elem(self.compose_ids(a.index as usize, b.index as usize)))
    }

    pub fn inverse(&self, w: Element) -> Element {
        self.elem(self.inverses[self.check(w)])
    }

    /// `s_j w`.
    pub fn left_simple(&self, j: usize, w: Element) -> Element {
        self.elem(self.left_simple[self.check(w) * self.rank + j])
    }

    /// `w s_j`.
    pub fn right_simple(&self, w: Element, j: usize) -> Element {
        self.elem(self.right_simple[self.check(w) * self.rank + j])
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: Element) -> usize {
        self.lengths[self.check(w)] as usize
    }

    /// Same as [`length`](Self::length) but recomputed from the signed permutation.
    pub fn inversion_count(&self, w: Element) -> usize {
        self.perm(self.check(w)).iter().filter(|&&r| r & 1 == 1).count()
    }

    pub fn max_length(&self) -> usize {
        *self.lengths.last().unwrap() as usize
    }

    pub fn longest_element(&self) -> Element {
        self.elem(self.order() as u32 - 1)
    }

    /// Lexicographically smallest reduced word.
    pub fn word(&self, w: Element) -> Vec<usize> {
        let mut id = self.check(w);
        let mut word = Vec::with_capacity(self.lengths[id] as usize);
        while id != 0 {
            let (parent, j) = self.parents[id];
            word.push(j as usize);
            id = parent as usize;
        }
        word.reverse();
        word
    }

    /// `w(α_i)` as (positive root index, negated).
    pub fn root_image(&self, w: Element, i: usize) -> (usize, bool) {
        let r = self.perm(self.check(w))[i];
        ((r >> 1) as usize, r & 1 == 1)
    }

    /// All reflections, indexed by their positive root.
    pub fn reflections(&self) -> Vec<Element> {
        self.reflections.iter().map(|&r| self.elem(r)).collect()
    }

    pub fn reflection_for_root(&self, root: usize) -> Element {
        self.elem(self.reflections[root])
    }

    /// Positive root whose hyperplane `w` reflects in, if `w` is a reflection.
    pub fn reflection_root(&self, w: Element) -> Option<usize> {
        self.reflection_root.get(&(self.check(w) as u32)).copied()
    }

    /// Open chamber `wC₀`: the side of `H_α` is positive iff `w⁻¹(α) ∈ Φ⁺`.
    pub fn chamber_of(&self, w: Element) -> Chamber {
        let inv = self.inverse(w);
        let p = self.perm(inv.index());
        Chamber { element: w, signs: p.iter().map(|&r| r & 1 == 0).collect() }
    }

    /// Applies `w` to a point, exactly in terms of its action on simple roots.
    pub fn act_on_point(&self, w: Element, point: &[f64]) -> Vec<f64> {
        let c = self
            .roots
            .simple_coefficients(point)
            .expect("point must lie in the span of the simple roots");
        let mut out = vec![0.0; self.roots.dimension()];
        for (j, cj) in c.iter().enumerate() {
            let (i, neg) = self.root_image(w, j);
            let s = if neg { -cj } else { *cj };
            for (o, x) in out.iter_mut().zip(&self.roots.positive_roots()[i]) {
                *o += s * x;
            }
        }
        out
    }

    /// A point of the cone `C(I)`: on every mirror of `I`, at unit height
    /// above the remaining simple mirrors.
    pub fn cone_point(&self, subset: SimpleSet) -> Vec<f64> {
        let values: Vec<f64> = (0..self.rank).map(|j| if subset.contains(j) { 0.0 } else { 1.0 }).collect();
        self.roots.point_with_simple_products(&values)
    }

    /// Sign of `⟨w·p_I, α_root⟩` where `p_I` is any point of `C(I)`:
    /// `Some(true)` positive, `Some(false)` negative, `None` when `w C(I)`
    /// lies in the hyperplane. Computed combinatorially from the support of
    /// `w⁻¹(α)`.
    pub fn cone_side(&self, w: Element, subset: SimpleSet, root: usize) -> Option<bool> {
        let (r, neg) = self.root_image(self.inverse(w), root);
        if self.roots.support(r) & !subset.bits() == 0 {
            None
        } else {
            Some(!neg)
        }
    }

    /// Numeric inner product `⟨x, α_root⟩`.
    pub fn root_product(&self, x: &[f64], root: usize) -> f64 {
        inner(x, &self.roots.positive_roots()[root])
    }

    /// Order of the standard parabolic subgroup `⟨I⟩`.
    pub fn parabolic_order(&self, subset: SimpleSet) -> usize {
        self.coset_partition(subset).1[0].members.len()
    }

    /// Left cosets `w⟨I⟩` in enumeration order of their minimal
    /// representatives, together with the coset index of every element.
    pub fn coset_partition(&self, subset: SimpleSet) -> (Vec<u32>, Vec<ParabolicCoset>) {
        let order = self.order();
        let mut owner = vec![u32::MAX; order];
        let mut cosets = Vec::new();
        let gens: Vec<usize> = subset.iter().filter(|&j| j < self.rank).collect();
        let mut queue = VecDeque::new();
        for start in 0..order {
            if owner[start] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            owner[start] = idx;
            let mut members = vec![start];
            queue.push_back(start);
            while let Some(w) = queue.pop_front() {
                for &j in &gens {
                    let ws = self.right_simple[w * self.rank + j] as usize;
                    if owner[ws] == u32::MAX {
                        owner[ws] = idx;
                        members.push(ws);
                        queue.push_back(ws);
                    }
                }
            }
            members.sort_unstable();
            cosets.push(ParabolicCoset {
                generators: subset,
                representative: self.elem(start as u32),
                members: members.into_iter().map(|m| self.elem(m as u32)).collect(),
            });
        }
        (owner, cosets)
    }

    pub fn parabolic_cosets(&self, subset: SimpleSet) -> Vec<ParabolicCoset> {
        self.coset_partition(subset).1
    }

    /// Sign of the determinant, `(-1)^ℓ(w)`.
    pub fn determinant_sign(&self, w: Element) -> i8 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Component;

    fn build(s: &str) -> CoxeterGroup {
        CoxeterGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_group_orders() {
        let a3 = build("A3");
        assert_eq!((a3.order(), a3.positive_root_count(), a3.rank()), (24, 6, 3));
        let i23 = build("I2:3");
        assert_eq!((i23.order(), i23.rank()), (6, 2));
        assert_eq!(build("B3").order(), 48);
        assert_eq!(build("D3").order(), 24);
        assert_eq!(build("H3").order(), 120);
        assert_eq!(build("F4").order(), 1152);
        assert_eq!(build("B3xA1").order(), 96);
    }

    #[test]
    fn words_and_lengths() {
        let g = build("I2:3");
        let e = g.element_from_word(&[]).unwrap();
        assert_eq!(e, g.identity());
        assert_eq!(g.length(e), 0);
        for j in 0..2 {
            assert_eq!(g.length(g.element_from_word(&[j]).unwrap()), 1);
        }
        let w0 = g.element_from_word(&[0, 1, 0]).unwrap();
        assert_eq!(g.length(w0), 3);
        assert_eq!(w0, g.longest_element());
        assert_eq!(g.element_from_word(&[1, 0, 1]).unwrap(), w0);
        assert_eq!(g.word(w0), vec![0, 1, 0]);
        assert!(matches!(
            g.element_from_word(&[2]),
            Err(CoxeterError::IndexOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn element_words_are_lexicographically_minimal() {
        let g = build("A3");
        let words: Vec<Vec<usize>> = g.elements().map(|w| g.word(w)).collect();
        for pair in words.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
        // no other reduced word of any element is lexicographically smaller
        fn all_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
            if len == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for w in all_words(rank, len - 1) {
                for j in 0..rank {
                    let mut v = w.clone();
                    v.push(j);
                    out.push(v);
                }
            }
            out
        }
        for len in 0..=4 {
            for w in all_words(3, len) {
                let e = g.element_from_word(&w).unwrap();
                if g.length(e) == len {
                    assert!(g.word(e) <= w);
                }
            }
        }
    }

    #[test]
    fn multiply_identities() {
        let g = build("B3");
        let e = g.identity();
        for w in g.elements() {
            assert_eq!(g.multiply(e, w).unwrap(), w);
            assert_eq!(g.multiply(w, g.inverse(w)).unwrap(), e);
        }
        for j in 0..3 {
            let s = g.simple_reflection(j).unwrap();
            assert_eq!(g.multiply(s, s).unwrap(), e);
        }
        let other = build("B3");
        assert_eq!(g.multiply(e, other.identity()), Err(CoxeterError::MixedGroups));
    }

    #[test]
    fn multiply_matches_words() {
        let g = build("H3");
        for a in g.elements().step_by(7) {
            for b in g.elements().step_by(11) {
                let mut word = g.word(a);
                word.extend(g.word(b));
                assert_eq!(g.multiply(a, b).unwrap(), g.element_from_word(&word).unwrap());
            }
        }
    }

    #[test]
    fn longest_element_of_a3() {
        let g = build("A3");
        assert_eq!(g.max_length(), 6);
        assert_eq!(g.length(g.longest_element()), 6);
    }

    #[test]
    fn reflections_flip_their_own_root() {
        let g = build("B3");
        assert_eq!(g.reflections().len(), 9);
        for (r, t) in g.reflections().into_iter().enumerate() {
            assert_eq!(g.reflection_root(t), Some(r));
            assert_eq!(g.root_image(t, r), (r, true));
            assert_eq!(g.multiply(t, t).unwrap(), g.identity());
            assert_eq!(g.length(t) % 2, 1);
        }
        assert_eq!(g.reflection_root(g.identity()), None);
    }

    #[test]
    fn chambers() {
        let g = build("A3");
        let c0 = g.chamber_of(g.identity());
        assert!(c0.signs.iter().all(|&s| s));
        for j in 0..3 {
            let c = g.chamber_of(g.simple_reflection(j).unwrap());
            for k in 0..3 {
                assert_eq!(c.signs[k], k != j);
            }
        }
    }

    #[test]
    fn cosets_examples() {
        let g = build("A3");
        let cosets = g.parabolic_cosets(SimpleSet::from_indices([1, 2]));
        assert_eq!(cosets.len(), 4);
        assert!(cosets.iter().all(|c| c.members.len() == 6));
        assert_eq!(g.parabolic_cosets(SimpleSet::full(3)).len(), 1);
        assert_eq!(g.parabolic_cosets(SimpleSet::EMPTY).len(), 24);
    }

    #[test]
    fn cone_side_agrees_with_geometry() {
        let g = build("B3");
        for subset in [SimpleSet::from_indices([0, 1]), SimpleSet::from_indices([2]), SimpleSet::EMPTY] {
            let p = g.cone_point(subset);
            for w in g.elements() {
                let x = g.act_on_point(w, &p);
                for r in 0..g.positive_root_count() {
                    let ip = g.root_product(&x, r);
                    match g.cone_side(w, subset, r) {
                        None => assert!(ip.abs() < 1e-9),
                        Some(true) => assert!(ip > 1e-9),
                        Some(false) => assert!(ip < -1e-9),
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_simple_roots_build() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let roots = RootSystem::from_simple_roots(
            vec![vec![s, -s, 0.0], vec![0.0, s, -s]],
            ROOT_TOLERANCE,
        )
        .unwrap();
        let spec = CoxeterSpec::new(vec![Component::a(2)]);
        let g = CoxeterGroup::from_root_system(spec, roots).unwrap();
        assert_eq!(g.order(), 6);
        let y = g.act_on_point(g.longest_element(), &[1.0, 0.0, -1.0]);
        assert!((y[0] + 1.0).abs() < 1e-12 && (y[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn order_cap_stops_custom_enumeration() {
        let spec = CoxeterSpec::new(vec![Component::custom(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]])])
            .with_order_cap(10);
        assert_eq!(CoxeterGroup::build(&spec).unwrap_err(), CoxeterError::OrderCapExceeded { cap: 10 });
    }
}
