use std::collections::{HashMap, VecDeque};

use crate::coxeter::{CoxeterGroup, Element};
use crate::refgraph::Sign;

use super::PercolationError;

/// `t₊w = tw` when that shortens `w`, else `w`; `t₋` uses the opposite test.
pub fn signed_reflect(group: &CoxeterGroup, t: Element, w: Element, sign: Sign) -> Element {
    let tw = group.multiply(t, w).expect("same group");
    let shorter = group.length(tw) < group.length(w);
    match (sign, shorter) {
        (Sign::Plus, true) | (Sign::Minus, false) => tw,
        _ => w,
    }
}

/// `K^±(t) = {w : t±w ∈ K}` with `K` given as a membership table over element ids.
pub fn fold_word_set(group: &CoxeterGroup, k: &[bool], t: Element, sign: Sign) -> Result<Vec<bool>, PercolationError> {
    if group.reflection_root(t).is_none() {
        return Err(PercolationError::NotAReflection);
    }
    Ok(group.elements().map(|w| k[signed_reflect(group, t, w, sign).index()]).collect())
}

/// The constructive schedule: for each length level, fold once with every
/// simple reflection in index order, always with sign `+`.
pub fn canonical_schedule(group: &CoxeterGroup) -> Vec<(Element, Sign)> {
    let mut steps = Vec::with_capacity(group.rank() * group.max_length());
    for _level in 0..group.max_length() {
        for j in 0..group.rank() {
            steps.push((group.simple_reflection(j).expect("in range"), Sign::Plus));
        }
    }
    steps
}

/// `K_0 = {e}, K_1, …, K_N` under the given folds.
pub fn replay_on_group(group: &CoxeterGroup, steps: &[(Element, Sign)]) -> Result<Vec<Vec<bool>>, PercolationError> {
    let mut k = vec![false; group.order()];
    k[0] = true;
    let mut trace = vec![k];
    for &(t, sign) in steps {
        let next = fold_word_set(group, trace.last().unwrap(), t, sign)?;
        trace.push(next);
    }
    Ok(trace)
}

/// Closed under taking shorter prefixes: `w ∈ K` and `ℓ(sw) < ℓ(w)` give `sw ∈ K`.
pub fn is_stack(group: &CoxeterGroup, k: &[bool]) -> bool {
    group.elements().all(|w| {
        !k[w.index()]
            || (0..group.rank()).all(|j| {
                let sw = group.left_simple(j, w);
                group.length(sw) > group.length(w) || k[sw.index()]
            })
    })
}

pub const EXPLORATION_ORDER_CAP: usize = 48;

/// Breadth-first search for a shortest fold sequence taking `{e}` to `W`,
/// over all reflections and both signs. Exploration only; `None` when the
/// node budget runs out first.
pub fn shortest_percolating_sequence(
    group: &CoxeterGroup,
    max_states: usize,
) -> Result<Option<Vec<(Element, Sign)>>, PercolationError> {
    let n = group.order();
    if n > EXPLORATION_ORDER_CAP {
        return Err(PercolationError::ExplorationCap { order: n, cap: EXPLORATION_ORDER_CAP });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let moves: Vec<(Element, Sign, Vec<usize>)> = group
        .reflections()
        .into_iter()
        .flat_map(|t| [Sign::Plus, Sign::Minus].map(|s| (t, s)))
        .map(|(t, s)| {
            let image = group.elements().map(|w| signed_reflect(group, t, w, s).index()).collect();
            (t, s, image)
        })
        .collect();
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([1u64]);
    parent.insert(1u64, (0, usize::MAX));
    while let Some(state) = queue.pop_front() {
        if state == full {
            let mut path = Vec::new();
            let mut cur = state;
            while cur != 1 {
                let (prev, m) = parent[&cur];
                path.push((moves[m].0, moves[m].1));
                cur = prev;
            }
            path.reverse();
            return Ok(Some(path));
        }
        for (m, (_, _, image)) in moves.iter().enumerate() {
            let mut next = 0u64;
            for (w, &tw) in image.iter().enumerate() {
                if state >> tw & 1 == 1 {
                    next |= 1 << w;
                }
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert((state, m));
                queue.push_back(next);
            }
        }
        if parent.len() > max_states {
            return Ok(None);
        }
    }
    Ok(None)
}
