use num_complex::Complex64;

use crate::refgraph::{Hypergraph, ReflectionHypergraph};

use super::{ColoredFamily, KernelError, Scalar, StepKernel};

/// Largest number of vertex assignments (or elimination table cells) evaluated.
pub const WORK_CAP: u64 = 100_000_000;

pub const IMAGINARY_TOL: f64 = 1e-9;

fn check_family<T: Scalar>(h: &Hypergraph, family: &ColoredFamily<T>) -> Result<(), KernelError> {
    if family.coloring().len() != h.edge_count() {
        return Err(KernelError::Shape(format!(
            "colouring has {} entries for {} edges",
            family.coloring().len(),
            h.edge_count()
        )));
    }
    if h.edge_count() > 0 && family.arity() != h.arity() {
        return Err(KernelError::Shape(format!("kernel arity {} on a {}-graph", family.arity(), h.arity())));
    }
    Ok(())
}

fn work(n: usize, vars: usize) -> Option<u64> {
    (n as u64).checked_pow(vars as u32)
}

/// `⟨F;χ⟩_H` as the mean over all `n^{|V|}` vertex assignments.
pub fn colored_density_brute<T: Scalar>(h: &Hypergraph, family: &ColoredFamily<T>) -> Result<T, KernelError> {
    check_family(h, family)?;
    let n = family.resolution();
    let nv = h.vertex_count();
    let total = work(n, nv).filter(|&w| w <= WORK_CAP).ok_or(KernelError::WorkCapExceeded { cap: WORK_CAP })?;
    if nv == 0 {
        return Ok(T::one());
    }
    // edges grouped by their last vertex, so partial products close early
    let mut closers: Vec<Closers<T>> = vec![Vec::new(); nv];
    for (e, verts) in h.edges().iter().enumerate() {
        let k = verts.len();
        let pairs = verts.iter().enumerate().map(|(j, &v)| (v, n.pow((k - 1 - j) as u32))).collect();
        closers[*verts.iter().max().unwrap()].push((family.kernel_for(e).values(), pairs));
    }
    let mut a = vec![0usize; nv];
    let sum = walk(0, n, &mut a, T::one(), &closers);
    Ok(sum.scale(1.0 / total as f64))
}

type Closers<'a, T> = Vec<(&'a [T], Vec<(usize, usize)>)>;

fn level_value<T: Scalar>(closers: &Closers<T>, a: &[usize]) -> T {
    let mut p = T::one();
    for (table, pairs) in closers {
        let idx: usize = pairs.iter().map(|&(v, s)| a[v] * s).sum();
        p *= table[idx];
    }
    p
}

fn walk<T: Scalar>(level: usize, n: usize, a: &mut [usize], prefix: T, closers: &[Closers<T>]) -> T {
    let mut s = T::zero();
    if level + 1 == a.len() {
        for x in 0..n {
            a[level] = x;
            s += level_value(&closers[level], a);
        }
        return prefix * s;
    }
    for x in 0..n {
        a[level] = x;
        let p = prefix * level_value(&closers[level], a);
        s += walk(level + 1, n, a, p, closers);
    }
    s
}

struct Factor<T> {
    scope: Vec<usize>,
    table: Vec<T>,
}

/// `⟨F;χ⟩_H` by variable elimination along a greedy minimum-degree order.
pub fn colored_density<T: Scalar>(h: &Hypergraph, family: &ColoredFamily<T>) -> Result<T, KernelError> {
    check_family(h, family)?;
    let n = family.resolution();
    let nv = h.vertex_count();
    let mut factors: Vec<Factor<T>> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(e, verts)| Factor { scope: verts.clone(), table: family.kernel_for(e).values().to_vec() })
        .collect();
    let mut alive = vec![true; nv];
    let inv_n = 1.0 / n as f64;
    loop {
        // choose the live vertex whose neighbourhood is smallest
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in (0..nv).filter(|&v| alive[v]) {
            let mut nb: Vec<usize> = factors
                .iter()
                .filter(|f| f.scope.contains(&v))
                .flat_map(|f| f.scope.iter().copied())
                .filter(|&u| u != v)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            if best.as_ref().is_none_or(|(_, b)| nb.len() < b.len()) {
                best = Some((v, nb));
            }
        }
        let Some((v, nb)) = best else { break };
        alive[v] = false;
        let (touching, rest): (Vec<Factor<T>>, Vec<Factor<T>>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        if touching.is_empty() {
            continue;
        }
        if work(n, nb.len() + 1).is_none_or(|w| w > WORK_CAP) {
            return Err(KernelError::WorkCapExceeded { cap: WORK_CAP });
        }
        factors.push(eliminate(&touching, v, &nb, n, inv_n));
    }
    let mut value = T::one();
    for f in factors {
        value *= f.table[0];
    }
    Ok(value)
}

/// Mean over `x_v` of the product of `touching`, as a table over `nb`.
fn eliminate<T: Scalar>(touching: &[Factor<T>], v: usize, nb: &[usize], n: usize, inv_n: f64) -> Factor<T> {
    // position of each variable in the joint order nb ++ [v]
    let joint: Vec<usize> = nb.iter().copied().chain([v]).collect();
    let m = joint.len();
    // for each factor, stride contributed by each joint variable
    let strides: Vec<Vec<usize>> = touching
        .iter()
        .map(|f| {
            let k = f.scope.len();
            joint
                .iter()
                .map(|u| f.scope.iter().position(|w| w == u).map_or(0, |p| n.pow((k - 1 - p) as u32)))
                .collect()
        })
        .collect();
    let out_len = n.pow(nb.len() as u32);
    let mut table = vec![T::zero(); out_len];
    let mut idx = vec![0usize; m];
    let mut offsets = vec![0usize; touching.len()];
    let total = out_len * n;
    for cell in 0..total {
        let mut p = T::one();
        for (f, &o) in touching.iter().zip(&offsets) {
            p *= f.table[o];
        }
        table[cell / n] += p;
        // odometer increment with incremental offsets
        for d in (0..m).rev() {
            idx[d] += 1;
            for (o, s) in offsets.iter_mut().zip(&strides) {
                *o += s[d];
            }
            if idx[d] < n {
                break;
            }
            for (o, s) in offsets.iter_mut().zip(&strides) {
                *o -= s[d] * n;
            }
            idx[d] = 0;
        }
    }
    for t in table.iter_mut() {
        *t = t.scale(inv_n);
    }
    Factor { scope: nb.to_vec(), table }
}

/// `t_H(f)`.
pub fn density<T: Scalar>(h: &Hypergraph, f: &StepKernel<T>) -> Result<T, KernelError> {
    colored_density(h, &ColoredFamily::monochromatic(f.clone(), h.edge_count()))
}

pub fn density_brute<T: Scalar>(h: &Hypergraph, f: &StepKernel<T>) -> Result<T, KernelError> {
    colored_density_brute(h, &ColoredFamily::monochromatic(f.clone(), h.edge_count()))
}

/// `|t_H(f)|^{1/|E|}`.
pub fn graph_norm(h: &Hypergraph, f: &StepKernel<f64>) -> Result<f64, KernelError> {
    Ok(density(h, f)?.abs().powf(1.0 / h.edge_count() as f64))
}

/// `t_H(|f|)^{1/|E|}`.
pub fn abs_graph_norm(h: &Hypergraph, f: &StepKernel<f64>) -> Result<f64, KernelError> {
    Ok(density(h, &f.abs())?.powf(1.0 / h.edge_count() as f64))
}

/// Complex density conjugating `f` on edges whose chamber has odd length.
pub fn complex_density(h: &ReflectionHypergraph, f: &StepKernel<Complex64>) -> Result<Complex64, KernelError> {
    if !h.is_stable_family() {
        return Err(KernelError::NotStableFamily);
    }
    let group = h.group();
    let coloring: Vec<usize> = (0..h.graph().edge_count())
        .map(|e| {
            let w = h.edge_elements(e)[0];
            group.length(w) % 2
        })
        .collect();
    let family = ColoredFamily::new(vec![f.clone(), f.conj()], coloring)?;
    colored_density(h.graph(), &family)
}

/// `|Re ∫…|^{1/|E|}` after checking the imaginary part vanishes.
pub fn complex_graph_norm(h: &ReflectionHypergraph, f: &StepKernel<Complex64>) -> Result<f64, KernelError> {
    let z = complex_density(h, f)?;
    if z.im.abs() >= IMAGINARY_TOL {
        return Err(KernelError::ImaginaryResidue { residue: z.im });
    }
    Ok(z.re.abs().powf(1.0 / h.graph().edge_count() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refgraph::Preset;

    #[test]
    fn constant_kernels() {
        let h = Hypergraph::cycle(4);
        let f = StepKernel::constant(2, 3, 0.5);
        assert!((density(&h, &f).unwrap() - 0.0625).abs() < 1e-15);
        assert!((density_brute(&h, &f).unwrap() - 0.0625).abs() < 1e-15);
        assert!((graph_norm(&h, &f).unwrap() - 0.5).abs() < 1e-15);
        assert!((abs_graph_norm(&h, &f.scaled(-1.0)).unwrap() - 0.5).abs() < 1e-15);
        let ones = ColoredFamily::new(vec![StepKernel::constant(2, 2, 1.0); 2], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(colored_density_brute(&h, &ones).unwrap(), 1.0);
    }

    #[test]
    fn identity_blocks_on_four_cycle() {
        let h = Hypergraph::cycle(4);
        let f = StepKernel::symmetric(2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(density_brute(&h, &f).unwrap(), 0.125);
        assert_eq!(density(&h, &f).unwrap(), 0.125);
    }

    #[test]
    fn brute_matches_elimination_on_paths_and_isolated_vertices() {
        let h = Hypergraph::new((0..4).map(|i| i.to_string()).collect(), vec![vec![0, 2], vec![2, 1]], 2).unwrap();
        let f = StepKernel::new(2, 3, (0..9).map(|i| (i as f64 * 0.37).sin()).collect()).unwrap();
        let a = density_brute(&h, &f).unwrap();
        let b = density(&h, &f).unwrap();
        assert!((a - b).abs() < 1e-14);
        // path with two edges: mean over the middle vertex of (column mean)·(row mean)
        let mut oracle = 0.0;
        for x in 0..3 {
            let col: f64 = (0..3).map(|i| f.get(&[i, x])).sum::<f64>() / 3.0;
            let row: f64 = (0..3).map(|j| f.get(&[x, j])).sum::<f64>() / 3.0;
            oracle += col * row / 3.0;
        }
        assert!((a - oracle).abs() < 1e-14);
    }

    #[test]
    fn work_cap() {
        let h = Hypergraph::path(12);
        let f = StepKernel::constant(2, 5, 1.0);
        assert_eq!(density_brute(&h, &f), Err(KernelError::WorkCapExceeded { cap: WORK_CAP }));
        assert!((density(&h, &f).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_constant_imaginary() {
        let h = Preset::C4.build().unwrap();
        let f = StepKernel::constant(2, 2, Complex64::new(0.0, 0.7));
        assert!((complex_graph_norm(&h, &f).unwrap() - 0.7).abs() < 1e-12);
        let k14 = Preset::K14.build().unwrap();
        assert_eq!(complex_graph_norm(&k14, &f), Err(KernelError::NotStableFamily));
    }
}
