use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{KernelError, StepKernel};

pub const CUT_RESOLUTION_CAP: usize = 16;
/// Exact hypergraph cut norm: total test-function cells allowed.
pub const CUT_CELL_CAP: usize = 24;
pub const ASCENT_STARTS: usize = 32;

/// `sup |∫ f(x,y) u(x) v(y)|` over `u, v: [0,1] → [−1,1]`. The optimum sits at
/// `±1` vertex values; for each `u` the best `v` is the sign of the row sums.
pub fn cut_norm_exact(f: &StepKernel<f64>) -> Result<f64, KernelError> {
    if f.arity() != 2 {
        return Err(KernelError::Shape("cut norm needs a 2-ary kernel".into()));
    }
    let n = f.resolution();
    if n > CUT_RESOLUTION_CAP {
        return Err(KernelError::ResolutionCap { n, cap: CUT_RESOLUTION_CAP });
    }
    let vals = f.values();
    let mut best = 0.0f64;
    let mut r = vec![0.0; n];
    // u and −u give the same value, so fix u_0 = +1
    for mask in 0..(1u32 << (n - 1)) {
        r.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..n {
            let sign = if i > 0 && mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
            for (rj, &fij) in r.iter_mut().zip(&vals[i * n..(i + 1) * n]) {
                *rj += sign * fij;
            }
        }
        best = best.max(r.iter().map(|x| x.abs()).sum());
    }
    Ok(best / (n * n) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    Exact,
    /// Coordinate ascent from [`ASCENT_STARTS`] seeded starts; a lower bound.
    Ascent { seed: u64 },
}

struct Blocks {
    /// `cell[b][x]`: cell of block `b` hit by grid point `x`.
    cell: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

fn blocks(f: &StepKernel<f64>, m: &[Vec<usize>]) -> Result<Blocks, KernelError> {
    let (k, n) = (f.arity(), f.resolution());
    for block in m {
        if let Some(&i) = block.iter().find(|&&i| i >= k) {
            return Err(KernelError::Shape(format!("coordinate {i} out of range for arity {k}")));
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != block.len() {
            return Err(KernelError::Shape("block repeats a coordinate".into()));
        }
    }
    let points = f.values().len();
    let mut cell = vec![vec![0usize; points]; m.len()];
    let mut coords = vec![0usize; k];
    for x in 0..points {
        let mut rem = x;
        for d in (0..k).rev() {
            coords[d] = rem % n;
            rem /= n;
        }
        for (b, block) in m.iter().enumerate() {
            cell[b][x] = block.iter().fold(0, |acc, &i| acc * n + coords[i]);
        }
    }
    Ok(Blocks { cell, sizes: m.iter().map(|b| n.pow(b.len() as u32)).collect() })
}

/// Partial contraction for block `b`: `g(c) = Σ_{x in cell c} f(x) Π_{j≠b} u_j(x)`.
fn contraction(f: &[f64], bl: &Blocks, u: &[Vec<f64>], b: usize) -> Vec<f64> {
    let mut g = vec![0.0; bl.sizes[b]];
    for (x, &fx) in f.iter().enumerate() {
        let mut p = fx;
        for (j, uj) in u.iter().enumerate() {
            if j != b {
                p *= uj[bl.cell[j][x]];
            }
        }
        g[bl.cell[b][x]] += p;
    }
    g
}

/// `sup |∫ f(x) Π_i u_i(x_{M_i})|` over `u_i: [0,1]^{|M_i|} → [−1,1]`, with
/// 0-indexed coordinate blocks `m`.
pub fn hypergraph_cut_norm(f: &StepKernel<f64>, m: &[Vec<usize>], mode: CutMode) -> Result<f64, KernelError> {
    let bl = blocks(f, m)?;
    let vals = f.values();
    let volume = vals.len() as f64;
    if m.is_empty() {
        return Ok(vals.iter().sum::<f64>().abs() / volume);
    }
    let last = m.len() - 1;
    match mode {
        CutMode::Exact => {
            let cells: usize = bl.sizes.iter().sum();
            if cells > CUT_CELL_CAP {
                return Err(KernelError::ResolutionCap { n: cells, cap: CUT_CELL_CAP });
            }
            // every block but the last ranges over sign tables; the last one
            // then contributes the l1 norm of its contraction
            let free: usize = bl.sizes[..last].iter().sum();
            let mut u: Vec<Vec<f64>> = bl.sizes.iter().map(|&s| vec![1.0; s]).collect();
            let mut best = 0.0f64;
            for mask in 0..(1u64 << free) {
                let mut bit = 0;
                for table in u.iter_mut().take(last) {
                    for x in table.iter_mut() {
                        *x = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
                        bit += 1;
                    }
                }
                let g = contraction(vals, &bl, &u, last);
                best = best.max(g.iter().map(|x| x.abs()).sum());
            }
            Ok(best / volume)
        }
        CutMode::Ascent { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = 0.0f64;
            for _ in 0..ASCENT_STARTS {
                let mut u: Vec<Vec<f64>> = bl
                    .sizes
                    .iter()
                    .map(|&s| (0..s).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect())
                    .collect();
                let mut value = f64::NEG_INFINITY;
                loop {
                    for b in 0..m.len() {
                        let g = contraction(vals, &bl, &u, b);
                        u[b] = g.iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }).collect();
                    }
                    let g = contraction(vals, &bl, &u, last);
                    let next: f64 = g.iter().zip(&u[last]).map(|(a, b)| a * b).sum();
                    if next <= value + 1e-15 {
                        break;
                    }
                    value = next;
                }
                best = best.max(value.abs());
            }
            Ok(best / volume)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let f = StepKernel::constant(2, 4, -0.3);
        assert!((cut_norm_exact(&f).unwrap() - 0.3).abs() < 1e-15);
        let g = StepKernel::constant(3, 2, 0.8);
        for mode in [CutMode::Exact, CutMode::Ascent { seed: 1 }] {
            let v = hypergraph_cut_norm(&g, &[vec![0], vec![1, 2]], mode).unwrap();
            assert!((v - 0.8).abs() < 1e-15);
        }
    }

    #[test]
    fn rank_one_block_kernel() {
        // f = a(x) b(y) with ±1 blocks of masses 3/5 and 2/5
        let n = 5;
        let a = [1.0, 1.0, 1.0, -1.0, -1.0];
        let b = [1.0, 1.0, -1.0, -1.0, -1.0];
        let f = StepKernel::from_fn(2, n, |i| 0.5 * a[i[0]] * b[i[1]]).unwrap();
        assert!((cut_norm_exact(&f).unwrap() - 0.5).abs() < 1e-15);
        let g = StepKernel::from_fn(2, n, |i| if i[0] < 3 && i[1] < 2 { 1.0 } else { 0.0 }).unwrap();
        assert!((cut_norm_exact(&g).unwrap() - 0.6 * 0.4).abs() < 1e-15);
    }

    #[test]
    fn graph_case_agrees() {
        let f = StepKernel::new(2, 4, (0..16).map(|i| ((i * 7 % 11) as f64 - 5.0) / 5.0).collect()).unwrap();
        let exact = cut_norm_exact(&f).unwrap();
        let m = [vec![0], vec![1]];
        assert!((hypergraph_cut_norm(&f, &m, CutMode::Exact).unwrap() - exact).abs() < 1e-15);
        assert!(hypergraph_cut_norm(&f, &m, CutMode::Ascent { seed: 0 }).unwrap() <= exact + 1e-15);
        assert!(matches!(cut_norm_exact(&StepKernel::constant(2, 17, 1.0)), Err(KernelError::ResolutionCap { .. })));
    }
}
