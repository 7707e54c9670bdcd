use std::f64::consts::PI;

use super::CoxeterError;

/// Default matching tolerance for root vectors.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Hard ceiling on the number of positive roots; signed root indices are
/// stored in `u16`.
const MAX_POSITIVE_ROOTS: usize = 16_000;

/// Root system of a finite reflection group with a fixed simple system.
///
/// Positive roots are indexed so that the simple roots come first, in
/// generator order, followed by the remaining positive roots in discovery
/// order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    dimension: usize,
    rank: usize,
    positive: Vec<Vec<f64>>,
    /// Coefficients of each positive root in the simple-root basis.
    coefficients: Vec<Vec<f64>>,
    /// Bitmask of simple roots with a nonzero coefficient.
    support: Vec<u64>,
    gram: Vec<Vec<f64>>,
    tolerance: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn reflect(v: &[f64], root: &[f64]) -> Vec<f64> {
    let c = 2.0 * dot(v, root);
    v.iter().zip(root).map(|(x, r)| x - c * r).collect()
}

/// Lower-triangular `L` with `L Lᵀ = m`, or `None` if `m` is not positive definite.
pub(crate) fn cholesky(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= 1e-12 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

impl RootSystem {
    /// Realises a Coxeter matrix by Cholesky-factoring its Gram matrix
    /// `-cos(π/m_ij)`; the rows of the factor are the simple roots.
    pub fn from_coxeter_matrix(matrix: &[Vec<u32>], tolerance: f64) -> Result<Self, CoxeterError> {
        let n = matrix.len();
        let gram: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 1.0 } else { -(PI / matrix[i][j] as f64).cos() })
                    .collect()
            })
            .collect();
        let l = cholesky(&gram).ok_or_else(|| {
            CoxeterError::InvalidSpec("Gram matrix is not positive definite; group is not finite".into())
        })?;
        Self::from_simple_roots(l, tolerance)
    }

    /// Builds the full root system generated by the given simple roots.
    /// Roots are normalised to unit length.
    pub fn from_simple_roots(simple: Vec<Vec<f64>>, tolerance: f64) -> Result<Self, CoxeterError> {
        let rank = simple.len();
        if rank == 0 {
            return Err(CoxeterError::InvalidSpec("no simple roots".into()));
        }
        let dimension = simple[0].len();
        if simple.iter().any(|r| r.len() != dimension) || dimension < rank {
            return Err(CoxeterError::InvalidSpec("simple roots have inconsistent dimension".into()));
        }
        let simple: Vec<Vec<f64>> = simple
            .into_iter()
            .map(|r| {
                let norm = dot(&r, &r).sqrt();
                r.into_iter().map(|x| x / norm).collect()
            })
            .collect();
        let gram: Vec<Vec<f64>> = simple
            .iter()
            .map(|a| simple.iter().map(|b| dot(a, b)).collect())
            .collect();
        if cholesky(&gram).is_none() {
            return Err(CoxeterError::InvalidSpec("simple roots are linearly dependent".into()));
        }

        // Orbit of the simple roots under the simple reflections.
        let mut roots: Vec<Vec<f64>> = Vec::new();
        for r in &simple {
            roots.push(r.clone());
            roots.push(r.iter().map(|x| -x).collect());
        }
        let mut cursor = 0;
        while cursor < roots.len() {
            for s in &simple {
                let image = reflect(&roots[cursor], s);
                let mut found = false;
                for known in &roots {
                    let d = distance(&image, known);
                    if d <= tolerance {
                        found = true;
                        break;
                    }
                    if d <= 10.0 * tolerance {
                        return Err(CoxeterError::NumericalAmbiguity(format!(
                            "root images separated by {d:e}, inside the 10ε audit band"
                        )));
                    }
                }
                if !found {
                    if roots.len() >= 2 * MAX_POSITIVE_ROOTS {
                        return Err(CoxeterError::InvalidSpec(
                            "root system too large or infinite".into(),
                        ));
                    }
                    roots.push(image);
                }
            }
            cursor += 1;
        }

        let mut system = RootSystem {
            dimension,
            rank,
            positive: simple.clone(),
            coefficients: Vec::new(),
            support: Vec::new(),
            gram,
            tolerance,
        };
        for r in roots.iter().skip(2 * rank) {
            let c = system.simple_coefficients(r).ok_or_else(|| {
                CoxeterError::NumericalAmbiguity("root outside the span of the simple roots".into())
            })?;
            let pos = c.iter().all(|&x| x >= -tolerance);
            let neg = c.iter().all(|&x| x <= tolerance);
            match (pos, neg) {
                (true, false) => system.positive.push(r.clone()),
                (false, true) => {}
                _ => {
                    return Err(CoxeterError::NumericalAmbiguity(
                        "root has mixed-sign simple coefficients".into(),
                    ))
                }
            }
        }
        system.audit_separation()?;
        for r in &system.positive {
            let c = system.simple_coefficients(r).expect("checked above");
            let mut mask = 0u64;
            for (j, &x) in c.iter().enumerate() {
                if x > tolerance {
                    mask |= 1 << j;
                }
            }
            system.coefficients.push(c);
            system.support.push(mask);
        }
        Ok(system)
    }

    /// Every pair of distinct roots (both signs) must be more than 10ε apart.
    fn audit_separation(&self) -> Result<(), CoxeterError> {
        let all: Vec<Vec<f64>> = self
            .positive
            .iter()
            .flat_map(|r| [r.clone(), r.iter().map(|x| -x).collect()])
            .collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let d = distance(&all[i], &all[j]);
                if d <= 10.0 * self.tolerance {
                    return Err(CoxeterError::NumericalAmbiguity(format!(
                        "roots {i} and {j} separated by only {d:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coefficients of `v` in the simple-root basis, if `v` lies in their span.
    pub fn simple_coefficients(&self, v: &[f64]) -> Option<Vec<f64>> {
        let rhs: Vec<f64> = self.positive[..self.rank].iter().map(|a| dot(v, a)).collect();
        let c = solve(&self.gram, &rhs)?;
        let recon = self.combine(&c);
        if distance(&recon, v) > 1e3 * self.tolerance * (1.0 + dot(v, v).sqrt()) {
            return None;
        }
        Some(c)
    }

    /// `Σ c_j α_j` over the simple roots.
    pub fn combine(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        for (cj, a) in c.iter().zip(&self.positive[..self.rank]) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += cj * x;
            }
        }
        out
    }

    /// Index and sign of the root matching `v`, if any.
    pub fn match_root(&self, v: &[f64]) -> Option<(usize, bool)> {
        for (i, r) in self.positive.iter().enumerate() {
            if distance(v, r) <= self.tolerance {
                return Some((i, false));
            }
            let d_neg: f64 = v.iter().zip(r).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt();
            if d_neg <= self.tolerance {
                return Some((i, true));
            }
        }
        None
    }

    /// Point `p` in the span of the simple roots with `⟨p, α_j⟩ = values[j]`.
    pub fn point_with_simple_products(&self, values: &[f64]) -> Vec<f64> {
        let c = solve(&self.gram, values).expect("Gram matrix is positive definite");
        self.combine(&c)
    }

    pub fn reflect(&self, v: &[f64], root: usize) -> Vec<f64> {
        reflect(v, &self.positive[root])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
    pub fn simple_roots(&self) -> &[Vec<f64>] {
        &self.positive[..self.rank]
    }
    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.positive
    }
    pub fn positive_count(&self) -> usize {
        self.positive.len()
    }
    /// Simple-root coefficients of positive root `i` (all nonnegative).
    pub fn coefficients(&self, i: usize) -> &[f64] {
        &self.coefficients[i]
    }
    /// Bitmask of simple roots in the support of positive root `i`.
    pub fn support(&self, i: usize) -> u64 {
        self.support[i]
    }
}

pub(crate) fn inner(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b)
}
