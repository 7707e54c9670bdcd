use crate::refgraph::Hypergraph;
use crate::report::CheckReport;

use super::{
    abs_graph_norm, colored_density, cut_norm_exact, density, graph_norm, validate_n_decomposition, ColoredFamily,
    KernelError, NDecomposition, StepKernel,
};

pub const INEQUALITY_TOL: f64 = 1e-12;
pub const EQUALITY_TOL: f64 = 1e-9;

fn sizes(r: CheckReport, h: &Hypergraph, n: usize) -> CheckReport {
    r.with_size("vertices", h.vertex_count() as u64)
        .with_size("edges", h.edge_count() as u64)
        .with_size("n", n as u64)
}

/// `|⟨F;χ⟩_H| ≤ Π_e ‖f_{χ(e)}‖`. In abs mode the kernels are replaced by
/// their absolute values and the norm is `‖·‖_{r(H)}`; otherwise `‖·‖_H`.
pub fn check_holder(h: &Hypergraph, family: &ColoredFamily<f64>, abs_mode: bool, tol: f64) -> Result<CheckReport, KernelError> {
    let fam = if abs_mode {
        ColoredFamily::new(family.kernels().iter().map(StepKernel::abs).collect(), family.coloring().to_vec())?
    } else {
        family.clone()
    };
    let lhs = colored_density(h, &fam)?.abs();
    let norms = fam.kernels().iter().map(|k| graph_norm(h, k)).collect::<Result<Vec<f64>, _>>()?;
    let rhs: f64 = fam.coloring().iter().map(|&c| norms[c]).product();
    let name = if abs_mode { "holder" } else { "holder-signed" };
    Ok(sizes(CheckReport::new(name, lhs, rhs, tol), h, family.resolution())
        .with_size("colors", family.kernels().len() as u64))
}

/// `‖f‖_{r(K_2)} ≤ ‖f‖_{r(H)}`; the single-edge norm is the mean of `|f|`.
pub fn check_sidorenko(h: &Hypergraph, f: &StepKernel<f64>, tol: f64) -> Result<CheckReport, KernelError> {
    let vals = f.values();
    let lhs = vals.iter().map(|v| v.abs()).sum::<f64>() / vals.len() as f64;
    let rhs = abs_graph_norm(h, f)?;
    Ok(sizes(CheckReport::new("sidorenko", lhs, rhs, tol), h, f.resolution()))
}

/// `‖f‖_{r(J)} ≤ ‖f‖_{r(H)}`.
pub fn check_domination(h: &Hypergraph, j: &Hypergraph, f: &StepKernel<f64>, tol: f64) -> Result<CheckReport, KernelError> {
    let lhs = abs_graph_norm(j, f)?;
    let rhs = abs_graph_norm(h, f)?;
    Ok(sizes(CheckReport::new("domination", lhs, rhs, tol), h, f.resolution())
        .with_size("sub_edges", j.edge_count() as u64))
}

/// `‖f+g‖_{r(H)} ≤ ‖f‖_{r(H)} + ‖g‖_{r(H)}`.
pub fn check_triangle(h: &Hypergraph, f: &StepKernel<f64>, g: &StepKernel<f64>, tol: f64) -> Result<CheckReport, KernelError> {
    let lhs = abs_graph_norm(h, &f.try_add(g)?)?;
    let rhs = abs_graph_norm(h, f)? + abs_graph_norm(h, g)?;
    Ok(sizes(CheckReport::new("triangle", lhs, rhs, tol), h, f.resolution()))
}

/// For `|f| ≤ 1`: `‖f‖_{C4}^4 ≤ ‖f‖_□` and `‖f‖_□ ≤ ‖f‖_{C4}`, as two reports.
pub fn check_cutnorm_sandwich(f: &StepKernel<f64>, tol: f64) -> Result<(CheckReport, CheckReport), KernelError> {
    if f.bound() > 1.0 {
        return Err(KernelError::Shape(format!("sandwich needs |f| <= 1, bound is {}", f.bound())));
    }
    // part-oriented 4-cycle: edges run from {0,2} to {1,3}
    let c4 = Hypergraph::new((0..4).map(|i| i.to_string()).collect(), vec![vec![0, 1], vec![0, 3], vec![2, 1], vec![2, 3]], 2)
        .expect("valid graph");
    let t = density(&c4, f)?;
    let c4_norm = t.abs().powf(0.25);
    let cut = cut_norm_exact(f)?;
    let n = f.resolution() as u64;
    let lower = CheckReport::new("sandwich-lower", t, cut, tol).with_size("n", n);
    let upper = CheckReport::new("sandwich-upper", cut, c4_norm, tol).with_size("n", n);
    Ok((lower, upper))
}

/// For a valid decomposition: `t_N(f)^{|E(H)|/|E(N)|} ≤ t_H(f)` and
/// `t_{K_2}(f)^{|E(H)|} ≤ t_H(f)`, as two reports. The densities are
/// evaluated by vertex enumeration.
pub fn check_tree_gluing(
    h: &Hypergraph,
    dec: &NDecomposition,
    f: &StepKernel<f64>,
    tol: f64,
) -> Result<(CheckReport, CheckReport), KernelError> {
    let check = validate_n_decomposition(h, dec);
    if !check.is_valid() {
        return Err(KernelError::InvalidDecomposition(check.violations.join("; ")));
    }
    if f.values().iter().any(|&v| v < 0.0) {
        return Err(KernelError::Shape("tree gluing needs a nonnegative kernel".into()));
    }
    let th = super::density_brute(h, f)?;
    let tn = super::density_brute(&dec.template, f)?;
    let edge = f.values().iter().sum::<f64>() / f.values().len() as f64;
    let e_h = h.edge_count() as f64;
    let power = CheckReport::new("tree-gluing", tn.powf(e_h / dec.template.edge_count() as f64), th, tol);
    let sid = CheckReport::new("tree-gluing-sidorenko", edge.powf(e_h), th, tol);
    let n = f.resolution();
    Ok((sizes(power, h, n), sizes(sid, h, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::double_four_cycle;

    #[test]
    fn equal_kernels_are_tight() {
        let h = Hypergraph::cycle(6);
        let f = StepKernel::symmetric(2, vec![0.2, 0.7, 0.7, 0.1]).unwrap();
        let fam = ColoredFamily::new(vec![f.clone(), f.clone()], vec![0, 1, 0, 1, 0, 1]).unwrap();
        let r = check_holder(&h, &fam, true, INEQUALITY_TOL).unwrap();
        assert!(r.passed());
        assert!(r.margin.abs() < 1e-15);
        let c = StepKernel::constant(2, 3, 0.4);
        assert!(check_sidorenko(&h, &c, INEQUALITY_TOL).unwrap().margin.abs() < 1e-15);
        assert!(check_domination(&h, &h, &f, INEQUALITY_TOL).unwrap().margin.abs() < 1e-15);
        let zero = StepKernel::constant(2, 2, 0.0);
        assert!(check_triangle(&h, &f, &zero, INEQUALITY_TOL).unwrap().margin.abs() < 1e-15);
        assert!(check_triangle(&h, &f, &f, INEQUALITY_TOL).unwrap().margin.abs() < 1e-15);
    }

    #[test]
    fn sandwich_constants() {
        let (lo, hi) = check_cutnorm_sandwich(&StepKernel::constant(2, 3, 1.0), INEQUALITY_TOL).unwrap();
        assert!(lo.passed() && hi.passed());
        assert!((lo.lhs - 1.0).abs() < 1e-15 && (hi.rhs - 1.0).abs() < 1e-15);
        let (lo, hi) = check_cutnorm_sandwich(&StepKernel::constant(2, 3, 0.0), INEQUALITY_TOL).unwrap();
        assert_eq!((lo.lhs, lo.rhs, hi.rhs), (0.0, 0.0, 0.0));
        assert!(check_cutnorm_sandwich(&StepKernel::constant(2, 2, 1.5), INEQUALITY_TOL).is_err());
    }

    #[test]
    fn single_bag_gluing_is_tight() {
        let h = Hypergraph::cycle(4);
        let dec = NDecomposition::new(vec![vec![0, 1, 2, 3]], vec![], Hypergraph::cycle(4));
        let f = StepKernel::symmetric(2, vec![0.9, 0.3, 0.3, 0.5]).unwrap();
        let (power, sid) = check_tree_gluing(&h, &dec, &f, INEQUALITY_TOL).unwrap();
        assert!(power.margin.abs() < 1e-15);
        assert!(sid.passed());
        let (h, dec) = double_four_cycle();
        let (p, s) = check_tree_gluing(&h, &dec, &f, INEQUALITY_TOL).unwrap();
        assert!(p.passed() && s.passed());
    }
}
