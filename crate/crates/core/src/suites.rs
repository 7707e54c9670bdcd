//! Seeded randomized runs of the kernel checks.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, CoxeterSpec, SimpleSet};
use crate::kernels::{
    abs_graph_norm, check_cutnorm_sandwich, check_domination, check_holder, check_sidorenko, check_tree_gluing,
    check_triangle, complex_density, complex_graph_norm, double_four_cycle, double_subdivided_k4, graph_norm,
    random_complex, random_nonnegative, random_signed, ColoredFamily, KernelError, NDecomposition, StepKernel,
    IMAGINARY_TOL,
};
use crate::refgraph::{Hypergraph, Preset, ReflectionHypergraph};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Holder,
    Sidorenko,
    Triangle,
    Domination,
    Sandwich,
    TreeGluing,
    Complex,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Holder, Suite::Sidorenko, Suite::Triangle, Suite::Domination, Suite::Sandwich, Suite::TreeGluing, Suite::Complex];

    /// Resolution used when none is given.
    pub fn default_resolution(self) -> usize {
        match self {
            Suite::Sandwich => 6,
            _ => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Holder => "holder",
            Suite::Sidorenko => "sidorenko",
            Suite::Triangle => "triangle",
            Suite::Domination => "domination",
            Suite::Sandwich => "sandwich",
            Suite::TreeGluing => "tree-gluing",
            Suite::Complex => "complex",
        })
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s || x.to_string().replace('-', "_") == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: u64,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
}

/// RNG for one trial: ChaCha8 keyed by the master seed, one stream per
/// (target, trial) pair.
pub fn trial_rng(seed: u64, target: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((target as u64) << 40) | trial);
    rng
}

/// A graph under test, with its reflection data when it has any.
#[derive(Debug, Clone)]
pub struct Target {
    pub name: String,
    pub graph: Hypergraph,
    pub reflection: Option<ReflectionHypergraph>,
}

impl Target {
    pub fn from_preset(p: Preset) -> Result<Self, crate::refgraph::RefgraphError> {
        let h = p.build()?;
        Ok(Target { name: p.to_string(), graph: h.graph().clone(), reflection: Some(h) })
    }

    pub fn from_reflection(name: impl Into<String>, h: ReflectionHypergraph) -> Self {
        Target { name: name.into(), graph: h.graph().clone(), reflection: Some(h) }
    }

    pub fn plain(name: impl Into<String>, graph: Hypergraph) -> Self {
        Target { name: name.into(), graph, reflection: None }
    }
}

/// Every catalogue preset (all weakly norming).
pub fn preset_targets() -> Vec<Target> {
    Preset::catalogue().into_iter().map(|p| Target::from_preset(p).expect("catalogue presets build")).collect()
}

/// The octahedral 3-graph's companion with `S_1` shrunk to `{s_2}`.
pub fn octahedral_companion() -> ReflectionHypergraph {
    let spec: CoxeterSpec = "A1xA1xA1".parse().expect("valid spec");
    let group = Arc::new(CoxeterGroup::build(&spec).expect("order 8"));
    let set = |v: &[usize]| SimpleSet::from_indices(v.iter().copied());
    ReflectionHypergraph::build(group, &[set(&[2]), set(&[0, 2]), set(&[0, 1])]).expect("valid subsets")
}

/// `(H, J)` with `‖·‖_{r(J)} ≤ ‖·‖_{r(H)}` expected.
#[derive(Debug, Clone)]
pub struct DominationPair {
    pub name: String,
    pub host: Hypergraph,
    pub sub: Hypergraph,
}

pub fn domination_pairs() -> Vec<DominationPair> {
    let c4 = Preset::C4.build().expect("c4").graph().clone();
    let c6 = Preset::C6.build().expect("c6").graph().clone();
    // paths taken as consecutive edges of the cycle, keeping part orientation
    let path_in = |g: &Hypergraph, len: usize| -> Hypergraph {
        let mut order = vec![0usize];
        let mut used = vec![false; g.edge_count()];
        let mut at = g.edges()[0][0];
        while order.len() < len {
            let last = *order.last().unwrap();
            used[last] = true;
            let e = &g.edges()[last];
            at = if e[0] == at { e[1] } else { e[0] };
            let next = (0..g.edge_count()).find(|&f| !used[f] && g.edges()[f].contains(&at)).expect("cycle continues");
            order.push(next);
        }
        g.edge_subgraph(&order)
    };
    vec![
        DominationPair { name: "c4/p3".into(), sub: path_in(&c4, 3), host: c4.clone() },
        DominationPair { name: "c6/p4".into(), sub: path_in(&c6, 4), host: c6.clone() },
        DominationPair {
            name: "octahedral/companion".into(),
            host: Preset::GowersOctahedron(3).build().expect("octahedron").graph().clone(),
            sub: octahedral_companion().graph().clone(),
        },
    ]
}

#[derive(Debug, Clone)]
pub struct GluingTarget {
    pub name: String,
    pub graph: Hypergraph,
    pub decomposition: NDecomposition,
}

pub fn gluing_targets() -> Vec<GluingTarget> {
    let (g1, d1) = double_four_cycle();
    let (g2, d2) = double_subdivided_k4();
    vec![
        GluingTarget { name: "double_c4".into(), graph: g1, decomposition: d1 },
        GluingTarget { name: "double_subdivided_k4".into(), graph: g2, decomposition: d2 },
    ]
}

fn normalised<R: Rng>(rng: &mut R, h: &Hypergraph, n: usize) -> Result<StepKernel<f64>, KernelError> {
    let f = random_nonnegative(rng, h.arity(), n);
    let norm = abs_graph_norm(h, &f)?;
    Ok(if norm > 0.0 { f.scaled(1.0 / norm) } else { StepKernel::constant(h.arity(), n, 1.0) })
}

fn tag(r: CheckReport, cfg: &SuiteConfig, trial: u64, target: &str) -> CheckReport {
    r.with_seed(cfg.seed).with_trial(trial).with_annotation(target)
}

fn per_trial<F>(cfg: &SuiteConfig, target: usize, f: F) -> Result<Vec<CheckReport>, KernelError>
where
    F: Fn(&mut ChaCha8Rng, u64) -> Result<Vec<CheckReport>, KernelError> + Sync,
{
    let chunks: Vec<Vec<CheckReport>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| f(&mut trial_rng(cfg.seed, target, t), t))
        .collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// One Hölder trial: up to four colours, random colouring, kernels scaled to
/// unit `‖·‖_{r(H)}`.
pub fn holder_suite(targets: &[Target], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        let h = &t.graph;
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let m = rng.random_range(1..=h.edge_count().min(4));
            let kernels = (0..m).map(|_| normalised(rng, h, cfg.n)).collect::<Result<Vec<_>, _>>()?;
            let coloring = (0..h.edge_count()).map(|_| rng.random_range(0..m)).collect();
            let fam = ColoredFamily::new(kernels, coloring)?;
            Ok(vec![tag(check_holder(h, &fam, true, cfg.tol)?, cfg, trial, &t.name)])
        })?);
    }
    Ok(out)
}

pub fn sidorenko_suite(targets: &[Target], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let f = random_nonnegative(rng, t.graph.arity(), cfg.n);
            Ok(vec![tag(check_sidorenko(&t.graph, &f, cfg.tol)?, cfg, trial, &t.name)])
        })?);
    }
    Ok(out)
}

/// Signed kernels with entries in `[−1, 1]`.
pub fn triangle_suite(targets: &[Target], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let f = random_signed(rng, t.graph.arity(), cfg.n, true);
            let g = random_signed(rng, t.graph.arity(), cfg.n, true);
            Ok(vec![tag(check_triangle(&t.graph, &f, &g, cfg.tol)?, cfg, trial, &t.name)])
        })?);
    }
    Ok(out)
}

pub fn domination_suite(pairs: &[DominationPair], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, p) in pairs.iter().enumerate() {
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let f = random_nonnegative(rng, p.host.arity(), cfg.n);
            Ok(vec![tag(check_domination(&p.host, &p.sub, &f, cfg.tol)?, cfg, trial, &p.name)])
        })?);
    }
    Ok(out)
}

/// Two reports per trial: lower and upper bound.
pub fn sandwich_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    per_trial(cfg, 0, |rng, trial| {
        let f = random_signed(rng, 2, cfg.n, false);
        let (lo, hi) = check_cutnorm_sandwich(&f, cfg.tol)?;
        Ok(vec![tag(lo, cfg, trial, "c4"), tag(hi, cfg, trial, "c4")])
    })
}

/// Two reports per trial: the power bound and the Sidorenko form.
pub fn tree_gluing_suite(targets: &[GluingTarget], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let f = random_nonnegative(rng, 2, cfg.n);
            let (p, s) = check_tree_gluing(&t.graph, &t.decomposition, &f, cfg.tol)?;
            Ok(vec![tag(p, cfg, trial, &t.name), tag(s, cfg, trial, &t.name)])
        })?);
    }
    Ok(out)
}

/// Stable reflection targets only. Two reports per trial: the imaginary
/// residue on a random complex kernel, and agreement with the real norm on
/// a random real kernel.
pub fn complex_suite(targets: &[Target], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, KernelError> {
    let mut out = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        let Some(h) = t.reflection.as_ref().filter(|h| h.is_stable_family()) else { continue };
        out.extend(per_trial(cfg, ti, |rng, trial| {
            let z = random_complex(rng, h.uniformity(), cfg.n);
            let residue = complex_density(h, &z)?.im.abs();
            let r1 = CheckReport::new("complex-residue", residue, IMAGINARY_TOL, 0.0);
            let f = random_signed(rng, h.uniformity(), cfg.n, false);
            let diff = (complex_graph_norm(h, &f.to_complex())? - graph_norm(h.graph(), &f)?).abs();
            let r2 = CheckReport::new("complex-real", diff, 0.0, 1e-12);
            Ok(vec![tag(r1, cfg, trial, &t.name), tag(r2, cfg, trial, &t.name)])
        })?);
    }
    Ok(out)
}

/// Stable presets from the catalogue.
pub fn complex_targets() -> Vec<Target> {
    preset_targets().into_iter().filter(|t| t.reflection.as_ref().is_some_and(|h| h.is_stable_family())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("tree_gluing".parse::<Suite>().unwrap(), Suite::TreeGluing);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = SuiteConfig { trials: 5, n: 3, seed: 17, tol: 1e-12 };
        let t = vec![Target::from_preset(Preset::C6).unwrap()];
        let a = holder_suite(&t, &cfg).unwrap();
        let b = holder_suite(&t, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert_eq!(a[3].trial, Some(3));
        let other = holder_suite(&t, &SuiteConfig { seed: 18, ..cfg }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn pair_shapes() {
        let pairs = domination_pairs();
        assert_eq!(pairs[0].sub.edge_count(), 3);
        assert_eq!(pairs[1].sub.edge_count(), 4);
        let comp = octahedral_companion();
        assert_eq!((comp.graph().vertex_count(), comp.graph().edge_count()), (8, 8));
        assert!(comp.is_stable_family());
    }
}
