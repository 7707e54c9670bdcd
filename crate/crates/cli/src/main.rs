use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use coxnorm::coxeter::{CoxeterGroup, CoxeterSpec, SimpleSet, DEFAULT_ORDER_CAP};
use coxnorm::percolation::{build_percolating_certificate, verify_percolation, CertificateDocument, PercolationError};
use coxnorm::refgraph::{to_dot, GraphDocument, Preset, ReflectionHypergraph};
use coxnorm::report::CheckReport;
use coxnorm::suites::{
    complex_suite, complex_targets, domination_pairs, gluing_targets, holder_suite, preset_targets, sandwich_suite,
    sidorenko_suite, tree_gluing_suite, triangle_suite, Suite, SuiteConfig, Target,
};

/// Reflection groups, reflection graphs, percolation certificates and
/// graph-norm inequality checks.
///
/// Group specs: a family letter and rank (A3, B3, D4), I2:m for dihedral
/// groups, H3, F4, joined by "x" for products (B3xA1). Simple reflections
/// are numbered from 0.
#[derive(Parser, Debug)]
#[command(name = "coxnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, positive roots, longest length and reflection count of a group.
    GroupInfo {
        #[arg(long)]
        group: String,
        #[arg(long, env = "COXNORM_ORDER_CAP")]
        order_cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reflection hypergraph and write it as JSON.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write Graphviz DOT (graphs only).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Emit and verify a percolation certificate, or verify a certificate file.
    Percolate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Certificate file to verify instead of building one.
        #[arg(long, conflicts_with_all = ["preset", "group"])]
        verify: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized inequality suite, one JSON report per line.
    Verify {
        /// holder, sidorenko, triangle, domination, sandwich, tree-gluing or complex.
        #[arg(long)]
        suite: String,
        /// Restricts holder, sidorenko, triangle and complex to one graph.
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Grid resolution; 6 for sandwich and 3 otherwise when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// A named preset such as c6, q3_hypercube or gowers_octahedron(3).
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, conflicts_with = "preset")]
    group: Option<String>,
    /// Comma-separated simple reflections of S1 (may be empty).
    #[arg(long)]
    s1: Option<String>,
    #[arg(long)]
    s2: Option<String>,
    #[arg(long)]
    s3: Option<String>,
    #[arg(long)]
    s4: Option<String>,
    #[arg(long)]
    s5: Option<String>,
    #[arg(long)]
    s6: Option<String>,
    #[arg(long)]
    s7: Option<String>,
    #[arg(long)]
    s8: Option<String>,
    #[arg(long, env = "COXNORM_ORDER_CAP")]
    order_cap: Option<u64>,
}

/// Exit with code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn parse_subset(text: &str) -> Result<SimpleSet, UsageError> {
    let indices = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| UsageError(format!("bad simple reflection index {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimpleSet::from_indices(indices))
}

fn build_group(spec: &str, cap: Option<u64>) -> Result<Arc<CoxeterGroup>, UsageError> {
    let spec: CoxeterSpec = spec.parse::<CoxeterSpec>()?.with_order_cap(cap.unwrap_or(DEFAULT_ORDER_CAP));
    Ok(Arc::new(CoxeterGroup::build(&spec)?))
}

impl GraphArgs {
    fn subsets(&self) -> Vec<&Option<String>> {
        vec![&self.s1, &self.s2, &self.s3, &self.s4, &self.s5, &self.s6, &self.s7, &self.s8]
    }

    fn is_given(&self) -> bool {
        self.preset.is_some() || self.group.is_some()
    }

    /// The hypergraph and a display name.
    fn build(&self) -> Result<(ReflectionHypergraph, String), UsageError> {
        if let Some(name) = &self.preset {
            let p: Preset = name.parse()?;
            let h = match self.order_cap {
                Some(cap) => p.build_with_cap(cap)?,
                None => p.build()?,
            };
            return Ok((h, p.to_string()));
        }
        let spec = self.group.as_ref().ok_or_else(|| UsageError("give --preset or --group".into()))?;
        let given = self.subsets();
        let k = given.iter().rposition(|s| s.is_some()).map_or(0, |i| i + 1);
        if k == 0 {
            return Err(UsageError("--group needs subsets --s1 .. --sk".into()));
        }
        let subsets = given[..k]
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.as_deref().map(parse_subset).unwrap_or_else(|| Err(UsageError(format!("--s{} missing", i + 1))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let group = build_group(spec, self.order_cap)?;
        let h = ReflectionHypergraph::build(group, &subsets)?;
        Ok((h, spec.clone()))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn group_info(group: &str, cap: Option<u64>, out: &Option<PathBuf>) -> CmdResult {
    let g = build_group(group, cap)?;
    let info = json!({
        "group": g.spec().to_string(),
        "order": g.order(),
        "positive_roots": g.positive_root_count(),
        "max_length": g.max_length(),
        "reflections": g.reflections().len(),
        "rank": g.rank(),
        "seed": 0,
    });
    emit(out, &format!("{info}\n"))?;
    Ok(true)
}

fn build(graph: &GraphArgs, out: &Option<PathBuf>, dot: &Option<PathBuf>) -> CmdResult {
    let (h, _) = graph.build()?;
    if let Some(path) = dot {
        let text = to_dot(&h)?;
        fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    emit(out, &format!("{}\n", GraphDocument::from_reflection(&h).to_json()))?;
    Ok(true)
}

fn percolate(graph: &GraphArgs, verify: &Option<PathBuf>, out: &Option<PathBuf>) -> CmdResult {
    let report = if let Some(path) = verify {
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let doc = CertificateDocument::from_json(&text)?;
        match doc.load() {
            Ok((h, cert)) => verify_percolation(&h, &cert)?,
            Err(PercolationError::InvalidStep { index, reason }) => {
                CheckReport::from_violations("percolation", vec![format!("step {index}: {reason}")])
                    .with_size("first_invalid_step", index as u64)
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        let (h, _) = graph.build()?;
        let cert = build_percolating_certificate(&h);
        let doc = CertificateDocument::from_certificate(&h, &cert);
        match out {
            Some(_) => emit(out, &format!("{}\n", doc.to_json()))?,
            None => println!("{}", serde_json::to_string(&doc)?),
        }
        verify_percolation(&h, &cert)?
    };
    let report = report.with_seed(0);
    println!("{}", report.to_json_line());
    Ok(report.passed())
}

struct VerifyArgs<'a> {
    suite: &'a str,
    graph: &'a GraphArgs,
    trials: u64,
    n: Option<usize>,
    seed: u64,
    tol: f64,
    jobs: usize,
    out: &'a Option<PathBuf>,
}

fn verify(a: VerifyArgs) -> CmdResult {
    let suite: Suite = a.suite.parse().map_err(UsageError)?;
    let n = a.n.unwrap_or(suite.default_resolution());
    if n == 0 {
        return Err(UsageError("--n must be positive".into()));
    }
    let cfg = SuiteConfig { trials: a.trials, n, seed: a.seed, tol: a.tol };
    let chosen: Option<Target> = if a.graph.is_given() {
        let (h, name) = a.graph.build()?;
        Some(Target::from_reflection(name, h))
    } else {
        None
    };
    let targets = || chosen.clone().map_or_else(preset_targets, |t| vec![t]);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs.max(1)).build()?;
    let reports = pool.install(|| match suite {
        Suite::Holder => holder_suite(&targets(), &cfg),
        Suite::Sidorenko => sidorenko_suite(&targets(), &cfg),
        Suite::Triangle => triangle_suite(&targets(), &cfg),
        Suite::Domination => coxnorm::suites::domination_suite(&domination_pairs(), &cfg),
        Suite::Sandwich => sandwich_suite(&cfg),
        Suite::TreeGluing => tree_gluing_suite(&gluing_targets(), &cfg),
        Suite::Complex => {
            let t = chosen.clone().map_or_else(complex_targets, |t| vec![t]);
            complex_suite(&t, &cfg)
        }
    })?;
    if suite == Suite::Complex && a.trials > 0 && reports.is_empty() {
        return Err(UsageError("complex suite needs a target whose subsets share no generator".into()));
    }
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_json_line());
        text.push('\n');
    }
    emit(a.out, &text)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("suite {suite}: {} reports, {failed} failed, seed {}", reports.len(), a.seed);
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::GroupInfo { group, order_cap, out } => group_info(group, *order_cap, out),
        Command::Build { graph, out, dot } => build(graph, out, dot),
        Command::Percolate { graph, verify, out } => percolate(graph, verify, out),
        Command::Verify { suite, graph, trials, n, seed, tol, jobs, out } => verify(VerifyArgs {
            suite,
            graph,
            trials: *trials,
            n: *n,
            seed: *seed,
            tol: *tol,
            jobs: *jobs,
            out,
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
