use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterGroup, CoxeterSpec, Element, SimpleSet};
use crate::refgraph::{is_edge_transitive_under, CutInvolution, ReflectionHypergraph, Sign};
use crate::report::CheckReport;

use super::{canonical_schedule, PercolationError};

pub const CERTIFICATE_SCHEMA: &str = "coxnorm.certificate/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldStep {
    pub reflection: Element,
    pub sign: Sign,
}

/// A folding sequence on chambers that starts at the fundamental edge.
#[derive(Debug, Clone)]
pub struct PercolationCertificate {
    pub group: Arc<CoxeterGroup>,
    pub subsets: Vec<SimpleSet>,
    pub initial_edge: usize,
    pub steps: Vec<FoldStep>,
    /// Every involution used has an edge-free fixed set.
    pub stable: bool,
}

/// The canonical certificate: `|S|·ℓ_max` folds by simple reflections, all `+`.
pub fn build_percolating_certificate(h: &ReflectionHypergraph) -> PercolationCertificate {
    let group = h.group().clone();
    let steps: Vec<FoldStep> =
        canonical_schedule(&group).into_iter().map(|(reflection, sign)| FoldStep { reflection, sign }).collect();
    let stable = used_involutions(h, &steps).unwrap_or_default().values().all(|phi| phi.stable);
    PercolationCertificate { group, subsets: h.subsets(), initial_edge: h.fundamental_edge(), steps, stable }
}

fn used_involutions(h: &ReflectionHypergraph, steps: &[FoldStep]) -> Result<HashMap<usize, CutInvolution>, PercolationError> {
    let mut out = HashMap::new();
    for s in steps {
        let idx = s.reflection.index();
        if let std::collections::hash_map::Entry::Vacant(slot) = out.entry(idx) {
            slot.insert(h.induced_involution(s.reflection).map_err(|_| PercolationError::NotAReflection)?);
        }
    }
    Ok(out)
}

fn check_group(h: &ReflectionHypergraph, cert: &PercolationCertificate) -> Result<(), PercolationError> {
    if !Arc::ptr_eq(h.group(), &cert.group) && !h.group().contains(cert.group.identity()) {
        return Err(PercolationError::GroupMismatch);
    }
    if h.subsets() != cert.subsets {
        return Err(PercolationError::GroupMismatch);
    }
    Ok(())
}

/// Per-step edge fold tables `e ↦ φ±(e)`.
fn fold_tables(h: &ReflectionHypergraph, cert: &PercolationCertificate) -> Result<Vec<Vec<usize>>, PercolationError> {
    let invs = used_involutions(h, &cert.steps)?;
    let mut cache: HashMap<(usize, Sign), Vec<usize>> = HashMap::new();
    Ok(cert
        .steps
        .iter()
        .map(|s| {
            cache
                .entry((s.reflection.index(), s.sign))
                .or_insert_with(|| invs[&s.reflection.index()].fold_edges(h.graph(), s.sign))
                .clone()
        })
        .collect())
}

/// Edge sets `J_0 = {initial edge}, …, J_N` with `J_{i+1} = {e : φ_i^±(e) ∈ J_i}`.
pub fn project_certificate_to_edges(
    h: &ReflectionHypergraph,
    cert: &PercolationCertificate,
) -> Result<Vec<Vec<bool>>, PercolationError> {
    check_group(h, cert)?;
    let m = h.graph().edge_count();
    let mut j = vec![false; m];
    j[cert.initial_edge.min(m.saturating_sub(1))] = true;
    let mut trace = vec![j];
    for table in fold_tables(h, cert)? {
        let prev = trace.last().unwrap();
        let next = (0..m).map(|e| prev[table[e]]).collect();
        trace.push(next);
    }
    Ok(trace)
}

/// Checks replay, edge-transitivity under the involutions used, and the
/// stable claim. A passing certificate is annotated "norming" when stable and
/// "weakly norming" otherwise.
pub fn verify_percolation(h: &ReflectionHypergraph, cert: &PercolationCertificate) -> Result<CheckReport, PercolationError> {
    check_group(h, cert)?;
    let mut violations = Vec::new();
    let m = h.graph().edge_count();
    if cert.initial_edge != h.fundamental_edge() {
        violations.push(format!(
            "initial edge {} is not the fundamental-chamber edge {}",
            cert.initial_edge,
            h.fundamental_edge()
        ));
    }
    let invs = used_involutions(h, &cert.steps)?;
    let trace = project_certificate_to_edges(h, cert)?;
    let reached = trace.last().unwrap().iter().filter(|&&b| b).count();
    if reached != m {
        violations.push(format!("replay reaches {reached} of {m} edges"));
    }
    let mut gens: Vec<Vec<usize>> = invs.values().map(|phi| phi.perm.clone()).collect();
    gens.sort();
    let (transitive, orbits) = is_edge_transitive_under(h.graph(), &gens);
    if !transitive {
        violations.push(format!("involutions used leave {} edge orbits", orbits.len()));
    }
    if cert.stable {
        let mut roots: Vec<usize> = invs.keys().copied().collect();
        roots.sort();
        for r in roots {
            if !invs[&r].stable {
                violations.push(format!("certificate claims stability but element {r} fixes an edge"));
            }
        }
    }
    let ok = violations.is_empty();
    let mut report = CheckReport::from_violations("percolation", violations)
        .with_size("steps", cert.steps.len() as u64)
        .with_size("edges", m as u64);
    if ok {
        report = report.with_annotation(if cert.stable { "norming" } else { "weakly norming" });
    }
    Ok(report)
}

/// Follows the single CS-tree branch taking each certificate step with its
/// recorded sign. Returns the leaf colouring and the branch signs; fails
/// unless the leaf is monochromatic in the colour of the initial edge.
pub fn certificate_to_monochromatic_leaf(
    h: &ReflectionHypergraph,
    cert: &PercolationCertificate,
    coloring: &[usize],
) -> Result<(Vec<usize>, Vec<Sign>), PercolationError> {
    check_group(h, cert)?;
    let m = h.graph().edge_count();
    if coloring.len() != m {
        return Err(PercolationError::CertificateInvalid(format!("colouring has {} entries for {m} edges", coloring.len())));
    }
    let tables = fold_tables(h, cert)?;
    // composite e ↦ φ_1(φ_2(⋯φ_N(e)))
    let mut comp: Vec<usize> = (0..m).collect();
    for table in tables.iter().rev() {
        for c in comp.iter_mut() {
            *c = table[*c];
        }
    }
    let leaf: Vec<usize> = comp.iter().map(|&e| coloring[e]).collect();
    let colour = coloring[cert.initial_edge];
    if leaf.iter().any(|&c| c != colour) {
        return Err(PercolationError::CertificateInvalid("branch leaf is not monochromatic".into()));
    }
    Ok((leaf, cert.steps.iter().map(|s| s.sign).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub reflection_word: Vec<usize>,
    pub sign: Sign,
}

/// JSON form of a certificate; reflections are recorded by reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema: String,
    pub group_spec: String,
    pub order_cap: u64,
    pub subsets: Vec<SimpleSet>,
    /// Vertex names of the initial edge.
    pub initial_edge: Vec<String>,
    pub steps: Vec<StepRecord>,
    pub stable: bool,
}

impl CertificateDocument {
    pub fn from_certificate(h: &ReflectionHypergraph, cert: &PercolationCertificate) -> Self {
        let g = h.graph();
        CertificateDocument {
            schema: CERTIFICATE_SCHEMA.to_string(),
            group_spec: cert.group.spec().to_string(),
            order_cap: cert.group.spec().order_cap,
            subsets: cert.subsets.clone(),
            initial_edge: g.edges()[cert.initial_edge].iter().map(|&v| g.names()[v].clone()).collect(),
            steps: cert
                .steps
                .iter()
                .map(|s| StepRecord { reflection_word: cert.group.word(s.reflection), sign: s.sign })
                .collect(),
            stable: cert.stable,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PercolationError> {
        let doc: CertificateDocument =
            serde_json::from_str(text).map_err(|e| PercolationError::Document(e.to_string()))?;
        Ok(doc)
    }

    /// Rebuilds the hypergraph and certificate. Steps naming out-of-range
    /// generators or non-reflections fail with the index of the first bad step.
    pub fn load(&self) -> Result<(ReflectionHypergraph, PercolationCertificate), PercolationError> {
        if self.schema != CERTIFICATE_SCHEMA {
            return Err(PercolationError::Document(format!("unsupported schema {:?}", self.schema)));
        }
        let spec: CoxeterSpec = self
            .group_spec
            .parse::<CoxeterSpec>()
            .map_err(|e| PercolationError::Document(e.to_string()))?
            .with_order_cap(self.order_cap);
        let group = Arc::new(CoxeterGroup::build(&spec).map_err(|e| PercolationError::Document(e.to_string()))?);
        let h = ReflectionHypergraph::build(group.clone(), &self.subsets)
            .map_err(|e| PercolationError::Document(e.to_string()))?;
        let g = h.graph();
        let initial_edge = g
            .edges()
            .iter()
            .position(|e| e.iter().map(|&v| g.names()[v].as_str()).eq(self.initial_edge.iter().map(String::as_str)))
            .ok_or_else(|| PercolationError::Document("initial edge is not an edge of the hypergraph".into()))?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (index, s) in self.steps.iter().enumerate() {
            let t = group
                .element_from_word(&s.reflection_word)
                .map_err(|e| PercolationError::InvalidStep { index, reason: e.to_string() })?;
            if group.reflection_root(t).is_none() {
                return Err(PercolationError::InvalidStep { index, reason: "word is not a reflection".into() });
            }
            steps.push(FoldStep { reflection: t, sign: s.sign });
        }
        let cert = PercolationCertificate { group, subsets: self.subsets.clone(), initial_edge, steps, stable: self.stable };
        Ok((h, cert))
    }
}
