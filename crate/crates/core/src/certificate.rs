//! Self-contained JSON certificates and their independent verification.
//!
//! A document stores the input graph, the claimed value, the clique cover,
//! the realizing hypergraph with its line to vertex map, the bounds report and
//! the vertex classification. [`verify_document`] re-derives every claim from
//! the graph alone; it never trusts the solver's output.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::classify::{interior_flags, is_extremal_interior, VertexClassification};
use crate::cliques::clique_number;
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::hypergraph::{CandidateHypergraph, LinearHypergraph};
use crate::solver::{
    bounds, brute_force_reduced_v, brute_force_v, verify_cover, BoundsReport, CliqueCover,
    CoverMode, CoverVerdict, SolveOptions, SolveResult, DEFAULT_ORACLE_CAP,
};

pub const SCHEMA: &str = "linspect/1";
pub const COMMAND: &str = "solve";
pub const TIE_BREAK: &str = "smallest uncovered edge; larger cliques first, then lexicographic";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    /// Edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    /// When set, `timestamp` is absent and the document is byte-reproducible.
    pub deterministic: bool,
    /// Seconds since the Unix epoch; informational only.
    pub timestamp: Option<u64>,
    pub tie_break: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema: String,
    /// Informational only.
    pub tool_version: String,
    pub command: String,
    pub graph: GraphRecord,
    pub mode: CoverMode,
    pub value: usize,
    pub cover: Vec<Vec<usize>>,
    /// Present exactly for full covers: one point per clique.
    pub realization: Option<CandidateHypergraph>,
    /// `line_to_vertex[i]` is the vertex represented by line `i`.
    pub line_to_vertex: Option<Vec<usize>>,
    pub bounds: BoundsReport,
    /// Extremal flags may be absent when the producing run ran out of budget.
    pub classification: VertexClassification,
    pub metadata: Metadata,
}

impl CertificateDocument {
    pub fn from_solve(
        g: &Graph,
        result: &SolveResult,
        classification: VertexClassification,
        deterministic: bool,
    ) -> Self {
        let timestamp = (!deterministic).then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        });
        CertificateDocument {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: COMMAND.to_string(),
            graph: GraphRecord {
                n: g.n(),
                edges: g.edges(),
            },
            mode: result.certificate.mode,
            value: result.value,
            cover: result
                .certificate
                .cliques
                .iter()
                .map(|c| c.to_vec())
                .collect(),
            realization: result.realization.clone().map(CandidateHypergraph::from),
            line_to_vertex: result.realization.as_ref().map(|_| (0..g.n()).collect()),
            bounds: result.bounds.clone(),
            classification,
            metadata: Metadata {
                deterministic,
                timestamp,
                tie_break: TIE_BREAK.to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("schema {0:?} is not {SCHEMA:?}")]
    Schema(String),
    #[error("command {0:?} is not {COMMAND:?}")]
    Command(String),
    #[error("metadata: {0}")]
    Metadata(String),
    #[error("graph: {0}")]
    Graph(String),
    #[error("cover: {0}")]
    Cover(String),
    #[error("value {value} differs from cover size {size}")]
    ValueMismatch { value: usize, size: usize },
    #[error("realization: {0}")]
    Realization(String),
    #[error("bounds: {0}")]
    Bounds(String),
    #[error("value {value} is not optimal: {optimum}")]
    NotOptimal { value: usize, optimum: usize },
    #[error("classification: {0}")]
    Classification(String),
}

/// How minimality of the value was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimality {
    /// The value meets a recomputed lower bound.
    Bounds,
    /// Exhaustive enumeration agrees.
    Oracle,
    /// The cover is valid but minimality was not re-established.
    Unproven,
}

impl std::fmt::Display for Optimality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Optimality::Bounds => "bounds meet",
            Optimality::Oracle => "exhaustive oracle",
            Optimality::Unproven => "unproven",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verified {
    pub graph: Graph,
    pub value: usize,
    pub optimality: Optimality,
}

/// Checks every claim in `doc` against the graph it names.
pub fn verify_document(doc: &CertificateDocument) -> Result<Verified, CertificateError> {
    if doc.schema != SCHEMA {
        return Err(CertificateError::Schema(doc.schema.clone()));
    }
    if doc.command != COMMAND {
        return Err(CertificateError::Command(doc.command.clone()));
    }
    if doc.metadata.tie_break != TIE_BREAK {
        return Err(CertificateError::Metadata("unknown tie-break rule".into()));
    }
    if doc.metadata.deterministic == doc.metadata.timestamp.is_some() {
        return Err(CertificateError::Metadata(
            "a timestamp must be present exactly for non-deterministic documents".into(),
        ));
    }
    let g = check_graph(&doc.graph)?;
    let cover = check_cover(&g, doc)?;
    if doc.value != cover.len() {
        return Err(CertificateError::ValueMismatch {
            value: doc.value,
            size: cover.len(),
        });
    }
    check_realization(&g, doc, &cover)?;
    let optimality = check_bounds_and_optimality(&g, doc)?;
    check_classification(&g, doc)?;
    Ok(Verified {
        graph: g,
        value: doc.value,
        optimality,
    })
}

fn check_graph(rec: &GraphRecord) -> Result<Graph, CertificateError> {
    if rec.n > MAX_VERTICES {
        return Err(CertificateError::Graph(format!(
            "{} vertices exceed {MAX_VERTICES}",
            rec.n
        )));
    }
    for w in rec.edges.windows(2) {
        if w[0] >= w[1] {
            return Err(CertificateError::Graph(format!(
                "edges not strictly sorted at {:?}",
                w[1]
            )));
        }
    }
    if let Some(&(a, b)) = rec.edges.iter().find(|&&(a, b)| a >= b || b >= rec.n) {
        return Err(CertificateError::Graph(format!(
            "edge ({a}, {b}) is not canonical"
        )));
    }
    Graph::from_edges(rec.n, rec.edges.iter().copied())
        .map_err(|e| CertificateError::Graph(e.to_string()))
}

fn check_cover(g: &Graph, doc: &CertificateDocument) -> Result<CliqueCover, CertificateError> {
    let mut cliques = Vec::with_capacity(doc.cover.len());
    for (i, c) in doc.cover.iter().enumerate() {
        if let Some(&x) = c.iter().find(|&&x| x >= g.n()) {
            return Err(CertificateError::Cover(format!(
                "clique {i} names vertex {x}"
            )));
        }
        let set: VertexSet = c.iter().copied().collect();
        if set.to_vec() != *c {
            return Err(CertificateError::Cover(format!(
                "clique {i} is not a sorted set"
            )));
        }
        cliques.push(set);
    }
    let cover = CliqueCover {
        mode: doc.mode,
        cliques,
    };
    match verify_cover(g, &cover) {
        CoverVerdict::Valid { .. } => Ok(cover),
        CoverVerdict::Invalid(why) => Err(CertificateError::Cover(why.to_string())),
    }
}

fn check_realization(
    g: &Graph,
    doc: &CertificateDocument,
    cover: &CliqueCover,
) -> Result<(), CertificateError> {
    let err = |s: String| Err(CertificateError::Realization(s));
    let (h, map) = match (doc.mode, &doc.realization, &doc.line_to_vertex) {
        (CoverMode::Reduced, None, None) => return Ok(()),
        (CoverMode::Reduced, _, _) => return err("reduced covers carry no realization".into()),
        (CoverMode::Full, Some(h), Some(map)) => (h, map),
        (CoverMode::Full, _, _) => {
            return err("full covers need a realization and a line map".into())
        }
    };
    let mut seen = vec![false; g.n()];
    if map.len() != g.n()
        || map
            .iter()
            .any(|&x| x >= g.n() || std::mem::replace(&mut seen[x], true))
    {
        return err("line map is not a bijection onto the vertices".into());
    }
    let h = match LinearHypergraph::try_from(h.clone()) {
        Ok(v) if v.lines().iter().zip(&h.lines).all(|(a, b)| a == b) => v,
        Ok(_) => return err("lines are not sorted point sets".into()),
        Err(e) => return err(e.to_string()),
    };
    if h.num_points() != cover.len() || h.num_lines() != g.n() {
        return err(format!(
            "{} points and {} lines for a cover of size {}",
            h.num_points(),
            h.num_lines(),
            cover.len()
        ));
    }
    for (i, &x) in map.iter().enumerate() {
        let expected: Vec<usize> = (0..cover.len())
            .filter(|&p| cover.cliques[p].contains(x))
            .collect();
        if h.line(i) != expected {
            return err(format!(
                "line {i} disagrees with the cliques containing vertex {x}"
            ));
        }
    }
    let ig = h
        .intersection_graph()
        .map_err(|e| CertificateError::Realization(e.to_string()))?
        .graph;
    let relabeled = ig.permuted(map);
    if relabeled != *g || canonical_form(&ig) != canonical_form(g) {
        return err("intersection graph differs from the input".into());
    }
    Ok(())
}

fn check_bounds_and_optimality(
    g: &Graph,
    doc: &CertificateDocument,
) -> Result<Optimality, CertificateError> {
    let fresh = bounds(g);
    if fresh != doc.bounds {
        return Err(CertificateError::Bounds(
            "report differs from a recomputation".into(),
        ));
    }
    let lower = match doc.mode {
        CoverMode::Full => {
            if !(fresh.best_lower <= doc.value && doc.value <= fresh.edge_bound) {
                return Err(CertificateError::Bounds(format!(
                    "value {} outside [{}, {}]",
                    doc.value, fresh.best_lower, fresh.edge_bound
                )));
            }
            fresh.best_lower
        }
        CoverMode::Reduced => {
            let w = clique_number(g);
            let lower = if g.m() == 0 {
                0
            } else {
                g.m().div_ceil(w * (w - 1) / 2)
            };
            if doc.value < lower {
                return Err(CertificateError::Bounds(format!(
                    "value {} below {lower}",
                    doc.value
                )));
            }
            lower
        }
    };
    if doc.value == lower {
        return Ok(Optimality::Bounds);
    }
    if g.n() > DEFAULT_ORACLE_CAP {
        return Ok(Optimality::Unproven);
    }
    let optimum = match doc.mode {
        CoverMode::Full => brute_force_v(g, DEFAULT_ORACLE_CAP),
        CoverMode::Reduced => brute_force_reduced_v(g, DEFAULT_ORACLE_CAP),
    }
    .expect("within the oracle cap");
    if optimum != doc.value {
        return Err(CertificateError::NotOptimal {
            value: doc.value,
            optimum,
        });
    }
    Ok(Optimality::Oracle)
}

fn check_classification(g: &Graph, doc: &CertificateDocument) -> Result<(), CertificateError> {
    let err = |s: String| Err(CertificateError::Classification(s));
    let claimed = &doc.classification.vertices;
    let fresh = interior_flags(g).vertices;
    if claimed.len() != fresh.len() {
        return err(format!(
            "{} entries for {} vertices",
            claimed.len(),
            fresh.len()
        ));
    }
    // Extremality is relative to v(G), which a reduced document does not establish.
    let v = match doc.mode {
        CoverMode::Full => Some(doc.value),
        CoverMode::Reduced => None,
    };
    for (x, (c, f)) in claimed.iter().zip(&fresh).enumerate() {
        let same_basic = (c.leaf, c.isolated, c.interior, c.strongly_interior)
            == (f.leaf, f.isolated, f.interior, f.strongly_interior);
        if !same_basic {
            return err(format!("vertex {x}: degree or interior flags differ"));
        }
        let expected = match (c.extremal_interior, f.extremal_interior, v) {
            (None, _, _) if f.strongly_interior => continue,
            (_, Some(fixed), _) => fixed,
            (_, None, _) if !f.strongly_interior => true,
            (_, None, Some(v)) => is_extremal_interior(g, x, v, &SolveOptions::default())
                .map_err(|e| CertificateError::Classification(e.to_string()))?,
            (_, None, None) => continue,
        };
        let expected = (Some(expected), Some(expected && f.strongly_interior));
        if (c.extremal_interior, c.extremal_strongly_interior) != expected {
            return err(format!("vertex {x}: extremal flags differ"));
        }
    }
    Ok(())
}

/// Single-field corruptions of a valid document, for mutation testing.
pub mod mutation {
    use super::*;

    #[derive(Debug, Clone)]
    pub struct Mutation {
        pub description: String,
        pub document: CertificateDocument,
    }

    /// Every single-field mutation of `doc` that changes a checked claim.
    /// `tool_version` and `timestamp` carry no claim and are not mutated.
    pub fn single_field_mutations(doc: &CertificateDocument) -> Vec<Mutation> {
        let mut out = Vec::new();
        let mut push = |description: String, f: &dyn Fn(&mut CertificateDocument)| {
            let mut d = doc.clone();
            f(&mut d);
            if d != *doc {
                out.push(Mutation {
                    description,
                    document: d,
                });
            }
        };
        push("schema".into(), &|d| d.schema = "linspect/2".into());
        push("command".into(), &|d| d.command = "bounds".into());
        push("tie-break".into(), &|d| {
            d.metadata.tie_break = "arbitrary".into()
        });
        push("deterministic flag".into(), &|d| {
            d.metadata.deterministic ^= true
        });
        push("value + 1".into(), &|d| d.value += 1);
        if doc.value > 0 {
            push("value - 1".into(), &|d| d.value -= 1);
        }
        push("extra vertex".into(), &|d| d.graph.n += 1);
        for i in 0..doc.graph.edges.len() {
            push(format!("drop edge {i}"), &|d| {
                d.graph.edges.remove(i);
            });
        }
        let n = doc.graph.n;
        for a in 0..n {
            for b in a + 1..n {
                if doc.graph.edges.binary_search(&(a, b)).is_err() {
                    push(format!("add edge ({a}, {b})"), &|d| {
                        let at = d.graph.edges.binary_search(&(a, b)).unwrap_err();
                        d.graph.edges.insert(at, (a, b));
                    });
                }
            }
        }
        for i in 0..doc.cover.len() {
            for x in 0..n {
                push(format!("flip vertex {x} in clique {i}"), &|d| {
                    let c = &mut d.cover[i];
                    match c.binary_search(&x) {
                        Ok(at) => {
                            c.remove(at);
                        }
                        Err(at) => c.insert(at, x),
                    }
                });
            }
        }
        push("mode".into(), &|d| {
            d.mode = match d.mode {
                CoverMode::Full => CoverMode::Reduced,
                CoverMode::Reduced => CoverMode::Full,
            }
        });
        if let Some(h) = &doc.realization {
            push("extra point".into(), &|d| {
                d.realization.as_mut().unwrap().points += 1
            });
            for i in 0..h.lines.len() {
                for p in 0..h.points {
                    push(format!("flip point {p} on line {i}"), &|d| {
                        let line = &mut d.realization.as_mut().unwrap().lines[i];
                        match line.binary_search(&p) {
                            Ok(at) => {
                                line.remove(at);
                            }
                            Err(at) => line.insert(at, p),
                        }
                    });
                }
            }
            push("drop realization".into(), &|d| d.realization = None);
        }
        if let Some(map) = &doc.line_to_vertex {
            for i in 0..map.len() {
                for j in i + 1..map.len() {
                    push(format!("swap lines {i} and {j}"), &|d| {
                        d.line_to_vertex.as_mut().unwrap().swap(i, j)
                    });
                }
            }
        }
        type Field = fn(&mut BoundsReport) -> &mut usize;
        let fields: [(&str, Field); 11] = [
            ("n", |b| &mut b.n),
            ("m", |b| &mut b.m),
            ("omega", |b| &mut b.omega),
            ("sqrt", |b| &mut b.sqrt_bound),
            ("seymour", |b| &mut b.seymour),
            ("two_alpha", |b| &mut b.two_alpha),
            ("k_independent", |b| &mut b.k_independent),
            ("flag", |b| &mut b.flag),
            ("flag_weak", |b| &mut b.flag_weak),
            ("edge_bound", |b| &mut b.edge_bound),
            ("best_lower", |b| &mut b.best_lower),
        ];
        for (name, field) in &fields {
            push(format!("bounds.{name} + 1"), &|d| {
                *field(&mut d.bounds) += 1
            });
        }
        push("bounds.binding".into(), &|d| d.bounds.binding.push('x'));
        for x in 0..doc.classification.vertices.len() {
            push(format!("flip interior of {x}"), &|d| {
                d.classification.vertices[x].interior ^= true
            });
            push(format!("flip leaf of {x}"), &|d| {
                d.classification.vertices[x].leaf ^= true
            });
            if let Some(e) = doc.classification.vertices[x].extremal_interior {
                push(format!("flip extremal of {x}"), &|d| {
                    d.classification.vertices[x].extremal_interior = Some(!e)
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_vertices;
    use crate::graph::families::*;
    use crate::solver::{linear_intersection_number, reduced_linear_intersection_number};

    fn document(g: &Graph) -> CertificateDocument {
        let opts = SolveOptions::default();
        let r = linear_intersection_number(g, &opts).unwrap();
        CertificateDocument::from_solve(g, &r, classify_vertices(g, &opts).unwrap(), true)
    }

    #[test]
    fn emitted_documents_verify() {
        for g in [
            complete(4),
            cycle(5),
            diamond(),
            paw(),
            bowtie(),
            empty(0),
            empty(2),
            petersen(),
        ] {
            let doc = document(&g);
            let back = CertificateDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            let ok = verify_document(&back).unwrap();
            assert_eq!(ok.value, doc.value);
            assert_ne!(ok.optimality, Optimality::Unproven, "{g:?}");
        }
    }

    #[test]
    fn reduced_documents_verify() {
        let g = diamond();
        let opts = SolveOptions::default();
        let r = reduced_linear_intersection_number(&g, &opts).unwrap();
        let doc =
            CertificateDocument::from_solve(&g, &r, classify_vertices(&g, &opts).unwrap(), true);
        assert!(doc.realization.is_none());
        assert_eq!(verify_document(&doc).unwrap().value, 3);
    }

    #[test]
    fn suboptimal_cover_is_rejected() {
        let g = complete(4);
        let mut doc = document(&g);
        doc.cover = vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        doc.value = 6;
        doc.realization = None;
        doc.line_to_vertex = None;
        doc.mode = CoverMode::Reduced;
        assert_eq!(
            verify_document(&doc),
            Err(CertificateError::NotOptimal {
                value: 6,
                optimum: 1
            })
        );
    }

    #[test]
    fn every_mutation_is_rejected() {
        for g in [
            diamond(),
            cycle(5),
            star(3),
            complete(3).disjoint_sum(&empty(1)).unwrap(),
        ] {
            let doc = document(&g);
            let muts = mutation::single_field_mutations(&doc);
            assert!(muts.len() > 20);
            for m in muts {
                assert!(
                    verify_document(&m.document).is_err(),
                    "accepted mutation: {}",
                    m.description
                );
            }
        }
    }

    #[test]
    fn nondeterministic_documents_need_a_timestamp() {
        let g = path(3);
        let opts = SolveOptions::default();
        let r = linear_intersection_number(&g, &opts).unwrap();
        let doc =
            CertificateDocument::from_solve(&g, &r, classify_vertices(&g, &opts).unwrap(), false);
        assert!(doc.metadata.timestamp.is_some());
        assert!(verify_document(&doc).is_ok());
    }
}
