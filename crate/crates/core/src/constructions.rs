//! Graph surgeries together with the value of v(G) each one predicts.
//!
//! Predictions are emitted as [`Claim`]s that name the graph they concern
//! and can be checked with [`SurgeryOutcome::check`]; they never stand in
//! for a solve.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::is_extremal_interior;
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::hypergraph::{HypergraphError, LinearHypergraph};
use crate::solver::{
    linear_intersection_number, reduced_linear_intersection_number, SolveError, SolveOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(
        "vertices {0} and {1} are adjacent or equal; only non-adjacent vertices can be collapsed"
    )]
    AdjacentEndpoints(usize, usize),
    #[error("{0} is not a clique")]
    NotAClique(VertexSet),
    #[error("clique {0} has fewer than three vertices")]
    CliqueTooSmall(VertexSet),
    #[error("a near-pencil needs at least 3 points, got {0}")]
    NearPencilTooSmall(usize),
    #[error("lines {0} and {1} meet, so no new common point can be added")]
    LinesMeet(usize, usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Gluing two graphs at a vertex.
    Gluing,
    /// Merging two far-apart non-adjacent vertices.
    Collapse,
    /// Removing all edges of a clique with at least three vertices.
    CliqueRemoval,
    /// Deleting one edge.
    EdgeDeletion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    /// The graph the surgery started from (single-input surgeries only).
    Input,
    Result,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: usize, rhs: usize) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Claim {
    /// `v(subject) relation value`.
    V {
        subject: Subject,
        relation: Relation,
        value: usize,
    },
    /// `v̄(subject) relation value`.
    ReducedV {
        subject: Subject,
        relation: Relation,
        value: usize,
    },
    /// The vertex is not an extremal interior vertex of the result.
    NotExtremal { vertex: usize },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |s: &Subject| match s {
            Subject::Input => "G",
            Subject::Result => "result",
        };
        match self {
            Claim::V {
                subject,
                relation,
                value,
            } => {
                write!(f, "v({}) {} {value}", name(subject), relation.symbol())
            }
            Claim::ReducedV {
                subject,
                relation,
                value,
            } => {
                write!(f, "vbar({}) {} {value}", name(subject), relation.symbol())
            }
            Claim::NotExtremal { vertex } => write!(f, "{vertex} not in Int_e(result)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub actual: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryOutcome {
    pub result: Graph,
    /// One old→new map per input graph; `None` marks a dropped vertex.
    pub vertex_maps: Vec<Vec<Option<usize>>>,
    pub lemma: Lemma,
    /// Empty when the lemma's hypotheses fail.
    pub claims: Vec<Claim>,
    /// Whether the equality case of the lemma applies, where it has one.
    pub equality: Option<bool>,
    pub note: String,
    input: Option<Graph>,
}

impl SurgeryOutcome {
    /// Solves the graphs the claims mention and compares.
    pub fn check(&self, opts: &SolveOptions) -> Result<Vec<ClaimCheck>, SolveError> {
        let graph = |s: &Subject| match s {
            Subject::Input => self.input.as_ref().expect("input kept for input claims"),
            Subject::Result => &self.result,
        };
        let mut out = Vec::new();
        let mut v_result = None;
        for claim in &self.claims {
            let (actual, holds) = match claim {
                Claim::V {
                    subject,
                    relation,
                    value,
                } => {
                    let actual = linear_intersection_number(graph(subject), opts)?.value;
                    if *subject == Subject::Result {
                        v_result = Some(actual);
                    }
                    (actual, relation.holds(actual, *value))
                }
                Claim::ReducedV {
                    subject,
                    relation,
                    value,
                } => {
                    let actual = reduced_linear_intersection_number(graph(subject), opts)?.value;
                    (actual, relation.holds(actual, *value))
                }
                Claim::NotExtremal { vertex } => {
                    let v = match v_result {
                        Some(v) => v,
                        None => linear_intersection_number(&self.result, opts)?.value,
                    };
                    let ext = is_extremal_interior(&self.result, *vertex, v, opts)?;
                    (ext as usize, !ext)
                }
            };
            out.push(ClaimCheck {
                claim: claim.clone(),
                actual,
                holds,
            });
        }
        Ok(out)
    }
}

/// Glues `g1` and `g2` by identifying `a1` with `a2`. Vertices of `g1` keep
/// their labels, the other vertices of `g2` follow in order.
pub fn join_at_vertex(
    g1: &Graph,
    g2: &Graph,
    a1: usize,
    a2: usize,
    opts: &SolveOptions,
) -> Result<SurgeryOutcome, SurgeryError> {
    g1.check_vertex(a1)?;
    g2.check_vertex(a2)?;
    let n = g1.n() + g2.n() - 1;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let map2: Vec<Option<usize>> = (0..g2.n())
        .map(|u| {
            Some(if u == a2 {
                a1
            } else {
                g1.n() + u - usize::from(u > a2)
            })
        })
        .collect();
    let edges = g1.edges().into_iter().chain(
        g2.edges()
            .into_iter()
            .map(|(x, y)| (map2[x].unwrap(), map2[y].unwrap())),
    );
    let result = Graph::from_edges(n, edges)?;
    let map1 = (0..g1.n()).map(Some).collect();

    let s1 = linear_intersection_number(g1, opts)?;
    let s2 = linear_intersection_number(g2, opts)?;
    let vbar1 = reduced_linear_intersection_number(g1, opts)?.value;
    let vbar2 = reduced_linear_intersection_number(g2, opts)?.value;
    let reduced = Claim::ReducedV {
        subject: Subject::Result,
        relation: Relation::Eq,
        value: vbar1 + vbar2,
    };
    let (claims, note) = if g1.degree(a1) == 0 || g2.degree(a2) == 0 {
        let value = s1.value + s2.value - 2;
        let v = Claim::V {
            subject: Subject::Result,
            relation: Relation::Eq,
            value,
        };
        (vec![v, reduced], "glued at an isolated vertex".to_string())
    } else {
        let t = usize::from(is_extremal_interior(g1, a1, s1.value, opts)?)
            + usize::from(is_extremal_interior(g2, a2, s2.value, opts)?);
        let value = s1.value + s2.value - t;
        let v = Claim::V {
            subject: Subject::Result,
            relation: Relation::Eq,
            value,
        };
        (
            vec![v, Claim::NotExtremal { vertex: a1 }, reduced],
            format!("t = {t}"),
        )
    };
    Ok(SurgeryOutcome {
        result,
        vertex_maps: vec![map1, map2],
        lemma: Lemma::Gluing,
        claims,
        equality: None,
        note,
        input: None,
    })
}

/// Merges the non-adjacent vertices `a` and `b`; the merged vertex takes the
/// smaller label and labels above the larger one shift down by one.
pub fn collapse(
    g: &Graph,
    a: usize,
    b: usize,
    opts: &SolveOptions,
) -> Result<SurgeryOutcome, SurgeryError> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b || g.has_edge(a, b) {
        return Err(SurgeryError::AdjacentEndpoints(a, b));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let map: Vec<Option<usize>> = (0..g.n())
        .map(|u| Some(if u == hi { lo } else { u - usize::from(u > hi) }))
        .collect();
    let result = Graph::from_edges(
        g.n() - 1,
        g.edges()
            .into_iter()
            .map(|(x, y)| (map[x].unwrap(), map[y].unwrap())),
    )?;
    let d = g.distance(a, b)?;
    let far = |k: usize| d.is_none_or(|d| d >= k);
    let interior = |x: usize| g.is_clique(g.nbrs(x));
    let dist = d.map_or("infinite".to_string(), |d| d.to_string());
    let (claims, note) = if far(3) {
        let v = linear_intersection_number(g, opts)?.value;
        if far(4) && !interior(a) && !interior(b) {
            let c = Claim::V {
                subject: Subject::Result,
                relation: Relation::Eq,
                value: v,
            };
            (vec![c], format!("distance {dist}, endpoints not interior"))
        } else {
            let c = Claim::V {
                subject: Subject::Result,
                relation: Relation::Le,
                value: v,
            };
            (vec![c], format!("distance {dist}"))
        }
    } else {
        (
            Vec::new(),
            format!("lemma inapplicable: distance {dist} < 3"),
        )
    };
    Ok(SurgeryOutcome {
        result,
        vertex_maps: vec![map],
        lemma: Lemma::Collapse,
        claims,
        equality: None,
        note,
        input: Some(g.clone()),
    })
}

/// Deletes the edges inside the clique `c`. The residual keeps every vertex
/// outside `c` and those clique vertices that still have an edge.
pub fn remove_clique(
    g: &Graph,
    c: VertexSet,
    opts: &SolveOptions,
) -> Result<SurgeryOutcome, SurgeryError> {
    for v in c.iter() {
        g.check_vertex(v)?;
    }
    if !g.is_clique(c) {
        return Err(SurgeryError::NotAClique(c));
    }
    if c.len() < 3 {
        return Err(SurgeryError::CliqueTooSmall(c));
    }
    let kept_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(x, y)| !(c.contains(x) && c.contains(y)))
        .collect();
    let mut keep = g.vertices().difference(c);
    for &(x, y) in &kept_edges {
        keep.insert(x);
        keep.insert(y);
    }
    let mut map = vec![None; g.n()];
    for (i, v) in keep.iter().enumerate() {
        map[v] = Some(i);
    }
    let result = Graph::from_edges(
        keep.len(),
        kept_edges
            .iter()
            .map(|&(x, y)| (map[x].unwrap(), map[y].unwrap())),
    )?;
    let attached = keep.intersection(c);
    let size = c.len();
    let v_res = linear_intersection_number(&result, opts)?.value;
    let (relation, value, equality, note) = match attached.len() {
        0 => (
            Relation::Eq,
            v_res + size,
            true,
            "clique is a component".to_string(),
        ),
        1 => {
            let a = map[attached.min().unwrap()].unwrap();
            let t = usize::from(is_extremal_interior(&result, a, v_res, opts)?);
            let note = format!("single attachment, t = {t}");
            (Relation::Eq, v_res + size - t, t == 0, note)
        }
        r => (
            Relation::Le,
            v_res + size - 1,
            false,
            format!("{r} attachment vertices"),
        ),
    };
    Ok(SurgeryOutcome {
        result,
        vertex_maps: vec![map],
        lemma: Lemma::CliqueRemoval,
        claims: vec![Claim::V {
            subject: Subject::Input,
            relation,
            value,
        }],
        equality: Some(equality),
        note,
        input: Some(g.clone()),
    })
}

pub fn delete_edge(
    g: &Graph,
    edge: (usize, usize),
    opts: &SolveOptions,
) -> Result<SurgeryOutcome, SurgeryError> {
    let result = g.without_edge(edge.0, edge.1)?;
    let v = linear_intersection_number(g, opts)?.value;
    Ok(SurgeryOutcome {
        result,
        vertex_maps: vec![(0..g.n()).map(Some).collect()],
        lemma: Lemma::EdgeDeletion,
        claims: vec![Claim::V {
            subject: Subject::Result,
            relation: Relation::Ge,
            value: v - 1,
        }],
        equality: None,
        note: String::new(),
        input: Some(g.clone()),
    })
}

/// Adds a new point on the disjoint lines `x` and `y`, turning a realization
/// of `G - xy` into one of `G`.
pub fn add_common_point(
    h: &LinearHypergraph,
    x: usize,
    y: usize,
) -> Result<LinearHypergraph, SurgeryError> {
    let (lx, ly) = (h.line(x), h.line(y));
    if x == y || lx.iter().any(|p| ly.contains(p)) {
        return Err(SurgeryError::LinesMeet(x, y));
    }
    let infinity = h.num_points();
    let mut lines = h.lines().to_vec();
    lines[x].push(infinity);
    lines[y].push(infinity);
    Ok(LinearHypergraph::new(infinity + 1, lines)?)
}

/// One line through points `0..n-1` and a two-point line joining each of
/// them to point `n-1`.
pub fn near_pencil(n: usize) -> Result<LinearHypergraph, SurgeryError> {
    if n < 3 {
        return Err(SurgeryError::NearPencilTooSmall(n));
    }
    let mut lines = vec![(0..n - 1).collect::<Vec<_>>()];
    lines.extend((0..n - 1).map(|i| vec![i, n - 1]));
    Ok(LinearHypergraph::new(n, lines)?)
}
