//! Exact linear intersection numbers.
//!
//! `v(G)` is the fewest cliques such that every edge lies in exactly one of
//! them and every vertex in at least two (singletons allowed). `v̄(G)` drops
//! the vertex condition and uses non-trivial cliques only. Both are found by
//! the branch and bound in [`search`], seeded with the lower bounds from
//! [`bounds`] and cross-checked against the exhaustive [`oracle`].

pub mod bounds;
pub mod oracle;
mod search;
mod verify;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::hypergraph::LinearHypergraph;

pub use bounds::{bounds, BoundsReport};
pub use oracle::{brute_force_reduced_v, brute_force_v, OracleError, DEFAULT_ORACLE_CAP};
pub use verify::{verify_cover, CoverVerdict, CoverViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// The search ran out of budget; the true value lies in `[lower, upper]`.
    #[error("budget exceeded; value lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max: u64) -> Self {
        Budget {
            max_nodes: Some(max),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Seed the search with the closed form for recognized graph classes.
    /// The certificate is still searched for and verified, but optimality
    /// then rests on the closed form instead of the search.
    pub fast_path: bool,
}

impl SolveOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SolveOptions {
            budget,
            fast_path: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    /// Every vertex in at least two cliques; singletons allowed.
    Full,
    /// Non-trivial cliques only.
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub mode: CoverMode,
    pub cliques: Vec<VertexSet>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// Prunes per bound term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    /// Cost of the cliques already chosen.
    pub chosen: u64,
    /// At least one more clique while edges remain.
    pub one_more: u64,
    /// An uncovered neighborhood that is not a clique needs two cliques.
    pub neighborhood: u64,
    /// Remaining edges divided by the edges of a largest clique.
    pub capacity: u64,
    /// Singletons forced by vertices that cannot reach two cliques.
    pub debt: u64,
    /// Remaining siblings cut after the incumbent improved.
    pub incumbent: u64,
}

impl PruneCounts {
    fn record(&mut self, b: search::Bound) {
        use search::Bound::*;
        let slot = match b {
            Chosen => &mut self.chosen,
            OneMore => &mut self.one_more,
            Neighborhood => &mut self.neighborhood,
            Capacity => &mut self.capacity,
            Debt => &mut self.debt,
            Incumbent => &mut self.incumbent,
        };
        *slot += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub prunes: PruneCounts,
    /// Lower bound the search was allowed to stop at.
    pub root_lower_bound: usize,
    pub wall_time: Duration,
    /// Set when the closed form supplied the root lower bound.
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub value: usize,
    pub certificate: CliqueCover,
    /// Points are the cliques of the certificate; line `a` realizes vertex `a`.
    /// Absent for reduced covers.
    pub realization: Option<LinearHypergraph>,
    pub bounds: BoundsReport,
    pub stats: SolveStats,
}

/// v(G) with a verified certificate and its realizing linear hypergraph.
pub fn linear_intersection_number(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    solve(g, CoverMode::Full, opts)
}

/// v̄(G) with a verified reduced certificate.
pub fn reduced_linear_intersection_number(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    solve(g, CoverMode::Reduced, opts)
}

fn solve(g: &Graph, mode: CoverMode, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let started = Instant::now();
    let report = bounds(g);
    let mut closed_form = None;
    let root = match mode {
        CoverMode::Full => {
            let mut root = report.best_lower;
            if opts.fast_path {
                if let Some(cf) = classify::closed_form_v(g) {
                    root = root.max(cf.value);
                    closed_form = Some(cf.describe());
                }
            }
            root
        }
        CoverMode::Reduced => reduced_lower_bound(g),
    };
    let (outcome, stats) = search::run(search::SearchSetup {
        graph: g,
        mode,
        forced: Vec::new(),
        stop_at: root,
        ceiling: None,
        budget: &opts.budget,
    });
    let cover = match outcome {
        search::Outcome::Found { cover, .. } => cover,
        search::Outcome::BudgetExceeded { best } => {
            let upper = best.unwrap_or(report.edge_bound);
            return Err(SolveError::BudgetExceeded { lower: root, upper });
        }
        search::Outcome::NoneBelowCeiling => unreachable!("no ceiling was set"),
    };
    let certificate = CliqueCover {
        mode,
        cliques: cover,
    };
    let value = certificate.len();
    match verify_cover(g, &certificate) {
        CoverVerdict::Valid { size } => assert_eq!(size, value),
        CoverVerdict::Invalid(why) => panic!("solver emitted an invalid cover: {why}"),
    }
    let realization = match mode {
        CoverMode::Full => {
            assert!(
                report.best_lower <= value && value <= report.edge_bound,
                "{report:?} vs {value}"
            );
            let h = LinearHypergraph::from_clique_cover(g.n(), &certificate.cliques)
                .expect("a valid full cover yields a linear hypergraph");
            assert_eq!(&h.intersection_graph()?.graph, g);
            Some(h)
        }
        CoverMode::Reduced => None,
    };
    Ok(SolveResult {
        value,
        certificate,
        realization,
        bounds: report,
        stats: SolveStats {
            nodes: stats.nodes,
            prunes: stats.prunes,
            root_lower_bound: root,
            wall_time: started.elapsed(),
            closed_form,
        },
    })
}

fn reduced_lower_bound(g: &Graph) -> usize {
    let m = g.m();
    if m == 0 {
        return 0;
    }
    let w = crate::cliques::clique_number(g);
    m.div_ceil(w * (w - 1) / 2)
}

/// Whether some cover containing `forced` costs at most `target`. With
/// `target = v(G)` and `forced = G_x ∪ {x}` this decides extremal interiority.
pub fn forced_cover_within(
    g: &Graph,
    forced: VertexSet,
    target: usize,
    budget: &Budget,
) -> Result<bool, SolveError> {
    if forced.is_empty() || !g.is_clique(forced) {
        return Ok(false);
    }
    let forced = if forced.len() >= 2 {
        vec![forced]
    } else {
        Vec::new()
    };
    let (outcome, _) = search::run(search::SearchSetup {
        graph: g,
        mode: CoverMode::Full,
        forced,
        stop_at: target,
        ceiling: Some(target + 1),
        budget,
    });
    match outcome {
        search::Outcome::Found { cost, .. } => Ok(cost <= target),
        search::Outcome::NoneBelowCeiling => Ok(false),
        search::Outcome::BudgetExceeded { .. } => Err(SolveError::BudgetExceeded {
            lower: target,
            upper: target + 1,
        }),
    }
}

/// Outcome of comparing χ(G) with v(G).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EflReport {
    pub chi: usize,
    pub v: usize,
    pub holds: bool,
    pub margin: i64,
}

pub fn verify_efl(g: &Graph, opts: &SolveOptions) -> Result<EflReport, SolveError> {
    let chi = crate::cliques::chromatic_number(g);
    let v = linear_intersection_number(g, opts)?.value;
    Ok(EflReport {
        chi,
        v,
        holds: chi <= v,
        margin: v as i64 - chi as i64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDeleteReport {
    pub v_before: usize,
    pub v_after: usize,
    /// `v(G - e) >= v(G) - 1`.
    pub holds: bool,
}

pub fn edge_delete_check(
    g: &Graph,
    edge: (usize, usize),
    opts: &SolveOptions,
) -> Result<EdgeDeleteReport, SolveError> {
    let smaller = g.without_edge(edge.0, edge.1)?;
    let v_before = linear_intersection_number(g, opts)?.value;
    let v_after = linear_intersection_number(&smaller, opts)?.value;
    Ok(EdgeDeleteReport {
        v_before,
        v_after,
        holds: v_after + 1 >= v_before,
    })
}
