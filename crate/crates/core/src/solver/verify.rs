use std::fmt;

use crate::graph::Graph;

use super::{CliqueCover, CoverMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    EmptyClique {
        index: usize,
    },
    VertexOutOfRange {
        index: usize,
        vertex: usize,
    },
    NotAClique {
        index: usize,
        missing: (usize, usize),
    },
    TrivialInReduced {
        index: usize,
    },
    EdgeUncovered {
        edge: (usize, usize),
    },
    EdgeCoveredTwice {
        edge: (usize, usize),
        cliques: (usize, usize),
    },
    VertexUndercovered {
        vertex: usize,
        count: usize,
    },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyClique { index } => write!(f, "clique {index} is empty"),
            Self::VertexOutOfRange { index, vertex } => {
                write!(f, "clique {index} contains unknown vertex {vertex}")
            }
            Self::NotAClique {
                index,
                missing: (a, b),
            } => {
                write!(
                    f,
                    "clique {index} is not a clique: {a} and {b} are not adjacent"
                )
            }
            Self::TrivialInReduced { index } => {
                write!(
                    f,
                    "clique {index} is trivial, which a reduced cover forbids"
                )
            }
            Self::EdgeUncovered { edge: (a, b) } => write!(f, "edge ({a}, {b}) is not covered"),
            Self::EdgeCoveredTwice {
                edge: (a, b),
                cliques: (i, j),
            } => {
                write!(f, "edge ({a}, {b}) lies in cliques {i} and {j}")
            }
            Self::VertexUndercovered { vertex, count } => {
                write!(f, "vertex {vertex} lies in {count} cliques, needs 2")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverVerdict {
    Valid { size: usize },
    Invalid(CoverViolation),
}

impl CoverVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverVerdict::Valid { .. })
    }
}

/// Checks a cover directly against the definition and reports the first
/// violation: per-clique problems by index, then edges in lexicographic
/// order, then vertices.
pub fn verify_cover(g: &Graph, cover: &CliqueCover) -> CoverVerdict {
    use CoverViolation::*;
    let n = g.n();
    for (index, c) in cover.cliques.iter().enumerate() {
        let members = c.to_vec();
        if members.is_empty() {
            return CoverVerdict::Invalid(EmptyClique { index });
        }
        if let Some(&vertex) = members.iter().find(|&&v| v >= n) {
            return CoverVerdict::Invalid(VertexOutOfRange { index, vertex });
        }
        for (i, &a) in members.iter().enumerate() {
            if let Some(&b) = members[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return CoverVerdict::Invalid(NotAClique {
                    index,
                    missing: (a, b),
                });
            }
        }
        if cover.mode == CoverMode::Reduced && members.len() < 2 {
            return CoverVerdict::Invalid(TrivialInReduced { index });
        }
    }
    for (a, b) in g.edges() {
        let mut holders = (0..cover.cliques.len())
            .filter(|&i| cover.cliques[i].contains(a) && cover.cliques[i].contains(b));
        match (holders.next(), holders.next()) {
            (None, _) => return CoverVerdict::Invalid(EdgeUncovered { edge: (a, b) }),
            (Some(i), Some(j)) => {
                return CoverVerdict::Invalid(EdgeCoveredTwice {
                    edge: (a, b),
                    cliques: (i, j),
                })
            }
            (Some(_), None) => {}
        }
    }
    if cover.mode == CoverMode::Full {
        for vertex in 0..n {
            let count = cover.cliques.iter().filter(|c| c.contains(vertex)).count();
            if count < 2 {
                return CoverVerdict::Invalid(VertexUndercovered { vertex, count });
            }
        }
    }
    CoverVerdict::Valid {
        size: cover.cliques.len(),
    }
}
