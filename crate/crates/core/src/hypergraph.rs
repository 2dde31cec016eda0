//! Linear hypergraphs (partial linear spaces): points `0..v`, lines given as
//! point sets, with two points on at most one common line and at least two
//! points on every line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliques;
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("points {points:?} lie on both line {lines:?}.0 and line {lines:?}.1")]
    L1Violation {
        points: (usize, usize),
        lines: (usize, usize),
    },
    #[error("line {0} has fewer than two points")]
    L2Violation(usize),
    #[error("line {0} is empty")]
    EmptyLine(usize),
    #[error("line {line} mentions point {point}, but there are only {points} points")]
    PointOutOfRange {
        line: usize,
        point: usize,
        points: usize,
    },
}

/// Raw input that has not been checked against the axioms yet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateHypergraph {
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CandidateHypergraph", into = "CandidateHypergraph")]
pub struct LinearHypergraph {
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl TryFrom<CandidateHypergraph> for LinearHypergraph {
    type Error = HypergraphError;

    fn try_from(c: CandidateHypergraph) -> Result<Self, HypergraphError> {
        validate(c)
    }
}

impl From<LinearHypergraph> for CandidateHypergraph {
    fn from(h: LinearHypergraph) -> Self {
        CandidateHypergraph {
            points: h.points,
            lines: h.lines,
        }
    }
}

/// Checks the axioms and returns the hypergraph with every line sorted and
/// deduplicated. The first violation in scan order is reported: per-line
/// problems by line index, then line pairs in lexicographic order.
pub fn validate(c: CandidateHypergraph) -> Result<LinearHypergraph, HypergraphError> {
    let mut lines = c.lines;
    for (i, line) in lines.iter_mut().enumerate() {
        line.sort_unstable();
        line.dedup();
        if let Some(&p) = line.iter().find(|&&p| p >= c.points) {
            return Err(HypergraphError::PointOutOfRange {
                line: i,
                point: p,
                points: c.points,
            });
        }
        match line.len() {
            0 => return Err(HypergraphError::EmptyLine(i)),
            1 => return Err(HypergraphError::L2Violation(i)),
            _ => {}
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let shared = sorted_intersection(&lines[i], &lines[j]);
            if shared.len() >= 2 {
                return Err(HypergraphError::L1Violation {
                    points: (shared[0], shared[1]),
                    lines: (i, j),
                });
            }
        }
    }
    Ok(LinearHypergraph {
        points: c.points,
        lines,
    })
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Intersection graph of a hypergraph together with the unique point shared
/// by each pair of meeting lines.
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    pub graph: Graph,
    pub shared_point: BTreeMap<(usize, usize), usize>,
}

/// A proper line coloring: meeting lines get distinct colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineColoring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl LinearHypergraph {
    pub fn new(points: usize, lines: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        validate(CandidateHypergraph { points, lines })
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[usize] {
        &self.lines[i]
    }

    /// Indices of the lines through point `p`.
    pub fn pencil(&self, p: usize) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|&i| self.lines[i].binary_search(&p).is_ok())
            .collect()
    }

    pub fn point_degree(&self, p: usize) -> usize {
        self.lines
            .iter()
            .filter(|l| l.binary_search(&p).is_ok())
            .count()
    }

    /// Number of incident (point, line) pairs.
    pub fn flag_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    pub fn intersection_graph(&self) -> Result<IntersectionGraph, GraphError> {
        let b = self.lines.len();
        if b > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(b));
        }
        let mut shared_point = BTreeMap::new();
        for i in 0..b {
            for j in i + 1..b {
                if let Some(&p) = sorted_intersection(&self.lines[i], &self.lines[j]).first() {
                    shared_point.insert((i, j), p);
                }
            }
        }
        let graph = Graph::from_edges(b, shared_point.keys().copied())?;
        Ok(IntersectionGraph {
            graph,
            shared_point,
        })
    }

    pub fn is_intersecting(&self) -> bool {
        let b = self.lines.len();
        (0..b).all(|i| {
            (i + 1..b).all(|j| !sorted_intersection(&self.lines[i], &self.lines[j]).is_empty())
        })
    }

    /// χ'(H) with a witnessing coloring, computed as χ of the intersection graph.
    pub fn chromatic_index(&self) -> Result<LineColoring, GraphError> {
        let ig = self.intersection_graph()?;
        let (count, colors) = cliques::optimal_coloring(&ig.graph);
        Ok(LineColoring { colors, count })
    }

    /// ω'(H): the largest family of pairwise meeting lines.
    pub fn clique_index(&self) -> Result<usize, GraphError> {
        Ok(cliques::clique_number(&self.intersection_graph()?.graph))
    }

    /// Drops points on no line and renumbers the rest; returns the old→new map.
    pub fn normalized(&self) -> (LinearHypergraph, Vec<Option<usize>>) {
        let mut used = vec![false; self.points];
        for l in &self.lines {
            for &p in l {
                used[p] = true;
            }
        }
        let mut map = vec![None; self.points];
        let mut next = 0;
        for (p, &u) in used.iter().enumerate() {
            if u {
                map[p] = Some(next);
                next += 1;
            }
        }
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| map[p].unwrap()).collect())
            .collect();
        (
            LinearHypergraph {
                points: next,
                lines,
            },
            map,
        )
    }

    /// Realization from a clique family: one point per clique, and the line of
    /// vertex `a` is the set of cliques containing `a`. The family must cover
    /// every edge exactly once and every vertex at least twice.
    pub fn from_clique_cover(n: usize, cliques: &[VertexSet]) -> Result<Self, HypergraphError> {
        let lines = (0..n)
            .map(|a| {
                (0..cliques.len())
                    .filter(|&i| cliques[i].contains(a))
                    .collect()
            })
            .collect();
        LinearHypergraph::new(cliques.len(), lines)
    }
}

/// Realization of `g` whose points are the edges of `g`, plus one private
/// point per leaf and two per isolated vertex. Line `x` is the set of edges at
/// `x` together with its private points.
pub fn dual_realization(g: &Graph) -> LinearHypergraph {
    let edges = g.edges();
    let mut lines: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        lines[a].push(i);
        lines[b].push(i);
    }
    let profile = g.degree_profile();
    let mut next = edges.len();
    for x in profile.leaves.iter() {
        lines[x].push(next);
        next += 1;
    }
    for x in profile.isolated.iter() {
        lines[x].extend([next, next + 1]);
        next += 2;
    }
    LinearHypergraph::new(next, lines).expect("edge-dual construction is linear")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::families::*;

    /// Projective plane from a cyclic difference set, e.g. `{0,1,3}` mod 7.
    pub(crate) fn cyclic_plane(v: usize, base: &[usize]) -> LinearHypergraph {
        let lines = (0..v)
            .map(|s| base.iter().map(|&d| (d + s) % v).collect())
            .collect();
        LinearHypergraph::new(v, lines).unwrap()
    }

    pub(crate) fn fano() -> LinearHypergraph {
        cyclic_plane(7, &[0, 1, 3])
    }

    fn near_pencil4() -> CandidateHypergraph {
        CandidateHypergraph {
            points: 4,
            lines: vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]],
        }
    }

    #[test]
    fn validation() {
        assert!(validate(near_pencil4()).is_ok());
        let bad = CandidateHypergraph {
            points: 4,
            lines: vec![vec![0, 1, 2], vec![0, 1, 3]],
        };
        assert_eq!(
            validate(bad),
            Err(HypergraphError::L1Violation {
                points: (0, 1),
                lines: (0, 1)
            })
        );
        let short = CandidateHypergraph {
            points: 6,
            lines: vec![vec![5]],
        };
        assert_eq!(validate(short), Err(HypergraphError::L2Violation(0)));
        let empty = CandidateHypergraph {
            points: 2,
            lines: vec![vec![0, 1], vec![]],
        };
        assert_eq!(validate(empty), Err(HypergraphError::EmptyLine(1)));
        let out = CandidateHypergraph {
            points: 2,
            lines: vec![vec![0, 2]],
        };
        assert_eq!(
            validate(out),
            Err(HypergraphError::PointOutOfRange {
                line: 0,
                point: 2,
                points: 2
            })
        );
        let dup = CandidateHypergraph {
            points: 2,
            lines: vec![vec![1, 1]],
        };
        assert_eq!(validate(dup), Err(HypergraphError::L2Violation(0)));
    }

    #[test]
    fn intersection_graphs() {
        let h = validate(near_pencil4()).unwrap();
        let ig = h.intersection_graph().unwrap();
        assert_eq!(ig.graph, complete(4));
        assert_eq!(ig.shared_point[&(0, 1)], 0);
        assert_eq!(ig.shared_point[&(1, 2)], 3);
        let disjoint = LinearHypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(disjoint.intersection_graph().unwrap().graph, empty(3));
        assert_eq!(fano().intersection_graph().unwrap().graph, complete(7));
    }

    #[test]
    fn pencils_are_cliques() {
        let h = fano();
        let g = h.intersection_graph().unwrap().graph;
        for p in 0..h.num_points() {
            let pencil: VertexSet = h.pencil(p).into_iter().collect();
            assert!(g.is_clique(pencil));
            assert_eq!(pencil.len(), h.point_degree(p));
        }
        assert_eq!(
            h.flag_count(),
            (0..7).map(|p| h.point_degree(p)).sum::<usize>()
        );
    }

    #[test]
    fn dual_realizations() {
        let h = dual_realization(&path(3));
        assert_eq!((h.num_points(), h.num_lines()), (4, 3));
        let h = dual_realization(&complete(1));
        assert_eq!((h.num_points(), h.num_lines()), (2, 1));
        let h = dual_realization(&complete(3));
        assert_eq!((h.num_points(), h.num_lines()), (3, 3));
        for g in [
            path(3),
            complete(1),
            complete(3),
            cycle(5),
            empty(3),
            petersen(),
        ] {
            assert_eq!(dual_realization(&g).intersection_graph().unwrap().graph, g);
        }
    }

    #[test]
    fn chromatic_indices() {
        let h = validate(near_pencil4()).unwrap();
        assert_eq!(h.chromatic_index().unwrap().count, 4);
        let disjoint = LinearHypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(disjoint.chromatic_index().unwrap().count, 1);
        let c = fano().chromatic_index().unwrap();
        assert_eq!(c.count, 7);
        let ig = fano().intersection_graph().unwrap().graph;
        for (a, b) in ig.edges() {
            assert_ne!(c.colors[a], c.colors[b]);
        }
    }

    #[test]
    fn intersecting_families() {
        let h = validate(near_pencil4()).unwrap();
        assert!(h.is_intersecting());
        assert_eq!(h.num_lines(), h.num_points());
        assert!(!LinearHypergraph::new(4, vec![vec![0, 1], vec![2, 3]])
            .unwrap()
            .is_intersecting());
        let f = fano();
        assert!(f.is_intersecting());
        assert_eq!((f.num_lines(), f.num_points()), (7, 7));
        let pg3 = cyclic_plane(13, &[0, 1, 3, 9]);
        assert!(pg3.is_intersecting());
        assert!(pg3.num_lines() <= pg3.num_points());
    }

    #[test]
    fn clique_indices() {
        assert_eq!(validate(near_pencil4()).unwrap().clique_index().unwrap(), 4);
        let disjoint = LinearHypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(disjoint.clique_index().unwrap(), 1);
        assert_eq!(dual_realization(&cycle(5)).clique_index().unwrap(), 2);
    }

    #[test]
    fn normalization_strips_unused_points() {
        let h = LinearHypergraph::new(5, vec![vec![0, 3], vec![3, 4]]).unwrap();
        let (norm, map) = h.normalized();
        assert_eq!(norm.num_points(), 3);
        assert_eq!(map, vec![Some(0), None, None, Some(1), Some(2)]);
        assert_eq!(norm.lines(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn serde_rejects_invalid() {
        let h = validate(near_pencil4()).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<LinearHypergraph>(&text).unwrap(), h);
        let bad = r#"{"points":3,"lines":[[0,1,2],[0,1]]}"#;
        assert!(serde_json::from_str::<LinearHypergraph>(bad).is_err());
    }
}
