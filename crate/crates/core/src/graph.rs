//! Finite simple undirected graphs on dense vertex indices `0..n`.
//!
//! Adjacency is stored as one `u64` bitset row per vertex, so a graph has at
//! most [`MAX_VERTICES`] vertices. Graphs are immutable once built; every
//! surgery produces a new value.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
}

/// A set of vertices of one graph, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares by sorted member list, e.g. `{0,1} < {0,1,2} < {0,2} < {1}`.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Leaves and isolated vertices of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub leaves: VertexSet,
    pub isolated: VertexSet,
}

impl DegreeProfile {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeList", into = "EdgeList")]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from vertex pairs. Repeated pairs are collapsed; loops
    /// and out-of-range indices are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    pub(crate) fn from_rows(adj: Vec<u64>) -> Graph {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Open neighborhood of `v`, panicking on an invalid index.
    pub fn nbrs(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.nbrs(v))
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for a in 0..self.n {
            for b in VertexSet(self.adj[a] & !((2u64 << a) - 1)).iter() {
                out.push((a, b));
            }
        }
        out
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut p = DegreeProfile {
            leaves: VertexSet::EMPTY,
            isolated: VertexSet::EMPTY,
        };
        for v in 0..self.n {
            match self.degree(v) {
                0 => p.isolated.insert(v),
                1 => p.leaves.insert(v),
                _ => {}
            }
        }
        p
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.nbrs(v)))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.nbrs(v).intersection(s).is_empty())
    }

    /// Shortest-path distance; `None` when `a` and `b` lie in different
    /// components.
    pub fn distance(&self, a: usize, b: usize) -> Result<Option<usize>, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let mut dist = vec![usize::MAX; self.n];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                return Ok(Some(dist[x]));
            }
            for y in self.nbrs(x).iter() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_sum(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.nbrs(v));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced on `keep`, re-indexed densely in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let order = keep.to_vec();
        let adj = order
            .iter()
            .map(|&v| compress(self.adj[v] & keep.bits(), keep.bits()))
            .collect();
        Graph {
            n: order.len(),
            adj,
        }
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|v| all & !self.adj[v] & !(1 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    pub fn without_edge(&self, a: usize, b: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(a, b) {
            return Err(GraphError::NotAnEdge(a, b));
        }
        let mut adj = self.adj.clone();
        adj[a] &= !(1 << b);
        adj[b] &= !(1 << a);
        Ok(Graph { n: self.n, adj })
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for (a, b) in self.edges() {
            adj[perm[a]] |= 1 << perm[b];
            adj[perm[b]] |= 1 << perm[a];
        }
        Graph { n: self.n, adj }
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .into_iter()
            .any(|(a, b)| self.adj[a] & self.adj[b] != 0)
    }

    /// All triangles as sorted vertex sets, in lexicographic order.
    pub fn triangles(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            let above = !((2u64 << b) - 1);
            for c in VertexSet(self.adj[a] & self.adj[b] & above).iter() {
                out.push(VertexSet::from_iter([a, b, c]));
            }
        }
        out
    }
}

/// Serialized form of a graph: vertex count and sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TryFrom<EdgeList> for Graph {
    type Error = GraphError;

    fn try_from(e: EdgeList) -> Result<Graph, GraphError> {
        Graph::from_edges(e.n, e.edges)
    }
}

impl From<Graph> for EdgeList {
    fn from(g: Graph) -> EdgeList {
        EdgeList {
            n: g.n,
            edges: g.edges(),
        }
    }
}

/// Packs the bits of `row` selected by `mask` into the low bits.
fn compress(row: u64, mask: u64) -> u64 {
    let mut out = 0;
    for (i, v) in VertexSet(mask).iter().enumerate() {
        if row >> v & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Standard graph families used throughout the tests and the CLI.
pub mod families {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn empty(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    /// `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Graph {
        Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))).unwrap()
    }

    /// Complete multipartite graph with `parts` classes of `size` vertices.
    pub fn complete_multipartite(parts: usize, size: usize) -> Graph {
        let n = parts * size;
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, pairs.filter(|&(a, b)| a / size != b / size)).unwrap()
    }

    /// `K_4` minus the edge `{2,3}`.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap()
    }

    /// Triangle `{0,1,2}` with the pendant edge `{2,3}`.
    pub fn paw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }
}
