//! Clique machinery: enumeration, ω, α, χ, θ, the per-vertex line-size bound
//! `k(a)`, and the clique graph `C_G`.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Default cap on the number of non-trivial cliques materialized for `C_G`.
pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("clique graph has more than {cap} vertices")]
    CliqueGraphTooLarge { cap: usize },
}

/// Every clique of size at least `min_size`, in lexicographic order of the
/// sorted member lists (`{0,1} < {0,1,2} < {0,2}`).
pub fn enumerate_cliques(g: &Graph, min_size: usize) -> CliqueIter<'_> {
    let root = (VertexSet::EMPTY, g.vertices().bits());
    CliqueIter {
        g,
        min_size: min_size.max(1),
        stack: vec![root],
    }
}

pub struct CliqueIter<'a> {
    g: &'a Graph,
    min_size: usize,
    stack: Vec<(VertexSet, u64)>,
}

impl Iterator for CliqueIter<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            let (clique, cands) = self.stack.last_mut()?;
            if *cands == 0 {
                self.stack.pop();
                continue;
            }
            let v = cands.trailing_zeros() as usize;
            *cands &= *cands - 1;
            let child = clique.with(v);
            let child_cands = *cands & self.g.nbrs(v).bits();
            if child.len() + child_cands.count_ones() as usize >= self.min_size {
                self.stack.push((child, child_cands));
                if child.len() >= self.min_size {
                    return Some(child);
                }
            }
        }
    }
}

/// A maximum clique, lexicographically first among those found by the search.
pub fn maximum_clique(g: &Graph) -> VertexSet {
    fn grow(g: &Graph, cur: VertexSet, mut cands: u64, best: &mut VertexSet) {
        if cands == 0 {
            if cur.len() > best.len() {
                *best = cur;
            }
            return;
        }
        while cands != 0 {
            if cur.len() + cands.count_ones() as usize <= best.len() {
                return;
            }
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            grow(g, cur.with(v), cands & g.nbrs(v).bits(), best);
        }
        if cur.len() > best.len() {
            *best = cur;
        }
    }
    let mut best = VertexSet::EMPTY;
    grow(g, VertexSet::EMPTY, g.vertices().bits(), &mut best);
    best
}

/// ω(G); 0 for the graph without vertices.
pub fn clique_number(g: &Graph) -> usize {
    maximum_clique(g).len()
}

/// α(G).
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// Exact chromatic number together with a witnessing proper coloring.
///
/// DSATUR branch and bound: the greedy DSATUR coloring is the first
/// incumbent and ω(G) the global lower bound.
pub fn optimal_coloring(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let lower = clique_number(g);
    let mut state = Dsatur::new(g);
    let greedy = state.greedy();
    let mut best = (greedy.iter().max().map_or(0, |c| c + 1), greedy);
    if best.0 > lower {
        state.reset();
        state.search(0, lower, &mut best);
    }
    best
}

pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).0
}

/// θ(H): fewest cliques partitioning the vertex set, i.e. χ of the complement.
pub fn clique_cover_number(h: &Graph) -> usize {
    chromatic_number(&h.complement())
}

/// Lower bound on the number of points of line `a` in any realization:
/// `max{θ(G_a), 2}`.
pub fn k_value(g: &Graph, a: usize) -> Result<usize, crate::graph::GraphError> {
    let nbhd = g.neighborhood(a)?;
    Ok(clique_cover_number(&g.induced(nbhd)).max(2))
}

/// `f(G) = Σ_a k(a)`.
pub fn flag_sum(g: &Graph) -> usize {
    k_values(g).iter().sum()
}

pub fn k_values(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|a| k_value(g, a).expect("vertex in range"))
        .collect()
}

/// Maximum total weight of an independent set, with the set itself.
pub fn max_weight_independent_set(g: &Graph, weights: &[usize]) -> (usize, VertexSet) {
    fn go(
        g: &Graph,
        w: &[usize],
        cur: VertexSet,
        cur_w: usize,
        cands: VertexSet,
        best: &mut (usize, VertexSet),
    ) {
        let Some(v) = cands.min() else {
            if cur_w > best.0 {
                *best = (cur_w, cur);
            }
            return;
        };
        if cur_w + cands.iter().map(|u| w[u]).sum::<usize>() <= best.0 {
            return;
        }
        let rest = cands.without(v);
        go(
            g,
            w,
            cur.with(v),
            cur_w + w[v],
            rest.difference(g.nbrs(v)),
            best,
        );
        go(g, w, cur, cur_w, rest, best);
    }
    let mut best = (0, VertexSet::EMPTY);
    go(g, weights, VertexSet::EMPTY, 0, g.vertices(), &mut best);
    best
}

/// Non-trivial cliques `𝒞(G)`; two are adjacent in `C_G` when they share an
/// edge of `G`.
pub struct CliqueGraph<'a> {
    g: &'a Graph,
}

pub fn clique_graph(g: &Graph) -> CliqueGraph<'_> {
    CliqueGraph { g }
}

impl<'a> CliqueGraph<'a> {
    pub fn cliques(&self) -> CliqueIter<'a> {
        enumerate_cliques(self.g, 2)
    }

    pub fn adjacent(a: VertexSet, b: VertexSet) -> bool {
        a != b && a.intersection(b).len() >= 2
    }

    pub fn materialize(&self, cap: usize) -> Result<CliqueGraphView, CliqueError> {
        let mut cliques = Vec::new();
        for c in self.cliques() {
            if cliques.len() == cap {
                return Err(CliqueError::CliqueGraphTooLarge { cap });
            }
            cliques.push(c);
        }
        Ok(CliqueGraphView { cliques })
    }
}

#[derive(Debug, Clone)]
pub struct CliqueGraphView {
    pub cliques: Vec<VertexSet>,
}

impl CliqueGraphView {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        CliqueGraph::adjacent(self.cliques[i], self.cliques[j])
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adjacent(i, j))
    }
}

/// v̄(G) as the smallest maximal independent set of `C_G`.
pub fn reduced_v_via_clique_graph(g: &Graph, cap: usize) -> Result<usize, CliqueError> {
    let view = clique_graph(g).materialize(cap)?;
    let k = view.len();
    let words = k.div_ceil(64).max(1);
    let mut closed = vec![vec![0u64; words]; k];
    for (i, row) in closed.iter_mut().enumerate() {
        row[i / 64] |= 1 << (i % 64);
        for j in view.neighbors(i) {
            row[j / 64] |= 1 << (j % 64);
        }
    }

    fn first_unset(bits: &[u64], k: usize) -> Option<usize> {
        bits.iter()
            .enumerate()
            .find_map(|(w, &b)| (!b != 0).then(|| w * 64 + (!b).trailing_zeros() as usize))
            .filter(|&i| i < k)
    }

    fn go(closed: &[Vec<u64>], k: usize, dominated: &mut Vec<u64>, size: usize, best: &mut usize) {
        let Some(u) = first_unset(dominated, k) else {
            *best = (*best).min(size);
            return;
        };
        if size + 1 >= *best {
            return;
        }
        for w in 0..k {
            let in_closed = closed[u][w / 64] >> (w % 64) & 1 == 1;
            let free = dominated[w / 64] >> (w % 64) & 1 == 0;
            if in_closed && free {
                let saved = dominated.clone();
                for (d, c) in dominated.iter_mut().zip(&closed[w]) {
                    *d |= c;
                }
                go(closed, k, dominated, size + 1, best);
                *dominated = saved;
            }
        }
    }

    let mut dominated = vec![0u64; words];
    for i in k..words * 64 {
        dominated[i / 64] |= 1 << (i % 64);
    }
    let mut best = usize::MAX;
    go(&closed, k, &mut dominated, 0, &mut best);
    Ok(best)
}

struct Dsatur<'a> {
    g: &'a Graph,
    color: Vec<Option<usize>>,
    // bitmask of colors seen in each vertex's neighborhood
    seen: Vec<u64>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph) -> Self {
        Dsatur {
            g,
            color: vec![None; g.n()],
            seen: vec![0; g.n()],
        }
    }

    fn reset(&mut self) {
        self.color.iter_mut().for_each(|c| *c = None);
        self.seen.iter_mut().for_each(|s| *s = 0);
    }

    /// Uncolored vertex of maximal saturation, ties by uncolored degree then index.
    fn pick(&self) -> Option<usize> {
        let uncolored: VertexSet = (0..self.g.n())
            .filter(|&v| self.color[v].is_none())
            .collect();
        uncolored.iter().max_by_key(|&v| {
            let sat = self.seen[v].count_ones();
            let deg = self.g.nbrs(v).intersection(uncolored).len();
            (sat, deg, std::cmp::Reverse(v))
        })
    }

    fn recompute_seen(&mut self, v: usize) {
        for u in self.g.nbrs(v).iter() {
            self.seen[u] = self
                .g
                .nbrs(u)
                .iter()
                .filter_map(|w| self.color[w])
                .fold(0, |acc, c| acc | 1 << c);
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        for u in self.g.nbrs(v).iter() {
            self.seen[u] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        self.color[v] = None;
        self.recompute_seen(v);
    }

    fn greedy(&mut self) -> Vec<usize> {
        while let Some(v) = self.pick() {
            let c = (!self.seen[v]).trailing_zeros() as usize;
            self.assign(v, c);
        }
        self.color.iter().map(|c| c.unwrap()).collect()
    }

    fn search(&mut self, used: usize, lower: usize, best: &mut (usize, Vec<usize>)) {
        if best.0 <= lower {
            return;
        }
        let Some(v) = self.pick() else {
            if used < best.0 {
                *best = (used, self.color.iter().map(|c| c.unwrap()).collect());
            }
            return;
        };
        for c in 0..=used {
            if self.seen[v] >> c & 1 == 1 {
                continue;
            }
            let next_used = used.max(c + 1);
            if next_used >= best.0 {
                break;
            }
            self.assign(v, c);
            self.search(next_used, lower, best);
            self.unassign(v);
            if best.0 <= lower {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn sets(v: Vec<VertexSet>) -> Vec<Vec<usize>> {
        v.into_iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn enumeration_order_and_counts() {
        let k3 = sets(enumerate_cliques(&complete(3), 2).collect());
        assert_eq!(k3, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
        let c4 = sets(enumerate_cliques(&cycle(4), 2).collect());
        assert_eq!(c4, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        let tri = sets(enumerate_cliques(&diamond(), 3).collect());
        assert_eq!(tri, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        for n in 1..=8 {
            assert_eq!(enumerate_cliques(&complete(n), 1).count(), (1 << n) - 1);
        }
        assert_eq!(enumerate_cliques(&empty(0), 1).count(), 0);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete(5)), 5);
        assert_eq!(clique_number(&cycle(5)), 2);
        assert_eq!(clique_number(&petersen()), 2);
        assert_eq!(clique_number(&empty(0)), 0);
        assert_eq!(clique_number(&empty(3)), 1);
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&complete(6)), 1);
        assert_eq!(independence_number(&cycle(6)), 3);
        assert_eq!(independence_number(&petersen()), 4);
    }

    #[test]
    fn chromatic_numbers() {
        for n in 1..=7 {
            assert_eq!(chromatic_number(&complete(n)), n);
        }
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(&cycle(6)), 2);
        assert_eq!(chromatic_number(&petersen()), 3);
        assert_eq!(chromatic_number(&empty(0)), 0);
        let (k, col) = optimal_coloring(&petersen());
        assert_eq!(k, 3);
        for (a, b) in petersen().edges() {
            assert_ne!(col[a], col[b]);
        }
    }

    #[test]
    fn clique_covers() {
        assert_eq!(clique_cover_number(&complete(4)), 1);
        assert_eq!(clique_cover_number(&empty(4)), 4);
        assert_eq!(clique_cover_number(&cycle(5)), 3);
    }

    #[test]
    fn k_values_and_flag_sums() {
        assert!(k_values(&complete(5)).iter().all(|&k| k == 2));
        assert!(k_values(&cycle(7)).iter().all(|&k| k == 2));
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(k_value(&k23, 0).unwrap(), 3);
        assert_eq!(k_value(&k23, 2).unwrap(), 2);
        assert_eq!(flag_sum(&cycle(5)), 10);
        assert_eq!(flag_sum(&complete(4)), 8);
        assert_eq!(flag_sum(&cycle(4)), 8);
        assert!(k_value(&k23, 5).is_err());
    }

    #[test]
    fn clique_graph_views() {
        let g = complete(3);
        let view = clique_graph(&g).materialize(DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(view.len(), 4);
        let full = view.cliques.iter().position(|c| c.len() == 3).unwrap();
        assert_eq!(view.neighbors(full).count(), 3);
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i != full && j != full {
                    assert!(!view.adjacent(i, j));
                }
            }
        }
        let c4 = cycle(4);
        let view = clique_graph(&c4).materialize(DEFAULT_CLIQUE_CAP).unwrap();
        assert!((0..4).all(|i| view.neighbors(i).count() == 0));
        let k1 = complete(1);
        assert!(clique_graph(&k1)
            .materialize(DEFAULT_CLIQUE_CAP)
            .unwrap()
            .is_empty());
        let k6 = complete(6);
        assert_eq!(
            clique_graph(&k6).materialize(10).unwrap_err(),
            CliqueError::CliqueGraphTooLarge { cap: 10 }
        );
    }

    #[test]
    fn reduced_values_from_clique_graph() {
        for n in 2..=6 {
            assert_eq!(
                reduced_v_via_clique_graph(&complete(n), DEFAULT_CLIQUE_CAP).unwrap(),
                1
            );
        }
        assert_eq!(
            reduced_v_via_clique_graph(&cycle(4), DEFAULT_CLIQUE_CAP).unwrap(),
            4
        );
        assert_eq!(
            reduced_v_via_clique_graph(&diamond(), DEFAULT_CLIQUE_CAP).unwrap(),
            3
        );
        assert_eq!(
            reduced_v_via_clique_graph(&empty(3), DEFAULT_CLIQUE_CAP).unwrap(),
            0
        );
    }

    #[test]
    fn weighted_independent_sets() {
        let w = vec![2; 5];
        assert_eq!(max_weight_independent_set(&cycle(5), &w).0, 4);
        let w = vec![1, 5, 1, 1];
        let (best, set) = max_weight_independent_set(&path(4), &w);
        assert_eq!(best, 6);
        assert_eq!(set.to_vec(), vec![1, 3]);
        assert_eq!(max_weight_independent_set(&empty(0), &[]).0, 0);
    }
}
