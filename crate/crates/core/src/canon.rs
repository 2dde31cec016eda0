//! Canonical labeling by color refinement and individualization.
//!
//! The canonical form is the lexicographically smallest adjacency-row
//! sequence over all leaves of the individualization tree. Branches that
//! individualize a twin of an already explored vertex are skipped, since
//! swapping twins is an automorphism. Intended for graphs with at most a
//! dozen vertices.

use crate::graph::{Graph, VertexSet};

/// Relabeled adjacency rows; equal for isomorphic graphs only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::from_rows(self.rows.clone())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form and the permutation `old -> new` producing it.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let start = if g.n() == 0 {
        Vec::new()
    } else {
        vec![g.vertices().to_vec()]
    };
    let cells = refine(g, start);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, cells, &mut best);
    let (rows, perm) = best.unwrap_or_default();
    (CanonicalForm { n: g.n(), rows }, perm)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0; g.n()];
        for (i, cell) in cells.iter().enumerate() {
            perm[cell[0]] = i;
        }
        let rows = g.permuted(&perm);
        let rows: Vec<u64> = (0..g.n()).map(|v| rows.nbrs(v).bits()).collect();
        if best.as_ref().is_none_or(|(b, _)| rows < *b) {
            *best = Some((rows, perm));
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[pos] {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = next[pos].iter().copied().filter(|&u| u != v).collect();
        next.splice(pos..=pos, [vec![v], rest]);
        search(g, refine(g, next), best);
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    g.nbrs(u).without(v) == g.nbrs(v).without(u)
}

/// Splits cells by neighbor counts into every cell until stable. New cells
/// are ordered by (old cell, count signature), which is label-invariant.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    (
                        masks
                            .iter()
                            .map(|m| g.nbrs(v).intersection(*m).len())
                            .collect(),
                        v,
                    )
                })
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = Vec::new();
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(keyed[i].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use std::collections::HashSet;

    #[test]
    fn relabelings_share_a_form() {
        let g = petersen();
        let perm: Vec<usize> = (0..10).map(|i| (3 * i + 7) % 10).collect();
        assert!(are_isomorphic(&g, &g.permuted(&perm)));
        assert!(!are_isomorphic(
            &cycle(6),
            &complete(3).disjoint_sum(&complete(3)).unwrap()
        ));
    }

    #[test]
    fn labeling_reproduces_the_form() {
        let g = paw();
        let (form, perm) = canonical_labeling(&g);
        assert_eq!(g.permuted(&perm), form.to_graph());
    }

    #[test]
    fn counts_isomorphism_classes() {
        // Labeled graphs on 5 vertices fall into 34 classes.
        let pairs: Vec<(usize, usize)> = complete(5).edges();
        let mut forms = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i]);
            forms.insert(canonical_form(&Graph::from_edges(5, edges).unwrap()));
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        assert_eq!(canonical_form(&complete(12)).rows.len(), 12);
        assert_eq!(canonical_form(&empty(12)).rows, vec![0; 12]);
        assert_eq!(canonical_form(&empty(0)).rows, Vec::<u64>::new());
        let _ = canonical_form(&complete_multipartite(3, 4));
    }
}
