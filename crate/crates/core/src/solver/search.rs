//! Branch and bound over edge partitions into cliques.
//!
//! Each node branches on the lexicographically smallest uncovered edge `ab`;
//! the branches are the cliques of the still-uncovered graph that contain
//! `ab`, largest first and lexicographic within a size. Once every edge is
//! covered, a full cover is completed with one singleton per missing vertex
//! incidence, which is forced and therefore priced exactly.

use std::time::Instant;

use crate::graph::{Graph, VertexSet};

use super::{Budget, CoverMode, PruneCounts};

pub(crate) struct SearchSetup<'a> {
    pub graph: &'a Graph,
    pub mode: CoverMode,
    /// Cliques that must appear in the cover.
    pub forced: Vec<VertexSet>,
    /// The search stops as soon as a cover of at most this cost is found.
    pub stop_at: usize,
    /// Only covers costing strictly less than this are of interest.
    pub ceiling: Option<usize>,
    pub budget: &'a Budget,
}

pub(crate) enum Outcome {
    /// Best cover found; optimal unless `stop_at` cut the search short at a
    /// proven lower bound.
    Found {
        cost: usize,
        cover: Vec<VertexSet>,
    },
    /// No cover below the ceiling exists.
    NoneBelowCeiling,
    BudgetExceeded {
        best: Option<usize>,
    },
}

pub(crate) struct SearchStats {
    pub nodes: u64,
    pub prunes: PruneCounts,
}

struct State<'a> {
    n: usize,
    mode: CoverMode,
    budget: &'a Budget,
    started: Instant,
    /// Uncovered neighbors per vertex.
    uncovered: Vec<u64>,
    uncovered_edges: usize,
    incidences: Vec<u32>,
    chosen: Vec<VertexSet>,
    max_clique_edges: usize,
    best_cost: usize,
    best: Option<Vec<VertexSet>>,
    stop_at: usize,
    nodes: u64,
    prunes: PruneCounts,
    out_of_budget: bool,
}

pub(crate) fn run(setup: SearchSetup<'_>) -> (Outcome, SearchStats) {
    let g = setup.graph;
    let n = g.n();
    let omega = crate::cliques::clique_number(g);
    let mut st = State {
        n,
        mode: setup.mode,
        budget: setup.budget,
        started: Instant::now(),
        uncovered: (0..n).map(|v| g.nbrs(v).bits()).collect(),
        uncovered_edges: g.m(),
        incidences: vec![0; n],
        chosen: Vec::new(),
        max_clique_edges: (omega * omega.saturating_sub(1) / 2).max(1),
        best_cost: usize::MAX,
        best: None,
        stop_at: setup.stop_at,
        nodes: 0,
        prunes: PruneCounts::default(),
        out_of_budget: false,
    };
    for &c in &setup.forced {
        st.push(c);
    }
    match setup.ceiling {
        Some(ceiling) => st.best_cost = ceiling,
        None => {
            // Edge bound: finish the forced prefix with two-vertex cliques.
            let rest: Vec<VertexSet> = g
                .edges()
                .into_iter()
                .filter(|&(a, b)| st.uncovered[a] >> b & 1 == 1)
                .map(|(a, b)| VertexSet::from_iter([a, b]))
                .collect();
            let mut cover = st.chosen.clone();
            cover.extend(rest);
            let cover = complete(n, st.mode, cover);
            st.best_cost = cover.len();
            st.best = Some(cover);
        }
    }
    if st.best_cost > st.stop_at {
        st.descend();
    }
    let stats = SearchStats {
        nodes: st.nodes,
        prunes: st.prunes,
    };
    let outcome = match (st.out_of_budget, st.best) {
        (true, best) => Outcome::BudgetExceeded {
            best: best.map(|b| b.len()),
        },
        (false, Some(cover)) => Outcome::Found {
            cost: cover.len(),
            cover,
        },
        (false, None) => Outcome::NoneBelowCeiling,
    };
    (outcome, stats)
}

/// Appends the singletons a full cover needs: each vertex must lie in at
/// least two cliques.
fn complete(n: usize, mode: CoverMode, mut cover: Vec<VertexSet>) -> Vec<VertexSet> {
    if mode == CoverMode::Full {
        for x in 0..n {
            let have = cover.iter().filter(|c| c.contains(x)).count();
            for _ in have..2 {
                cover.push(VertexSet::singleton(x));
            }
        }
    }
    cover
}

impl State<'_> {
    fn push(&mut self, c: VertexSet) {
        let bits = c.bits();
        for v in c.iter() {
            self.uncovered[v] &= !bits;
            self.incidences[v] += 1;
        }
        self.uncovered_edges -= c.len() * c.len().saturating_sub(1) / 2;
        self.chosen.push(c);
    }

    fn pop(&mut self) {
        let c = self.chosen.pop().expect("pop matches push");
        let bits = c.bits();
        for v in c.iter() {
            self.uncovered[v] |= bits & !(1 << v);
            self.incidences[v] -= 1;
        }
        self.uncovered_edges += c.len() * c.len().saturating_sub(1) / 2;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.out_of_budget = true;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.budget.max_time {
                if self.started.elapsed() > limit {
                    self.out_of_budget = true;
                }
            }
        }
        !self.out_of_budget
    }

    fn debt(&self) -> usize {
        (0..self.n)
            .map(|x| 2usize.saturating_sub(self.incidences[x] as usize))
            .sum()
    }

    /// Lower bound on the final cost below this node, with the name of the
    /// term that decided it.
    fn lower_bound(&self) -> (usize, Bound) {
        let mut forced_singletons = 0;
        let mut new_cliques = 0;
        let mut which = Bound::Chosen;
        if self.uncovered_edges > 0 {
            new_cliques = 1;
            which = Bound::OneMore;
        }
        for x in 0..self.n {
            let row = self.uncovered[x];
            let udeg = row.count_ones() as usize;
            if self.mode == CoverMode::Full {
                forced_singletons += 2usize.saturating_sub(self.incidences[x] as usize + udeg);
            }
            if new_cliques < 2 && udeg >= 2 && !self.uncovered_clique(row) {
                new_cliques = 2;
                which = Bound::Neighborhood;
            }
        }
        let capacity = self.uncovered_edges.div_ceil(self.max_clique_edges);
        if capacity > new_cliques {
            new_cliques = capacity;
            which = Bound::Capacity;
        }
        if forced_singletons > new_cliques && which != Bound::Chosen {
            which = Bound::Debt;
        }
        (self.chosen.len() + forced_singletons + new_cliques, which)
    }

    fn uncovered_clique(&self, set: u64) -> bool {
        VertexSet::from_bits(set)
            .iter()
            .all(|y| set & !(1 << y) & !self.uncovered[y] == 0)
    }

    fn descend(&mut self) {
        if !self.tick() {
            return;
        }
        let Some(a) = (0..self.n).find(|&v| self.uncovered[v] != 0) else {
            let cost = match self.mode {
                CoverMode::Full => self.chosen.len() + self.debt(),
                CoverMode::Reduced => self.chosen.len(),
            };
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Some(complete(self.n, self.mode, self.chosen.clone()));
            }
            return;
        };
        let (bound, which) = self.lower_bound();
        if bound >= self.best_cost {
            self.prunes.record(which);
            return;
        }
        let b = self.uncovered[a].trailing_zeros() as usize;
        let common = self.uncovered[a] & self.uncovered[b];
        let mut branches = Vec::new();
        self.extensions(VertexSet::from_iter([a, b]), common, &mut branches);
        branches.sort_by(|x, y| y.len().cmp(&x.len()).then(x.lex_cmp(*y)));
        for c in branches {
            self.push(c);
            self.descend();
            self.pop();
            if self.out_of_budget || self.best_cost <= self.stop_at {
                return;
            }
            if self.lower_bound().0 >= self.best_cost {
                self.prunes.record(Bound::Incumbent);
                return;
            }
        }
    }

    /// Collects `base ∪ S` for every clique `S` of the uncovered graph inside
    /// `cands`.
    fn extensions(&self, base: VertexSet, mut cands: u64, out: &mut Vec<VertexSet>) {
        out.push(base);
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.extensions(base.with(v), cands & self.uncovered[v], out);
        }
    }
}

/// The term of the node bound that triggered a prune.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Bound {
    Chosen,
    OneMore,
    Neighborhood,
    Capacity,
    Debt,
    Incumbent,
}
