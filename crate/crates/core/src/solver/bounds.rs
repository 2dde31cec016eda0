//! Lower and upper bounds on v(G).
//!
//! Every lower bound comes from counting in a realizing linear hypergraph:
//! pairwise meeting lines (ω), point pairs (`b ≤ v(v-1)/2`), Seymour's
//! matching theorem, disjoint lines of an independent set weighted by the
//! line-size bound `k(a)`, and flags `f(G) ≤ v·ω`. The upper bound is the
//! edge-dual construction.

use serde::{Deserialize, Serialize};

use crate::cliques::{clique_number, independence_number, k_values, max_weight_independent_set};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    /// Smallest `v` with `v(v-1)/2 >= n`.
    pub sqrt_bound: usize,
    /// `⌈n/α⌉`.
    pub seymour: usize,
    pub two_alpha: usize,
    /// Heaviest independent set under the weights `k(a)`.
    pub k_independent: usize,
    /// `⌈f(G)/ω⌉`.
    pub flag: usize,
    /// `⌈2m/ω²⌉`.
    pub flag_weak: usize,
    /// `m + l(G) + 2e(G)`.
    pub edge_bound: usize,
    pub best_lower: usize,
    /// Name of the first lower bound attaining `best_lower`.
    pub binding: String,
}

impl BoundsReport {
    /// Lower bounds in report order.
    pub fn lower_bounds(&self) -> [(&'static str, usize); 7] {
        [
            ("omega", self.omega),
            ("sqrt", self.sqrt_bound),
            ("seymour", self.seymour),
            ("two_alpha", self.two_alpha),
            ("k_independent", self.k_independent),
            ("flag", self.flag),
            ("flag_weak", self.flag_weak),
        ]
    }
}

/// Evaluates every bound exactly. The graph without vertices gets all zeros.
pub fn bounds(g: &Graph) -> BoundsReport {
    let n = g.n();
    let m = g.m();
    let profile = g.degree_profile();
    let edge_bound = m + profile.leaf_count() + 2 * profile.isolated_count();
    if n == 0 {
        return BoundsReport {
            n,
            m,
            omega: 0,
            sqrt_bound: 0,
            seymour: 0,
            two_alpha: 0,
            k_independent: 0,
            flag: 0,
            flag_weak: 0,
            edge_bound,
            best_lower: 0,
            binding: "omega".to_string(),
        };
    }
    let omega = clique_number(g);
    let alpha = independence_number(g);
    let ks = k_values(g);
    let f: usize = ks.iter().sum();
    let mut report = BoundsReport {
        n,
        m,
        omega,
        sqrt_bound: (1..).find(|v: &usize| v * (v - 1) / 2 >= n).unwrap(),
        seymour: n.div_ceil(alpha),
        two_alpha: 2 * alpha,
        k_independent: max_weight_independent_set(g, &ks).0,
        flag: f.div_ceil(omega),
        flag_weak: (2 * m).div_ceil(omega * omega),
        edge_bound,
        best_lower: 0,
        binding: String::new(),
    };
    let (name, best) = report
        .lower_bounds()
        .into_iter()
        .fold(
            ("omega", 0),
            |acc, (name, b)| if b > acc.1 { (name, b) } else { acc },
        );
    report.best_lower = best;
    report.binding = name.to_string();
    report
}
