//! Exhaustive checks over the bundled catalogs of small graphs.

use std::collections::HashSet;

use linspect_core::canon::canonical_form;
use linspect_core::cliques::{reduced_v_via_clique_graph, DEFAULT_CLIQUE_CAP};
use linspect_core::io::{read_catalog, to_graph6};
use linspect_core::solver::{brute_force_reduced_v, DEFAULT_ORACLE_CAP};
use linspect_core::{reduced_linear_intersection_number, Graph, SolveOptions};

const COUNTS: [usize; 7] = [1, 2, 4, 11, 34, 156, 1044];

fn text(n: usize) -> String {
    let path = format!("{}/tests/data/graphs{n}.g6", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn catalog(n: usize) -> Vec<Graph> {
    read_catalog(&text(n)).unwrap()
}

#[test]
fn graph6_is_identity_on_catalogs() {
    for n in 1..=7 {
        let raw = text(n);
        let lines: Vec<&str> = raw.lines().collect();
        let graphs = catalog(n);
        assert_eq!(graphs.len(), COUNTS[n - 1]);
        for (line, g) in lines.iter().zip(&graphs) {
            assert_eq!(to_graph6(g), *line);
        }
    }
}

#[test]
fn catalogs_hold_distinct_classes() {
    for n in 1..=7 {
        let forms: HashSet<_> = catalog(n).iter().map(canonical_form).collect();
        assert_eq!(forms.len(), COUNTS[n - 1], "n = {n}");
    }
}

#[test]
fn reduced_number_three_ways() {
    for n in 1..=6 {
        for g in catalog(n) {
            let search = reduced_linear_intersection_number(&g, &SolveOptions::default())
                .unwrap()
                .value;
            assert_eq!(
                search,
                brute_force_reduced_v(&g, DEFAULT_ORACLE_CAP).unwrap(),
                "{:?}",
                g.edges()
            );
            assert_eq!(
                search,
                reduced_v_via_clique_graph(&g, DEFAULT_CLIQUE_CAP).unwrap(),
                "{:?}",
                g.edges()
            );
        }
    }
}
