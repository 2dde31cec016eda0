use linspect_core::canon::{are_isomorphic, canonical_labeling};
use linspect_core::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use linspect_core::solver::{bounds, verify_cover, CoverVerdict};
use linspect_core::{
    linear_intersection_number, reduced_linear_intersection_number, Graph, SolveOptions,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, on)| *on).map(|(e, _)| e)).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_formats_round_trip(g in graph(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn handshake_and_complement(g in graph(12)) {
        let degrees: usize = (0..g.n()).map(|x| g.degree(x)).sum();
        prop_assert_eq!(degrees, 2 * g.m());
        let c = g.complement();
        prop_assert_eq!(g.m() + c.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn components_partition_the_vertices(g in graph(12)) {
        let comps = g.components();
        let total: usize = comps.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.n());
        for c in &comps {
            prop_assert!(g.induced(*c).is_connected());
        }
    }

    #[test]
    fn certificates_are_valid_and_sandwiched(g in graph(7)) {
        let r = linear_intersection_number(&g, &opts()).unwrap();
        prop_assert_eq!(verify_cover(&g, &r.certificate), CoverVerdict::Valid { size: r.value });
        prop_assert!(r.bounds.best_lower <= r.value && r.value <= r.bounds.edge_bound);
        let h = r.realization.unwrap();
        prop_assert_eq!(h.num_points(), r.value);
        prop_assert_eq!(h.intersection_graph().unwrap().graph, g.clone());
        let red = reduced_linear_intersection_number(&g, &opts()).unwrap();
        prop_assert!(red.value <= r.value);
    }

    #[test]
    fn values_are_isomorphism_invariant((g, perm) in graph(7).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let h = g.permuted(&perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(bounds(&g), bounds(&h));
        let (a, b) = (
            linear_intersection_number(&g, &opts()).unwrap().value,
            linear_intersection_number(&h, &opts()).unwrap().value,
        );
        prop_assert_eq!(a, b);
    }

    #[test]
    fn canonical_labeling_is_consistent(g in graph(9)) {
        let (form, perm) = canonical_labeling(&g);
        prop_assert_eq!(g.permuted(&perm), form.to_graph());
    }

    #[test]
    fn additivity(g1 in graph(5), g2 in graph(5)) {
        let sum = g1.disjoint_sum(&g2).unwrap();
        let v = |g: &Graph| linear_intersection_number(g, &opts()).unwrap().value;
        prop_assert_eq!(v(&sum), v(&g1) + v(&g2));
    }

    #[test]
    fn solving_is_deterministic(g in graph(7)) {
        let a = linear_intersection_number(&g, &opts()).unwrap();
        let b = linear_intersection_number(&g, &opts()).unwrap();
        prop_assert_eq!(a.certificate, b.certificate);
    }
}
