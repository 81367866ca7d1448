//! Property tests for constructions, solvers, certificates and reports.

use proptest::prelude::*;

use kneserlab::graph::{
    categorical_product, complement, complete, exponential_graph, is_proper_coloring, is_proper_on_product, kneser,
    lexicographic_product, Graph,
};
use kneserlab::lab::{
    block_decomposition, canonical_coloring, from_json, hedetniemi_check, stahl_conjecture, stahl_decomposition,
    synthetic_block_graph, to_json, verify_blocks_totally_joined, verify_extraction, extract_from_regions, Report,
    Verdict,
};
use kneserlab::solvers::{
    chromatic_number, fractional_chromatic, max_clique, maximum_independent_set, multichromatic_number,
    verify_fractional_certificate, MultichromaticOptions,
};
use kneserlab::{Budget, Rational};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges, Vec::new(), None).unwrap()
        })
    })
}

fn b() -> Budget {
    Budget::unlimited()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_json_round_trips(g in graph(9)) {
        let text = g.to_canonical_json();
        let back = Graph::from_json(&text).unwrap();
        prop_assert_eq!(back.to_canonical_json(), text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn edge_order_in_input_is_irrelevant(g in graph(8), seed in any::<u64>()) {
        let mut edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| if (u + v + seed as usize).is_multiple_of(2) { [v, u] } else { [u, v] }).collect();
        edges.reverse();
        let text = serde_json::json!({"n": g.n(), "edges": edges}).to_string();
        prop_assert_eq!(Graph::from_json(&text).unwrap().to_canonical_json(), g.to_canonical_json());
    }

    #[test]
    fn complement_is_an_involution(g in graph(9)) {
        let c = complement(&g).unwrap();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(complement(&c).unwrap(), g);
    }

    #[test]
    fn clique_chromatic_fractional_sandwich(g in graph(8)) {
        let chi = chromatic_number(&g, &b()).unwrap();
        prop_assert!(is_proper_coloring(&g, &chi.witness).unwrap());
        let omega = max_clique(&g, &b()).unwrap().clique.len();
        let alpha = maximum_independent_set(&g, &b()).unwrap().clique.len();
        let f = fractional_chromatic(&g, &b()).unwrap();
        prop_assert!(verify_fractional_certificate(&g, &f).unwrap());
        prop_assert!(Rational::from_integer(omega as i64) <= f.value);
        prop_assert!(f.value <= Rational::from_integer(chi.value as i64));
        prop_assert!(Rational::new(g.n() as i64, alpha as i64) <= f.value);
    }

    #[test]
    fn product_chromatic_at_most_min(g in graph(6), h in graph(6)) {
        let r = hedetniemi_check(&g, "G", &h, "H", &b()).unwrap();
        let deficit = r.values["deficit"].as_i64().unwrap();
        prop_assert!(deficit >= 0);
        // Minimum at most 4 forces equality.
        prop_assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn fractional_product_identities(g in graph(5), h in graph(5)) {
        let (fg, fh) = (fractional_chromatic(&g, &b()).unwrap().value, fractional_chromatic(&h, &b()).unwrap().value);
        let p = categorical_product(&g, &h).unwrap();
        prop_assert_eq!(fractional_chromatic(&p, &b()).unwrap().value, fg.clone().min(fh.clone()));
        let l = lexicographic_product(&g, &h).unwrap();
        prop_assert_eq!(fractional_chromatic(&l, &b()).unwrap().value, &fg * &fh);
    }

    #[test]
    fn canonical_coloring_is_proper(h in graph(4), c in 1usize..=3) {
        let col = canonical_coloring(&h, c).unwrap();
        prop_assert!(col.colors_used() <= c);
        if h.edge_count() > 0 {
            let e = exponential_graph(c, &h).unwrap();
            prop_assert!(is_proper_on_product(&h, &e, &col).unwrap());
        }
    }

    #[test]
    fn blocks_are_isomorphic_and_joined(h in graph(3), c in 1usize..=2, d in 2usize..=3) {
        let dec = block_decomposition(&h, c, d).unwrap();
        prop_assert_eq!(dec.blocks.len(), d);
        prop_assert!(dec.blocks_disjoint());
        prop_assert!(dec.blocks_isomorphic().unwrap());
        prop_assert!(verify_blocks_totally_joined(&dec));
    }

    #[test]
    fn synthetic_extraction_is_a_homomorphism(cd in prop::sample::select(vec![(1usize, 2usize), (1, 3), (2, 2), (1, 4)]), seed in any::<u64>()) {
        let (c, d) = cd;
        let s = synthetic_block_graph(c, d, seed).unwrap();
        prop_assert!(is_proper_coloring(&s.graph, &s.coloring).unwrap());
        let e = extract_from_regions(c, d, &s.regions, &s.coloring).unwrap();
        prop_assert!(e.psi.iter().all(|p| p.len() == c + 1));
        prop_assert!(verify_extraction(&e).unwrap());
    }

    #[test]
    fn stahl_decomposition_identity(n in 1usize..=6, k in 1usize..=20, extra in 0usize..=6) {
        let m = 2 * n + extra;
        let (a, bb) = stahl_decomposition(n, k);
        prop_assert_eq!(a * n + bb, k);
        prop_assert!(bb < n);
        let v = stahl_conjecture(m, n, k);
        if bb == 0 {
            prop_assert_eq!(v, a * m);
        } else {
            prop_assert_eq!(v, (a + 1) * m - 2 * (n - bb));
        }
    }

    #[test]
    fn multichromatic_first_index_is_chromatic(g in graph(7)) {
        let chi = chromatic_number(&g, &b()).unwrap().value;
        let r = multichromatic_number(&g, 1, &MultichromaticOptions::default()).unwrap();
        prop_assert_eq!(r.value, chi);
        prop_assert!(r.witness.is_valid_for(&g));
    }

    #[test]
    fn report_json_round_trips(op in "[a-z_]{1,10}", inst in "[A-Za-z0-9(),]{1,16}", v in any::<i64>(), pass in any::<bool>()) {
        let rows = vec![Report::new(&op, inst).value("x", v).certify(&v).check(pass)];
        let text = to_json(&rows);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(to_json(&back), text);
    }
}

#[test]
fn kneser_is_regular() {
    for (m, n) in [(5, 2), (7, 3), (8, 2), (9, 3)] {
        let g = kneser(m, n).unwrap();
        let want = kneser(m - n, n).unwrap().n();
        assert!((0..g.n()).all(|v| g.degree(v) == want));
    }
    assert_eq!(complete(4).edge_count(), 6);
}
