//! Closed-form values for Kneser, product and exponential graphs.

use kneserlab::graph::{
    categorical_product, complete, cycle, exponential_graph, is_proper_on_product, kneser, lexicographic_product,
};
use kneserlab::lab::{
    canonical_coloring, catalog, catalog_pairs, chromatic_superadditivity_check, hedetniemi_check, poljak_rodl_upper,
    stahl_check, Verdict,
};
use kneserlab::solvers::{
    chromatic_number, fractional_chromatic, multichromatic_number, MultichromaticOptions,
};
use kneserlab::{Budget, Rational};

fn b() -> Budget {
    Budget::unlimited()
}

#[test]
fn kneser_chromatic_numbers() {
    for (m, n) in [(5, 2), (7, 3), (6, 2), (8, 3), (9, 4), (7, 2)] {
        assert_eq!(chromatic_number(&kneser(m, n).unwrap(), &b()).unwrap().value, m - 2 * n + 2);
    }
}

#[test]
fn product_of_small_cliques() {
    let p = categorical_product(&complete(3), &complete(4)).unwrap();
    assert_eq!(chromatic_number(&p, &b()).unwrap().value, 3);
    let r = hedetniemi_check(&complete(4), "K(4)", &complete(4), "K(4)", &b()).unwrap();
    assert_eq!(r.values["deficit"], 0);
    let r = hedetniemi_check(&cycle(5).unwrap(), "C(5)", &kneser(5, 2).unwrap(), "Kneser(5,2)", &b()).unwrap();
    assert_eq!(r.values["deficit"], 0);
}

#[test]
fn fractional_lexicographic_example() {
    let g = lexicographic_product(&cycle(5).unwrap(), &complete(2)).unwrap();
    assert_eq!(fractional_chromatic(&g, &b()).unwrap().value, Rational::from_integer(5));
    let p = categorical_product(&cycle(5).unwrap(), &kneser(5, 2).unwrap()).unwrap();
    assert_eq!(fractional_chromatic(&p, &b()).unwrap().value, Rational::new(5, 2));
}

#[test]
fn multichromatic_values() {
    let opts = MultichromaticOptions {
        budget: b(),
        max_palette: Some(12),
    };
    assert_eq!(multichromatic_number(&kneser(5, 2).unwrap(), 2, &opts).unwrap().value, 5);
    for entry in catalog().into_iter().filter(|e| e.graph.n() <= 21) {
        let chi = chromatic_number(&entry.graph, &b()).unwrap().value;
        assert_eq!(multichromatic_number(&entry.graph, 1, &opts).unwrap().value, chi, "{}", entry.id);
    }
    for (m, n, k, want) in [(5, 2, 1, 3), (5, 2, 2, 5), (6, 2, 1, 4), (7, 3, 2, 5)] {
        let s = stahl_check(m, n, k, &opts).unwrap();
        assert_eq!(s.computed, Some(want), "K({m},{n}), k={k}");
        assert_eq!(s.conjectured, want);
    }
}

#[test]
fn canonical_colorings_are_proper() {
    let k3 = complete(3);
    let e = exponential_graph(2, &k3).unwrap();
    let col = canonical_coloring(&k3, 2).unwrap();
    assert_eq!(col.len(), 24);
    assert!(is_proper_on_product(&k3, &e, &col).unwrap());
    let c5 = cycle(5).unwrap();
    let e = exponential_graph(2, &c5).unwrap();
    let col = canonical_coloring(&c5, 2).unwrap();
    assert_eq!(col.len(), 160);
    assert!(is_proper_on_product(&c5, &e, &col).unwrap());
}

#[test]
fn superadditivity_on_small_bases() {
    let r = chromatic_superadditivity_check(&complete(3), "K(3)", 2, 2, &b()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let r = chromatic_superadditivity_check(&complete(4), "K(4)", 2, 2, &b()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn poljak_rodl_small_n() {
    let entries: Vec<_> = catalog().into_iter().filter(|e| e.graph.n() <= 10).collect();
    let pairs = catalog_pairs(&entries, 100, false);
    let r = poljak_rodl_upper(&entries, &pairs, 3, &b(), &b()).unwrap();
    assert_eq!(r.chi_product, 3);
    let r = poljak_rodl_upper(&entries, &pairs, 5, &b(), &b()).unwrap();
    assert_eq!(r.chi_product, 5);
    assert!(r.exact);
}
