//! Bipartite species: enumeration, both operators, the connectivity oracle
//! against operator-derived indecomposables, and the weight axioms.

use std::collections::BTreeSet;

use exact_arith::{Poly, Var};
use species_core::{
    check_composition_operator, check_pointwise, check_weight, component_count, indecomposables,
    species_egf, standard_object, verify_exponential_formula, LabeledSet, MultiIndex,
    OrderedBipartition, Structure,
};
use species_zoo::{
    bipartite_connected, bipartite_species, connected_components, BipartiteVariant,
};

fn edges(list: &[(u32, u32)]) -> Structure {
    Structure::Edges(list.iter().copied().collect())
}

#[test]
fn enumeration_counts() {
    let s = bipartite_species(BipartiteVariant::Union);
    let omega = LabeledSet::from_slices(&[&[1, 2], &[1]]);
    assert_eq!(s.enumerate(&omega).len(), 4);
    assert_eq!(s.enumerate(&LabeledSet::empty(2)).len(), 1);
}

#[test]
fn union_eta_is_disjoint_union() {
    let s = bipartite_species(BipartiteVariant::Union);
    let bip = OrderedBipartition::new(
        LabeledSet::from_slices(&[&[1], &[1]]),
        LabeledSet::from_slices(&[&[2], &[2]]),
    );
    let merged = s
        .eta(&bip, &edges(&[(1, 1)]), &edges(&[(2, 2)]))
        .unwrap();
    assert_eq!(merged, edges(&[(1, 1), (2, 2)]));
    let whole = bip.whole();
    assert_eq!(s.weight(&whole, &merged), Poly::t_power(2));
}

#[test]
fn completion_eta_adds_cross_edges() {
    let s = bipartite_species(BipartiteVariant::Completion);
    // two empty graphs on ({1}, {}) and ({}, {1}): the cross cells are
    // exactly {(1,1)}
    let bip = OrderedBipartition::new(
        LabeledSet::from_slices(&[&[1], &[]]),
        LabeledSet::from_slices(&[&[], &[1]]),
    );
    let merged = s.eta(&bip, &edges(&[]), &edges(&[])).unwrap();
    assert_eq!(merged, edges(&[(1, 1)]));
}

#[test]
fn connectivity_examples() {
    let omega = LabeledSet::from_slices(&[&[1], &[1]]);
    assert!(bipartite_connected(&omega, &edges(&[(1, 1)])));
    assert!(!bipartite_connected(&omega, &edges(&[])));

    let two_whites = LabeledSet::from_slices(&[&[1, 2], &[1]]);
    assert!(bipartite_connected(
        &two_whites,
        &edges(&[(1, 1), (2, 1)])
    ));
    assert!(!bipartite_connected(&two_whites, &edges(&[(1, 1)])));

    // single vertex is connected, the empty object is not
    assert!(bipartite_connected(
        &LabeledSet::from_slices(&[&[1], &[]]),
        &edges(&[])
    ));
    assert!(!bipartite_connected(&LabeledSet::empty(2), &edges(&[])));
}

#[test]
fn indecomposables_are_connected_graphs() {
    // independent oracle: graph connectivity; implementation route: set
    // subtraction of eta images
    let s = bipartite_species(BipartiteVariant::Union);
    for n1 in 0..=3usize {
        for n2 in 0..=3usize {
            if n1 + n2 > 5 {
                continue;
            }
            let omega = standard_object(&MultiIndex(vec![n1, n2]));
            let indec = indecomposables(&s, &omega).unwrap();
            let connected: BTreeSet<Structure> = s
                .enumerate(&omega)
                .into_iter()
                .filter(|b| bipartite_connected(&omega, b))
                .collect();
            assert_eq!(indec, connected, "mismatch on {omega}");
        }
    }
}

#[test]
fn completion_indecomposables_are_complements_of_connected() {
    let s = bipartite_species(BipartiteVariant::Completion);
    for n1 in 0..=3usize {
        for n2 in 0..=3usize {
            if n1 + n2 > 5 {
                continue;
            }
            let omega = standard_object(&MultiIndex(vec![n1, n2]));
            let indec = indecomposables(&s, &omega).unwrap();
            let mut all_cells = BTreeSet::new();
            for &w in omega.sort(0) {
                for &b in omega.sort(1) {
                    all_cells.insert((w, b));
                }
            }
            let expected: BTreeSet<Structure> = s
                .enumerate(&omega)
                .into_iter()
                .filter(|b| {
                    let complement: BTreeSet<(u32, u32)> = all_cells
                        .difference(b.as_edges())
                        .copied()
                        .collect();
                    bipartite_connected(&omega, &Structure::Edges(complement))
                })
                .collect();
            assert_eq!(indec, expected, "mismatch on {omega}");
        }
    }
}

#[test]
fn component_count_matches_graph_components() {
    let s = bipartite_species(BipartiteVariant::Union);
    for n1 in 0..=2usize {
        for n2 in 0..=2usize {
            let omega = standard_object(&MultiIndex(vec![n1, n2]));
            for b in s.enumerate(&omega) {
                let expected = connected_components(&omega, &b).len();
                assert_eq!(
                    component_count(&s, &omega, &b).unwrap(),
                    expected,
                    "graph {} on {omega}",
                    b.encode(&omega)
                );
            }
        }
    }
}

#[test]
fn weighted_series_is_binomial() {
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 2]);
    let gf = species_egf(&s, &cap, false, u64::MAX).unwrap();
    let one_plus_t = &Poly::one() + &Poly::t();
    assert_eq!(gf.coeff(&MultiIndex(vec![1, 1])), one_plus_t);
    assert_eq!(
        gf.coeff(&MultiIndex(vec![2, 2])),
        one_plus_t.pow(4).scale(&exact_arith::rat(1, 4))
    );

    // completion variant with the complement weight gives the same series
    let c = bipartite_species(BipartiteVariant::Completion);
    assert_eq!(species_egf(&c, &cap, false, u64::MAX).unwrap(), gf);
}

#[test]
fn refined_coefficient_at_one_one() {
    // the edgeless graph on ({1},{1}) has two components, the one-edge
    // graph has one, so the count polynomial is y^2 + t*y
    let s = bipartite_species(BipartiteVariant::Union);
    let gf = species_egf(&s, &MultiIndex(vec![1, 1]), true, u64::MAX).unwrap();
    let expected = &Poly::y_power(2) + &Poly::monomial(1, 1, exact_arith::rat_int(1));
    assert_eq!(gf.coeff(&MultiIndex(vec![1, 1])), expected);
    assert_eq!(
        gf.eval_var_at_one(Var::Y),
        species_egf(&s, &MultiIndex(vec![1, 1]), false, u64::MAX).unwrap()
    );
}

#[test]
fn indecomposable_series_marks_the_single_edge() {
    // the unique connected graph on one white and one black vertex has one
    // edge, so the coefficient at (1,1) is t
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 2]);
    let indec = species_core::indecomposables_egf(&s, &cap, u64::MAX).unwrap();
    assert_eq!(indec.coeff(&MultiIndex(vec![1, 1])), Poly::t());
    assert!(indec.coeff(&MultiIndex(vec![0, 0])).is_zero());
    // single vertices are connected: coefficient 1 at (1,0) and (0,1)
    assert_eq!(indec.coeff(&MultiIndex(vec![1, 0])), Poly::one());
}

#[test]
fn weight_axioms_pass_for_matching_pairs() {
    let cap = MultiIndex(vec![2, 2]);
    for variant in [BipartiteVariant::Union, BipartiteVariant::Completion] {
        let s = bipartite_species(variant);
        let report = check_weight(&s, &cap, 11).unwrap();
        assert!(report.passed(), "weights fail for {:?}", variant);
    }
}

#[test]
fn cross_pairing_fails_multiplicativity() {
    // completion operator with the edge-marking weight: the cross edges
    // break multiplicativity, reproducibly
    let wrong = bipartite_species(BipartiteVariant::Completion).with_weight(std::rc::Rc::new(
        |_omega: &LabeledSet, x: &Structure| Poly::t_power(x.as_edges().len() as u32),
    ));
    let report = check_weight(&wrong, &MultiIndex(vec![2, 2]), 11).unwrap();
    assert!(!report.passed());
    let witness = report.witness.expect("witness present");
    assert_eq!(witness.kind, "weight-multiplicativity");
    // the witness is re-checkable: it names the violated equation's pieces
    assert!(witness.items.iter().any(|(k, _)| k == "weight-of-image"));
}

#[test]
fn both_operators_pass_axioms_and_pointwise() {
    let cap = MultiIndex(vec![2, 2]);
    for variant in [BipartiteVariant::Union, BipartiteVariant::Completion] {
        let s = bipartite_species(variant);
        assert!(check_composition_operator(&s, &cap, 11).unwrap().passed());
        assert!(check_pointwise(&s, &cap).unwrap().passed());
        assert!(verify_exponential_formula(&s, &cap, u64::MAX)
            .unwrap()
            .passed());
    }
}
