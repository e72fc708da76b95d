//! The component-set isomorphism and operator transport: psi maps a graph
//! to its connected components (union variant) or to the complements of
//! the components of its complement (completion variant); conjugating the
//! natural union operator on E(F_eta) back along psi^{-1} recovers the
//! original operator structure by structure.

use std::collections::BTreeSet;

use species_core::{
    bipartitions, standard_object, LabeledSet, MultiIndex, OrderedBipartition, SpeciesBundle,
    Structure,
};
use species_zoo::{
    binary_function_species, bipartite_species, build_psi, complement_iso, connected_components,
    indecomposable_subspecies, sets_of, transport_operator, BipartiteVariant, SpeciesIso,
};

const SEED: u64 = 5;

fn cap_norm_5() -> Vec<MultiIndex> {
    MultiIndex::indices_up_to(&MultiIndex(vec![3, 2]))
        .into_iter()
        .filter(|idx| idx.norm() <= 5)
        .collect()
}

#[test]
fn psi_of_union_variant_is_connected_components() {
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![3, 2]);
    let psi = build_psi(&s, &cap, SEED).unwrap();
    for idx in cap_norm_5() {
        let omega = standard_object(&idx);
        for b in s.enumerate(&omega) {
            let image = psi.forward(&omega, &b);
            let expected: BTreeSet<(Structure, LabeledSet)> = connected_components(&omega, &b)
                .into_iter()
                .map(|(support, edges)| (Structure::Edges(edges), support))
                .collect();
            assert_eq!(
                *image.as_components(),
                expected,
                "graph {} on {omega}",
                b.encode(&omega)
            );
            assert_eq!(psi.inverse(&omega, &image), b);
        }
    }
}

#[test]
fn psi_of_completion_variant_complements_components_of_complement() {
    let s = bipartite_species(BipartiteVariant::Completion);
    let cap = MultiIndex(vec![2, 2]);
    let psi = build_psi(&s, &cap, SEED).unwrap();
    for idx in MultiIndex::indices_up_to(&cap) {
        let omega = standard_object(&idx);
        for b in s.enumerate(&omega) {
            let image = psi.forward(&omega, &b);

            // oracle: complement, split into components, complement each
            // component within its own support
            let mut all_cells = BTreeSet::new();
            for &w in omega.sort(0) {
                for &bl in omega.sort(1) {
                    all_cells.insert((w, bl));
                }
            }
            let complement = Structure::Edges(
                all_cells.difference(b.as_edges()).copied().collect(),
            );
            let expected: BTreeSet<(Structure, LabeledSet)> =
                connected_components(&omega, &complement)
                    .into_iter()
                    .map(|(support, edges)| {
                        let mut support_cells = BTreeSet::new();
                        for &w in support.sort(0) {
                            for &bl in support.sort(1) {
                                support_cells.insert((w, bl));
                            }
                        }
                        (
                            Structure::Edges(
                                support_cells.difference(&edges).copied().collect(),
                            ),
                            support,
                        )
                    })
                    .collect();
            assert_eq!(*image.as_components(), expected);
        }
    }
}

#[test]
fn psi_is_a_bijection_on_every_object() {
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 2]);
    let psi = build_psi(&s, &cap, SEED).unwrap();
    let components = sets_of(&indecomposable_subspecies(&s).unwrap());
    for idx in MultiIndex::indices_up_to(&cap) {
        let omega = standard_object(&idx);
        let domain = s.enumerate(&omega);
        let codomain: BTreeSet<Structure> = components.enumerate(&omega).into_iter().collect();
        let images: BTreeSet<Structure> = domain
            .iter()
            .map(|x| psi.forward(&omega, x))
            .collect();
        assert_eq!(images.len(), domain.len());
        assert_eq!(images, codomain);
    }
}

#[test]
fn psi_rejects_pointwise_noncommutative_operators() {
    let s = binary_function_species();
    let err = build_psi(&s, &MultiIndex(vec![3]), SEED).unwrap_err();
    let message = err.to_string();
    assert!(message.contains("pointwise"), "unexpected error: {message}");
}

fn assert_same_operator(a: &SpeciesBundle, b: &SpeciesBundle, cap: &MultiIndex) {
    for idx in MultiIndex::indices_up_to(cap) {
        let omega = standard_object(&idx);
        for bip in bipartitions(&omega, false) {
            for x1 in a.enumerate(&bip.first) {
                for x2 in a.enumerate(&bip.second) {
                    assert_eq!(
                        a.eta(&bip, &x1, &x2).unwrap(),
                        b.eta(&bip, &x1, &x2).unwrap(),
                        "operators disagree at {bip} on ({}, {})",
                        x1.encode(&bip.first),
                        x2.encode(&bip.second)
                    );
                }
            }
        }
    }
}

#[test]
fn conjugating_by_identity_preserves_the_operator() {
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 2]);
    let conjugated = transport_operator(&SpeciesIso::identity(), &s, &s, Some((&cap, SEED))).unwrap();
    assert_same_operator(&s, &conjugated, &cap);
}

#[test]
fn conjugating_natural_operator_along_psi_inverse_recovers_eta() {
    for variant in [BipartiteVariant::Union, BipartiteVariant::Completion] {
        let s = bipartite_species(variant);
        let cap = MultiIndex(vec![2, 2]);
        let psi = build_psi(&s, &cap, SEED).unwrap();
        let components = sets_of(&indecomposable_subspecies(&s).unwrap());
        // psi^{-1}: E(F_eta) -> F transports the natural operator to F
        let recovered =
            transport_operator(&psi.inverted(), &components, &s, Some((&cap, SEED))).unwrap();
        assert_same_operator(&s, &recovered, &cap);
    }
}

#[test]
fn complement_conjugation_swaps_union_and_completion() {
    let union = bipartite_species(BipartiteVariant::Union);
    let completion = bipartite_species(BipartiteVariant::Completion);
    let cap = MultiIndex(vec![2, 2]);
    let conjugated =
        transport_operator(&complement_iso(), &union, &completion, Some((&cap, SEED))).unwrap();
    assert_same_operator(&completion, &conjugated, &cap);
}

#[test]
fn transport_validation_catches_broken_operators() {
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 1]);
    // a non-natural "isomorphism": complement only when white label 1 is
    // present, identity otherwise; conjugation then fails the axioms
    let crooked = SpeciesIso::new(
        std::rc::Rc::new(|omega: &LabeledSet, x: &Structure| {
            if omega.sort(0).contains(&1) {
                let mut cells = BTreeSet::new();
                for &w in omega.sort(0) {
                    for &b in omega.sort(1) {
                        cells.insert((w, b));
                    }
                }
                Structure::Edges(cells.difference(x.as_edges()).copied().collect())
            } else {
                x.clone()
            }
        }),
        std::rc::Rc::new(|omega: &LabeledSet, x: &Structure| {
            if omega.sort(0).contains(&1) {
                let mut cells = BTreeSet::new();
                for &w in omega.sort(0) {
                    for &b in omega.sort(1) {
                        cells.insert((w, b));
                    }
                }
                Structure::Edges(cells.difference(x.as_edges()).copied().collect())
            } else {
                x.clone()
            }
        }),
    );
    let result = transport_operator(&crooked, &s, &s, Some((&cap, SEED)));
    assert!(result.is_err());
}

#[test]
fn psi_images_multiply_under_the_operator() {
    // the defining property: eta(x1, x2) = psi^{-1}(psi(x1) u psi(x2))
    let s = bipartite_species(BipartiteVariant::Union);
    let cap = MultiIndex(vec![2, 2]);
    let psi = build_psi(&s, &cap, SEED).unwrap();
    for idx in MultiIndex::indices_up_to(&cap) {
        let omega = standard_object(&idx);
        for bip in bipartitions(&omega, false) {
            for x1 in s.enumerate(&bip.first) {
                for x2 in s.enumerate(&bip.second) {
                    let via_eta = s.eta(&bip, &x1, &x2).unwrap();
                    let mut parts = psi.forward(&bip.first, &x1).as_components().clone();
                    parts.extend(
                        psi.forward(&bip.second, &x2)
                            .as_components()
                            .iter()
                            .cloned(),
                    );
                    let via_psi = psi.inverse(&omega, &Structure::Components(parts));
                    assert_eq!(via_eta, via_psi);
                }
            }
        }
    }
    let _ = OrderedBipartition::new(LabeledSet::empty(2), LabeledSet::empty(2));
}
