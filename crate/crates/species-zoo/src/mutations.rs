//! Deliberately broken bipartite operators used to confirm that the check
//! suite actually detects violations. Each mutation is a small, documented
//! defect in the disjoint-union operator; none of them is a valid
//! composition operator.

use std::collections::BTreeSet;
use std::rc::Rc;

use species_core::{OrderedBipartition, SpeciesBundle, Structure};

use crate::bipartite::{bipartite_species, BipartiteVariant};

fn union_edges(x1: &Structure, x2: &Structure) -> BTreeSet<(u32, u32)> {
    x1.as_edges().union(x2.as_edges()).copied().collect()
}

/// Forms the disjoint union and then deletes the largest edge. Losing an
/// edge makes distinct pairs collide, so injectivity fails.
pub fn edge_dropping_bipartite() -> SpeciesBundle {
    let eta = Rc::new(
        |_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
            let mut edges = union_edges(x1, x2);
            if let Some(&last) = edges.iter().next_back() {
                edges.remove(&last);
            }
            Structure::Edges(edges)
        },
    );
    bipartite_species(BipartiteVariant::Union)
        .with_eta(eta)
        .with_name("bipartite-edge-dropping")
}

/// Ignores the second argument's edges entirely; trivially non-injective
/// whenever the second part carries more than one graph.
pub fn non_injective_bipartite() -> SpeciesBundle {
    let eta = Rc::new(
        |_bip: &OrderedBipartition, x1: &Structure, _x2: &Structure| {
            Structure::Edges(x1.as_edges().clone())
        },
    );
    bipartite_species(BipartiteVariant::Union)
        .with_eta(eta)
        .with_name("bipartite-second-ignoring")
}

/// Label-sensitive operator: plain union unless white label 1 sits in the
/// second part, in which case all cross edges are inserted. Each single
/// eta map stays injective, but a transposition moving label 1 between the
/// parts changes the branch, so the naturality square fails.
pub fn naturality_breaking_bipartite() -> SpeciesBundle {
    let eta = Rc::new(
        |bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
            let mut edges = union_edges(x1, x2);
            if bip.second.sort(0).contains(&1) {
                for &w in bip.first.sort(0) {
                    for &b in bip.second.sort(1) {
                        edges.insert((w, b));
                    }
                }
                for &w in bip.second.sort(0) {
                    for &b in bip.first.sort(1) {
                        edges.insert((w, b));
                    }
                }
            }
            Structure::Edges(edges)
        },
    );
    bipartite_species(BipartiteVariant::Union)
        .with_eta(eta)
        .with_name("bipartite-label-sensitive")
}
