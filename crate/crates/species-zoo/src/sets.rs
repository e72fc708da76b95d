//! The species `E(G)` of sets of G-structures over a partition of the
//! ground object, with the natural disjoint-union operator, and its
//! twisted variants.

use std::collections::BTreeSet;
use std::rc::Rc;

use egf_engine::MultiIndex;
use exact_arith::Poly;
use species_core::{
    set_partitions, LabeledSet, OrderedBipartition, SortedBijection, SpeciesBundle, SpeciesError,
    Structure,
};

use crate::iso::{validate_iso, SpeciesIso};

fn component_sets(g: &SpeciesBundle, omega: &LabeledSet) -> Vec<Structure> {
    if omega.is_empty() {
        return vec![Structure::empty_components()];
    }
    let mut out = Vec::new();
    for m in 1..=omega.norm() {
        for blocks in set_partitions(omega, m) {
            let choices: Vec<Vec<Structure>> =
                blocks.iter().map(|b| g.enumerate(b)).collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut stack: Vec<BTreeSet<(Structure, LabeledSet)>> = vec![BTreeSet::new()];
            for (block, options) in blocks.iter().zip(&choices) {
                let mut next = Vec::with_capacity(stack.len() * options.len());
                for partial in &stack {
                    for x in options {
                        let mut set = partial.clone();
                        set.insert((x.clone(), block.clone()));
                        next.push(set);
                    }
                }
                stack = next;
            }
            out.extend(stack.into_iter().map(Structure::Components));
        }
    }
    out
}

fn transport_components(g: &SpeciesBundle, f: &SortedBijection, x: &Structure) -> Structure {
    Structure::Components(
        x.as_components()
            .iter()
            .map(|(part, support)| {
                let restricted = f.restrict(support);
                (g.transport(&restricted, part), f.image_of(support))
            })
            .collect(),
    )
}

/// `E(G)`: sets of G-structures over nonempty disjoint supports covering
/// the object. The operator is union of component sets; the weight is the
/// product of component weights.
pub fn sets_of(g: &SpeciesBundle) -> SpeciesBundle {
    let name = format!("sets-of-{}", g.name());
    let enumerate = {
        let g = g.clone();
        Rc::new(move |omega: &LabeledSet| component_sets(&g, omega))
    };
    let transport = {
        let g = g.clone();
        Rc::new(move |f: &SortedBijection, x: &Structure| transport_components(&g, f, x))
    };
    let eta = Rc::new(
        |_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
            Structure::Components(
                x1.as_components()
                    .union(x2.as_components())
                    .cloned()
                    .collect(),
            )
        },
    );
    let weight = {
        let g = g.clone();
        Rc::new(move |_omega: &LabeledSet, x: &Structure| {
            let mut w = Poly::one();
            for (part, support) in x.as_components() {
                w = &w * &g.weight(support, part);
            }
            w
        })
    };
    SpeciesBundle::new(name, g.arity(), enumerate, transport)
        .with_eta(eta)
        .with_weight(weight)
}

/// Apply a G-isomorphism to every component of a component set.
fn map_components(g_iso: &SpeciesIso, x: &Structure) -> Structure {
    Structure::Components(
        x.as_components()
            .iter()
            .map(|(part, support)| (g_iso.forward(support, part), support.clone()))
            .collect(),
    )
}

/// `E(G)` with the twisted operator `eta(x1, x2) = x1 u g(x2)`, where the
/// weight-preserving isomorphism `g: G -> G` acts on every component of the
/// second argument. Validates `g` on standard objects up to `cap` first.
pub fn twist(
    g: &SpeciesBundle,
    g_iso: &SpeciesIso,
    cap: &MultiIndex,
    seed: u64,
) -> Result<SpeciesBundle, SpeciesError> {
    validate_iso(g_iso, g, g, cap, seed)?;
    let base = sets_of(g);
    let name = format!("twisted-{}", base.name());
    let eta = {
        let g_iso = g_iso.clone();
        Rc::new(
            move |_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
                let twisted = map_components(&g_iso, x2);
                Structure::Components(
                    x1.as_components()
                        .union(twisted.as_components())
                        .cloned()
                        .collect(),
                )
            },
        )
    };
    Ok(base.with_eta(eta).with_name(name))
}
