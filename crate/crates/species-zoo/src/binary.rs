//! Binary functions on one sort of labels. The composition operator keeps
//! the first function and flips the second, which makes it pointwise
//! non-associative and non-commutative while still satisfying the
//! decomposition axiom. Indecomposables are the two constant functions on a
//! single point.

use std::collections::BTreeMap;
use std::rc::Rc;

use species_core::{LabeledSet, OrderedBipartition, SortedBijection, SpeciesBundle, Structure};

use crate::iso::SpeciesIso;

fn all_tables(omega: &LabeledSet) -> Vec<Structure> {
    let labels: Vec<u32> = omega.sort(0).iter().copied().collect();
    let mut out = Vec::with_capacity(1 << labels.len());
    for mask in 0u64..(1 << labels.len()) {
        let table: BTreeMap<u32, u8> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, ((mask >> i) & 1) as u8))
            .collect();
        out.push(Structure::Table(table));
    }
    out
}

fn relabel_table(f: &SortedBijection, x: &Structure) -> Structure {
    Structure::Table(
        x.as_table()
            .iter()
            .map(|(&l, &v)| (f.apply(0, l), v))
            .collect(),
    )
}

/// The species of all functions `omega -> {0,1}` with the value-flipping
/// operator and the trivial weight.
pub fn binary_function_species() -> SpeciesBundle {
    let enumerate = Rc::new(all_tables);
    let transport = Rc::new(relabel_table);
    let eta = Rc::new(
        |_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
            let mut table = x1.as_table().clone();
            table.extend(x2.as_table().iter().map(|(&l, &v)| (l, 1 - v)));
            Structure::Table(table)
        },
    );
    SpeciesBundle::new("binary-functions", 1, enumerate, transport).with_eta(eta)
}

/// The species with exactly two structures on every single point and none
/// elsewhere; the component species underlying `binary_function_species`.
pub fn two_point_species() -> SpeciesBundle {
    let enumerate = Rc::new(|omega: &LabeledSet| {
        if omega.norm() != 1 {
            return Vec::new();
        }
        let label = *omega.sort(0).iter().next().expect("one point");
        vec![
            Structure::Table([(label, 0)].into_iter().collect()),
            Structure::Table([(label, 1)].into_iter().collect()),
        ]
    });
    let transport = Rc::new(relabel_table);
    SpeciesBundle::new("two-point", 1, enumerate, transport)
}

/// The involution exchanging the two structures of [`two_point_species`].
pub fn swap_iso() -> SpeciesIso {
    let swap = Rc::new(|_omega: &LabeledSet, x: &Structure| {
        Structure::Table(x.as_table().iter().map(|(&l, &v)| (l, 1 - v)).collect())
    });
    SpeciesIso::new(swap.clone(), swap)
}
