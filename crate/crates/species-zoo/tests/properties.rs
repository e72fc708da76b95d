//! Property tests over randomly sampled structures: the filtration level
//! of a structure must agree with independent combinatorial descriptions
//! of its components.

use std::collections::BTreeSet;

use proptest::prelude::*;
use species_core::{
    component_count, standard_object, MultiIndex, OrderedBipartition, Structure,
};
use species_zoo::{
    bipartite_species, binary_function_species, connected_components, enumerate_magic,
    BipartiteVariant,
};

fn arb_edges(n1: usize, n2: usize) -> impl Strategy<Value = BTreeSet<(u32, u32)>> {
    let cells: Vec<(u32, u32)> = (1..=n1 as u32)
        .flat_map(|w| (1..=n2 as u32).map(move |b| (w, b)))
        .collect();
    let len = cells.len();
    (0u64..(1 << len)).prop_map(move |mask| {
        cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bipartite_component_count_matches_graph_components(
        edges in arb_edges(3, 2)
    ) {
        let species = bipartite_species(BipartiteVariant::Union);
        let omega = standard_object(&MultiIndex(vec![3, 2]));
        let graph = Structure::Edges(edges);
        let counted = component_count(&species, &omega, &graph).unwrap();
        prop_assert_eq!(counted, connected_components(&omega, &graph).len());
    }

    #[test]
    fn binary_functions_have_one_component_per_point(
        bits in proptest::collection::vec(0u8..=1, 1..=6)
    ) {
        let species = binary_function_species();
        let n = bits.len();
        let omega = standard_object(&MultiIndex(vec![n]));
        let table = Structure::Table(
            bits.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v)).collect(),
        );
        prop_assert_eq!(component_count(&species, &omega, &table).unwrap(), n);
    }

    #[test]
    fn direct_sums_of_magic_matrices_are_magic(
        left in 0usize..3,
        right in 0usize..21,
    ) {
        // pick one 1x1 and one 3x3 two-magic matrix, place them in
        // diagonal blocks, and confirm the sum lands in the species on
        // the combined support
        let small: Vec<Structure> = enumerate_magic(2, 2, u64::MAX).unwrap().into_iter().collect();
        let big: Vec<Structure> = enumerate_magic(2, 3, u64::MAX).unwrap().into_iter().collect();
        let species = species_zoo::magic_species(2, species_zoo::MagicVariant::All);
        let first = species_core::LabeledSet::from_slices(&[&[1, 2], &[1, 2]]);
        let second = species_core::LabeledSet::from_slices(&[&[3, 4, 5], &[3, 4, 5]]);
        let shift = |m: &Structure| Structure::Matrix(
            m.as_matrix().iter().map(|(&(r, c), &v)| ((r + 2, c + 2), v)).collect(),
        );
        let bip = OrderedBipartition::new(first, second);
        let sum = species.eta(&bip, &small[left], &shift(&big[right])).unwrap();
        let whole = bip.whole();
        prop_assert!(species.enumerate(&whole).contains(&sum));
    }
}
