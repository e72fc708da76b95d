//! Concrete species with composition operators: bipartite graphs under two
//! different operators, binary functions, magic matrices in four variants,
//! the species of sets `E(G)` with its natural and twisted operators, and
//! the constructive machinery relating them (operator transport along
//! isomorphisms and the component-set isomorphism).

mod binary;
mod bipartite;
mod iso;
mod magic;
pub mod mutations;
mod psi;
mod sets;

pub use binary::{binary_function_species, swap_iso, two_point_species};
pub use bipartite::{
    bipartite_connected, bipartite_species, complement_iso, connected_components,
    BipartiteVariant,
};
pub use iso::{validate_iso, SpeciesIso};
pub use magic::{
    enumerate_2magic_birkhoff, enumerate_magic, indecomposable_2magic_count, magic_species,
    verify_magic_relations, MagicVariant,
};
pub use psi::{build_psi, indecomposable_subspecies, transport_operator};
pub use sets::{sets_of, twist};
