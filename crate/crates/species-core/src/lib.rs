//! Generic multisort-species framework: labelled ground objects, transport
//! along sort-wise bijections, composition operators, the axiom and lemma
//! checking suite, indecomposables with their component filtration, and
//! exact generating-function extraction.
//!
//! A species here is a [`SpeciesBundle`]: an enumerator over finite label
//! tuples together with transport, an optional composition operator, and an
//! optional polynomial weight. Everything downstream (axiom checks,
//! component counts, series identities) is a pure function of the bundle.

mod bundle;
mod checks;
mod decompose;
mod egf_extract;
mod error;
mod object;
mod report;
mod structure;

pub use bundle::{EnumerateFn, EtaFn, SpeciesBundle, TransportFn, WeightFn};
pub use checks::{
    check_base_point, check_composition_operator, check_d1, check_functoriality,
    check_injectivity, check_naturality, check_partition_properties, check_permutability,
    check_pointwise, check_weight, morphism_samples,
};
pub use decompose::{component_count, filtration, indecomposables, Decomposer};
pub use egf_extract::{
    filtration_egf, indecomposables_egf, species_egf, verify_exponential_formula,
    verify_refined_formula,
};
pub use error::SpeciesError;
pub use object::{
    bipartitions, set_partitions, standard_object, sub_objects, BasePoint, LabeledSet,
    OrderedBipartition, SortedBijection,
};
pub use report::{CheckReport, Runner, Verdict, Witness};
pub use structure::Structure;

pub use egf_engine::MultiIndex;
