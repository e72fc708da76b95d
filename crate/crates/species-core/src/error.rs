use thiserror::Error;

use egf_engine::EgfError;

#[derive(Debug, Error)]
pub enum SpeciesError {
    #[error("species `{0}` has no composition operator")]
    MissingOperator(String),
    #[error("arity mismatch: cap has {cap} sorts, species has {species}")]
    ArityMismatch { cap: usize, species: usize },
    #[error("enumeration budget exceeded on {omega}: {seen} structures > budget {budget}")]
    BudgetExceeded {
        omega: String,
        seen: u64,
        budget: u64,
    },
    #[error("no filtration level contains {structure} on {omega}")]
    NoComponentCount { omega: String, structure: String },
    #[error("structure {structure} on {omega} lies in filtration levels {first} and {second}")]
    AmbiguousComponentCount {
        omega: String,
        structure: String,
        first: usize,
        second: usize,
    },
    #[error("isomorphism validation failed: {0}")]
    InvalidIsomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Series(#[from] EgfError),
}
