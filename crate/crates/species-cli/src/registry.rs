//! Name registries: species selection and the check-name to operation map.

use std::fmt;
use std::rc::Rc;

use egf_engine::MultiIndex;
use species_core::{
    bipartitions, check_base_point, check_composition_operator, check_d1, check_functoriality,
    check_injectivity, check_naturality, check_partition_properties, check_permutability,
    check_pointwise, check_weight, standard_object, verify_exponential_formula,
    verify_refined_formula, CheckReport, LabeledSet, Runner, SpeciesBundle, SpeciesError,
    Structure, Witness,
};
use species_zoo::{
    binary_function_species, bipartite_species, build_psi, indecomposable_subspecies,
    magic_species, sets_of, swap_iso, transport_operator, twist, two_point_species,
    verify_magic_relations, BipartiteVariant, MagicVariant,
};

use crate::CommonArgs;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckName {
    Inject,
    Natural,
    D1,
    Composition,
    Partition,
    Permute,
    Basepoint,
    Functorial,
    Weights,
    ExpFormula,
    RefinedFormula,
    Pointwise,
    ClosedForms,
    Psi,
}

impl CheckName {
    const TABLE: [(&'static str, CheckName); 15] = [
        ("inject", CheckName::Inject),
        ("natural", CheckName::Natural),
        ("d1", CheckName::D1),
        ("composition", CheckName::Composition),
        ("partition", CheckName::Partition),
        ("permute", CheckName::Permute),
        ("basepoint", CheckName::Basepoint),
        ("functorial", CheckName::Functorial),
        ("weights", CheckName::Weights),
        ("w2", CheckName::Weights),
        ("exp-formula", CheckName::ExpFormula),
        ("refined-formula", CheckName::RefinedFormula),
        ("pointwise", CheckName::Pointwise),
        ("closed-forms", CheckName::ClosedForms),
        ("psi", CheckName::Psi),
    ];
}

pub fn parse_checks(names: &[String]) -> Result<Vec<CheckName>, String> {
    names
        .iter()
        .map(|name| {
            CheckName::TABLE
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, c)| *c)
                .ok_or_else(|| format!("unknown check: {name}"))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum SpeciesChoice {
    Bipartite {
        variant: BipartiteVariant,
        weight_override: Option<BipartiteVariant>,
    },
    Binary,
    Magic {
        s: u32,
        variant: MagicVariant,
    },
    Twist,
}

impl fmt::Display for SpeciesChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeciesChoice::Bipartite { variant, .. } => write!(f, "bipartite/{variant:?}"),
            SpeciesChoice::Binary => write!(f, "binary"),
            SpeciesChoice::Magic { s, variant } => write!(f, "magic-{s}/{variant}"),
            SpeciesChoice::Twist => write!(f, "twist"),
        }
    }
}

impl SpeciesChoice {
    pub fn from_args(args: &CommonArgs) -> Result<Self, String> {
        match args.species.as_str() {
            "bipartite" => {
                let variant = match args.variant.as_deref() {
                    Some("union") | None => BipartiteVariant::Union,
                    Some("completion") => BipartiteVariant::Completion,
                    Some(v) => return Err(format!("unknown bipartite variant: {v}")),
                };
                let weight_override = match args.weight.as_deref() {
                    None => None,
                    Some("edges") => Some(BipartiteVariant::Union),
                    Some("complement") => Some(BipartiteVariant::Completion),
                    Some(w) => return Err(format!("unknown weight: {w}")),
                };
                Ok(SpeciesChoice::Bipartite {
                    variant,
                    weight_override,
                })
            }
            "binary" => Ok(SpeciesChoice::Binary),
            "magic" => {
                let s = args.s.ok_or("magic species needs --s")?;
                if s == 0 {
                    return Err("--s must be positive".into());
                }
                let variant = match args.variant.as_deref() {
                    Some("all") | None => MagicVariant::All,
                    Some("barred") => MagicVariant::Barred,
                    Some("symmetric") => MagicVariant::Symmetric,
                    Some("barred-symmetric") => MagicVariant::BarredSymmetric,
                    Some(v) => return Err(format!("unknown magic variant: {v}")),
                };
                Ok(SpeciesChoice::Magic { s, variant })
            }
            "twist" => Ok(SpeciesChoice::Twist),
            other => Err(format!("unknown species: {other}")),
        }
    }
}

pub fn build_species(
    choice: &SpeciesChoice,
    cap: &MultiIndex,
    seed: u64,
) -> Result<SpeciesBundle, SpeciesError> {
    let species = match choice {
        SpeciesChoice::Bipartite {
            variant,
            weight_override,
        } => {
            let mut species = bipartite_species(*variant);
            if let Some(weight_variant) = weight_override {
                let donor = bipartite_species(*weight_variant);
                species = species.with_weight(Rc::new(move |omega: &LabeledSet, x: &Structure| {
                    donor.weight(omega, x)
                }));
            }
            species
        }
        SpeciesChoice::Binary => binary_function_species(),
        SpeciesChoice::Magic { s, variant } => magic_species(*s, *variant),
        SpeciesChoice::Twist => twist(&two_point_species(), &swap_iso(), cap, seed)?,
    };
    if species.arity() != cap.arity() {
        return Err(SpeciesError::ArityMismatch {
            cap: cap.arity(),
            species: species.arity(),
        });
    }
    Ok(species)
}

/// Build psi, conjugate the natural component-set operator back along its
/// inverse, and confirm the original operator is recovered structure by
/// structure.
fn psi_check(species: &SpeciesBundle, cap: &MultiIndex, seed: u64) -> CheckReport {
    let mut run = Runner::new("psi");
    let psi = match build_psi(species, cap, seed) {
        Ok(psi) => psi,
        Err(e) => {
            return run.fail(
                Witness::new("psi-construction", &LabeledSet::empty(species.arity()))
                    .item("error", e),
            )
        }
    };
    let components = match indecomposable_subspecies(species) {
        Ok(sub) => sets_of(&sub),
        Err(e) => {
            return run.fail(
                Witness::new("psi-construction", &LabeledSet::empty(species.arity()))
                    .item("error", e),
            )
        }
    };
    let recovered = match transport_operator(&psi.inverted(), &components, species, None) {
        Ok(bundle) => bundle,
        Err(e) => {
            return run.fail(
                Witness::new("psi-conjugation", &LabeledSet::empty(species.arity()))
                    .item("error", e),
            )
        }
    };
    for idx in MultiIndex::indices_up_to(cap) {
        let omega = standard_object(&idx);
        for bip in bipartitions(&omega, false) {
            for x1 in species.enumerate(&bip.first) {
                for x2 in species.enumerate(&bip.second) {
                    run.case();
                    let original = species.eta(&bip, &x1, &x2).expect("operator present");
                    let conjugated = recovered.eta(&bip, &x1, &x2).expect("operator present");
                    if original != conjugated {
                        return run.fail(
                            Witness::new("psi-conjugation", &omega)
                                .item("bipartition", &bip)
                                .item("x1", x1.encode(&bip.first))
                                .item("x2", x2.encode(&bip.second))
                                .item("eta", original.encode(&omega))
                                .item("conjugated-eta", conjugated.encode(&omega)),
                        );
                    }
                }
            }
        }
    }
    run.pass()
}

pub fn run_check(
    check: CheckName,
    choice: &SpeciesChoice,
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
    budget: u64,
    max_m: usize,
) -> Result<CheckReport, SpeciesError> {
    match check {
        CheckName::Inject => check_injectivity(species, cap),
        CheckName::Natural => check_naturality(species, cap, seed),
        CheckName::D1 => check_d1(species, cap),
        CheckName::Composition => check_composition_operator(species, cap, seed),
        CheckName::Partition => check_partition_properties(species, cap),
        CheckName::Permute => check_permutability(species, cap, max_m),
        CheckName::Basepoint => check_base_point(species, cap),
        CheckName::Functorial => check_functoriality(species, cap, seed),
        CheckName::Weights => check_weight(species, cap, seed),
        CheckName::ExpFormula => verify_exponential_formula(species, cap, budget),
        CheckName::RefinedFormula => verify_refined_formula(species, cap, budget),
        CheckName::Pointwise => check_pointwise(species, cap),
        CheckName::ClosedForms => match choice {
            SpeciesChoice::Magic { s: 2, .. } => {
                // cap entries: first bounds the two-sort variants, last the
                // symmetric ones
                let cap_pair = cap.0[0];
                let cap_sym = *cap.0.last().expect("nonempty cap");
                verify_magic_relations(cap_pair, cap_sym, budget)
            }
            _ => Err(SpeciesError::Precondition(
                "closed-forms requires --species magic --s 2".into(),
            )),
        },
        CheckName::Psi => Ok(psi_check(species, cap, seed)),
    }
}
