//! Indecomposable structures and the component filtration.
//!
//! `F_eta[omega]` is everything in `F[omega]` that is not an eta-image of a
//! proper ordered bipartition; `F_eta^(k)[omega]` collects the structures
//! assembling from exactly k indecomposables, via the recursion
//! `F^(k)[omega] = union over omega_1 of eta(F_eta[omega_1] x
//! F^(k-1)[omega - omega_1])`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use crate::bundle::SpeciesBundle;
use crate::error::SpeciesError;
use crate::object::{bipartitions, standard_object, sub_objects, LabeledSet, OrderedBipartition, SortedBijection};
use crate::structure::Structure;

type SetCache<K> = RefCell<BTreeMap<K, Rc<BTreeSet<Structure>>>>;

/// Memoizing engine for indecomposables and filtration levels.
///
/// In `standardized` mode every query is routed through the standard object
/// of the same size vector and transported back along the order-preserving
/// relabelling; this caches results per isomorphism class but relies on the
/// operator being natural. The `direct` mode computes on the given labels
/// only and assumes nothing, which is what the axiom checkers use.
pub struct Decomposer {
    species: SpeciesBundle,
    standardize: bool,
    enums: RefCell<BTreeMap<LabeledSet, Rc<Vec<Structure>>>>,
    indec: SetCache<LabeledSet>,
    filt: SetCache<(LabeledSet, usize)>,
}

impl Decomposer {
    pub fn direct(species: &SpeciesBundle) -> Result<Self, SpeciesError> {
        species.eta_fn()?;
        Ok(Decomposer {
            species: species.clone(),
            standardize: false,
            enums: RefCell::new(BTreeMap::new()),
            indec: RefCell::new(BTreeMap::new()),
            filt: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn standardized(species: &SpeciesBundle) -> Result<Self, SpeciesError> {
        species.eta_fn()?;
        Ok(Decomposer {
            species: species.clone(),
            standardize: true,
            enums: RefCell::new(BTreeMap::new()),
            indec: RefCell::new(BTreeMap::new()),
            filt: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn species(&self) -> &SpeciesBundle {
        &self.species
    }

    /// Cached `F[omega]`.
    pub fn enumerate(&self, omega: &LabeledSet) -> Rc<Vec<Structure>> {
        if let Some(hit) = self.enums.borrow().get(omega) {
            return hit.clone();
        }
        let xs = Rc::new(self.species.enumerate(omega));
        self.enums
            .borrow_mut()
            .insert(omega.clone(), xs.clone());
        xs
    }

    /// `F_eta[omega]`.
    pub fn indecomposables(&self, omega: &LabeledSet) -> Rc<BTreeSet<Structure>> {
        if let Some(hit) = self.indec.borrow().get(omega) {
            return hit.clone();
        }
        let result = if self.standardize && !is_standard(omega) {
            let std = standard_object(&omega.sizes());
            let std_set = self.indecomposables(&std);
            let f = order_preserving(&std, omega);
            Rc::new(
                std_set
                    .iter()
                    .map(|x| self.species.transport(&f, x))
                    .collect(),
            )
        } else {
            Rc::new(self.compute_indecomposables(omega))
        };
        self.indec
            .borrow_mut()
            .insert(omega.clone(), result.clone());
        result
    }

    fn compute_indecomposables(&self, omega: &LabeledSet) -> BTreeSet<Structure> {
        if omega.is_empty() {
            return BTreeSet::new();
        }
        let eta = self.species.eta_fn().expect("checked at construction").clone();
        let mut rest: BTreeSet<Structure> = self.enumerate(omega).iter().cloned().collect();
        for bip in bipartitions(omega, true) {
            let xs1 = self.enumerate(&bip.first);
            let xs2 = self.enumerate(&bip.second);
            for x1 in xs1.iter() {
                for x2 in xs2.iter() {
                    rest.remove(&eta(&bip, x1, x2));
                }
            }
            if rest.is_empty() {
                break;
            }
        }
        rest
    }

    /// `F_eta^(k)[omega]`.
    pub fn filtration(&self, omega: &LabeledSet, k: usize) -> Rc<BTreeSet<Structure>> {
        let key = (omega.clone(), k);
        if let Some(hit) = self.filt.borrow().get(&key) {
            return hit.clone();
        }
        let result = if self.standardize && !is_standard(omega) {
            let std = standard_object(&omega.sizes());
            let std_set = self.filtration(&std, k);
            let f = order_preserving(&std, omega);
            Rc::new(
                std_set
                    .iter()
                    .map(|x| self.species.transport(&f, x))
                    .collect(),
            )
        } else {
            Rc::new(self.compute_filtration(omega, k))
        };
        self.filt.borrow_mut().insert(key, result.clone());
        result
    }

    fn compute_filtration(&self, omega: &LabeledSet, k: usize) -> BTreeSet<Structure> {
        if k == 0 {
            return if omega.is_empty() {
                self.enumerate(omega).iter().cloned().collect()
            } else {
                BTreeSet::new()
            };
        }
        let eta = self.species.eta_fn().expect("checked at construction").clone();
        let mut out = BTreeSet::new();
        for part in sub_objects(omega) {
            // the empty part contributes nothing: F_eta[empty] is empty by
            // definition
            if part.is_empty() {
                continue;
            }
            let firsts = self.indecomposables(&part);
            if firsts.is_empty() {
                continue;
            }
            let rest = omega.minus(&part);
            let seconds = self.filtration(&rest, k - 1);
            if seconds.is_empty() {
                continue;
            }
            let bip = OrderedBipartition::new(part, rest);
            for x1 in firsts.iter() {
                for x2 in seconds.iter() {
                    out.insert(eta(&bip, x1, x2));
                }
            }
        }
        out
    }

    /// The unique k with `x` in `F_eta^(k)[omega]`; errors when no or
    /// several levels contain it, which signals a broken operator.
    pub fn component_count(
        &self,
        omega: &LabeledSet,
        x: &Structure,
    ) -> Result<usize, SpeciesError> {
        let mut found: Option<usize> = None;
        for k in 0..=omega.norm() {
            if self.filtration(omega, k).contains(x) {
                match found {
                    None => found = Some(k),
                    Some(first) => {
                        return Err(SpeciesError::AmbiguousComponentCount {
                            omega: omega.to_string(),
                            structure: x.encode(omega),
                            first,
                            second: k,
                        })
                    }
                }
            }
        }
        found.ok_or_else(|| SpeciesError::NoComponentCount {
            omega: omega.to_string(),
            structure: x.encode(omega),
        })
    }
}

fn is_standard(omega: &LabeledSet) -> bool {
    *omega == standard_object(&omega.sizes())
}

/// The order-preserving relabelling between equinumerous objects.
fn order_preserving(from: &LabeledSet, to: &LabeledSet) -> SortedBijection {
    let maps = (0..from.arity())
        .map(|j| {
            from.sort(j)
                .iter()
                .copied()
                .zip(to.sort(j).iter().copied())
                .collect()
        })
        .collect();
    SortedBijection::new(maps)
}

/// `F_eta[omega]`, computed directly on the given labels.
pub fn indecomposables(
    species: &SpeciesBundle,
    omega: &LabeledSet,
) -> Result<BTreeSet<Structure>, SpeciesError> {
    let dec = Decomposer::direct(species)?;
    Ok(dec.indecomposables(omega).as_ref().clone())
}

/// `F_eta^(k)[omega]`, computed directly on the given labels.
pub fn filtration(
    species: &SpeciesBundle,
    omega: &LabeledSet,
    k: usize,
) -> Result<BTreeSet<Structure>, SpeciesError> {
    let dec = Decomposer::direct(species)?;
    Ok(dec.filtration(omega, k).as_ref().clone())
}

/// Number of indecomposable components of `x`, via the memoized filtration.
pub fn component_count(
    species: &SpeciesBundle,
    omega: &LabeledSet,
    x: &Structure,
) -> Result<usize, SpeciesError> {
    let dec = Decomposer::standardized(species)?;
    dec.component_count(omega, x)
}
