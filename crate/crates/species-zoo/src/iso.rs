//! Species isomorphisms: per-object bijections commuting with transport,
//! optionally weight-preserving.

use std::rc::Rc;

use egf_engine::MultiIndex;
use species_core::{
    morphism_samples, standard_object, LabeledSet, SpeciesBundle, SpeciesError, Structure,
};

pub type IsoFn = Rc<dyn Fn(&LabeledSet, &Structure) -> Structure>;

/// A species isomorphism given by its action and its inverse.
#[derive(Clone)]
pub struct SpeciesIso {
    forward: IsoFn,
    inverse: IsoFn,
}

impl std::fmt::Debug for SpeciesIso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SpeciesIso")
    }
}

impl SpeciesIso {
    pub fn new(forward: IsoFn, inverse: IsoFn) -> Self {
        SpeciesIso { forward, inverse }
    }

    pub fn identity() -> Self {
        let id: IsoFn = Rc::new(|_: &LabeledSet, x: &Structure| x.clone());
        SpeciesIso {
            forward: id.clone(),
            inverse: id,
        }
    }

    pub fn forward(&self, omega: &LabeledSet, x: &Structure) -> Structure {
        (self.forward)(omega, x)
    }

    pub fn inverse(&self, omega: &LabeledSet, x: &Structure) -> Structure {
        (self.inverse)(omega, x)
    }

    /// The same isomorphism read in the opposite direction.
    pub fn inverted(&self) -> SpeciesIso {
        SpeciesIso {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// Check that `iso` really is a weight-preserving isomorphism from `source`
/// to `target` on all standard objects up to `cap`: bijective per object,
/// natural with respect to generating morphisms, and weight-compatible.
pub fn validate_iso(
    iso: &SpeciesIso,
    source: &SpeciesBundle,
    target: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<(), SpeciesError> {
    if source.arity() != target.arity() || source.arity() != cap.arity() {
        return Err(SpeciesError::ArityMismatch {
            cap: cap.arity(),
            species: source.arity(),
        });
    }
    for idx in MultiIndex::indices_up_to(cap) {
        let omega = standard_object(&idx);
        let xs = source.enumerate(&omega);
        let targets = target.enumerate(&omega);
        let mut images = std::collections::BTreeSet::new();
        for x in &xs {
            let image = iso.forward(&omega, x);
            if !targets.contains(&image) {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "image {} of {} on {omega} is not a target structure",
                    image.encode(&omega),
                    x.encode(&omega)
                )));
            }
            if iso.inverse(&omega, &image) != *x {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "inverse does not round-trip {} on {omega}",
                    x.encode(&omega)
                )));
            }
            if !images.insert(image) {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "not injective on {omega}"
                )));
            }
            let w_src = source.weight(&omega, x);
            let w_tgt = target.weight(&omega, &iso.forward(&omega, x));
            if w_src != w_tgt {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "weight of {} changes from {} to {} on {omega}",
                    x.encode(&omega),
                    w_src,
                    w_tgt
                )));
            }
        }
        if images.len() != targets.len() {
            return Err(SpeciesError::InvalidIsomorphism(format!(
                "not surjective on {omega}: {} images vs {} targets",
                images.len(),
                targets.len()
            )));
        }
        for f in morphism_samples(&omega, seed, 2) {
            let image_omega = f.target();
            for x in &xs {
                let lhs = iso.forward(&image_omega, &source.transport(&f, x));
                let rhs = target.transport(&f, &iso.forward(&omega, x));
                if lhs != rhs {
                    return Err(SpeciesError::InvalidIsomorphism(format!(
                        "naturality fails for {} along {f} on {omega}",
                        x.encode(&omega)
                    )));
                }
            }
        }
    }
    Ok(())
}
