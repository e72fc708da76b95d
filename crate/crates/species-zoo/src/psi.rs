//! The component-set isomorphism `psi: F -> E(F_eta)` for pointwise
//! associative and commutative operators, built by base-point peeling, and
//! operator transport along arbitrary species isomorphisms.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use egf_engine::MultiIndex;
use species_core::{
    check_composition_operator, check_pointwise, morphism_samples, standard_object, sub_objects,
    BasePoint, Decomposer, LabeledSet, OrderedBipartition, SpeciesBundle, SpeciesError, Structure,
};

use crate::iso::SpeciesIso;
use crate::sets::sets_of;

/// The species `F_eta` of indecomposables of `s`, as a bundle of its own
/// (no operator, weight inherited).
pub fn indecomposable_subspecies(s: &SpeciesBundle) -> Result<SpeciesBundle, SpeciesError> {
    let dec = Rc::new(Decomposer::direct(s)?);
    let name = format!("indecomposables-of-{}", s.name());
    let enumerate = Rc::new(move |omega: &LabeledSet| {
        dec.indecomposables(omega).iter().cloned().collect()
    });
    let transport = {
        let s = s.clone();
        Rc::new(move |f: &species_core::SortedBijection, x: &Structure| s.transport(f, x))
    };
    let weight = {
        let s = s.clone();
        Rc::new(move |omega: &LabeledSet, x: &Structure| s.weight(omega, x))
    };
    Ok(SpeciesBundle::new(name, s.arity(), enumerate, transport).with_weight(weight))
}

/// For one sub-object: the eta preimages of every composite it can open.
type PeelTable = Vec<(LabeledSet, BTreeMap<Structure, (Structure, Structure)>)>;

struct PsiBuilder {
    species: SpeciesBundle,
    dec: Decomposer,
    peels: RefCell<BTreeMap<(LabeledSet, BasePoint), Rc<PeelTable>>>,
    memo: RefCell<BTreeMap<(LabeledSet, Structure), Structure>>,
}

impl PsiBuilder {
    fn new(species: &SpeciesBundle) -> Result<Self, SpeciesError> {
        Ok(PsiBuilder {
            species: species.clone(),
            dec: Decomposer::direct(species)?,
            peels: RefCell::new(BTreeMap::new()),
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    /// Smallest label of the smallest-index nonempty sort.
    fn default_base_point(omega: &LabeledSet) -> BasePoint {
        for sort in 0..omega.arity() {
            if let Some(&label) = omega.sort(sort).iter().next() {
                return BasePoint { label, sort };
            }
        }
        panic!("no base point in the empty object")
    }

    fn peel_table(&self, omega: &LabeledSet, bp: BasePoint) -> Rc<PeelTable> {
        let key = (omega.clone(), bp);
        if let Some(hit) = self.peels.borrow().get(&key) {
            return hit.clone();
        }
        let eta = self.species.eta_fn().expect("operator present").clone();
        let mut table = Vec::new();
        for part in sub_objects(omega) {
            if !part.contains(&bp) {
                continue;
            }
            let firsts = self.dec.indecomposables(&part);
            if firsts.is_empty() {
                continue;
            }
            let rest = omega.minus(&part);
            let seconds = self.species.enumerate(&rest);
            let bip = OrderedBipartition::new(part.clone(), rest);
            let mut map = BTreeMap::new();
            for y in firsts.iter() {
                for x in &seconds {
                    map.insert(eta(&bip, y, x), (y.clone(), x.clone()));
                }
            }
            table.push((part, map));
        }
        let table = Rc::new(table);
        self.peels.borrow_mut().insert(key, table.clone());
        table
    }

    /// The unique way to split off the indecomposable component containing
    /// the base point.
    fn peel(
        &self,
        omega: &LabeledSet,
        x: &Structure,
        bp: BasePoint,
    ) -> Result<(LabeledSet, Structure, Structure), SpeciesError> {
        let table = self.peel_table(omega, bp);
        let mut found = None;
        for (part, map) in table.iter() {
            if let Some((y, rest_x)) = map.get(x) {
                if found.is_some() {
                    return Err(SpeciesError::Precondition(format!(
                        "base-point decomposition of {} on {omega} at {bp} is not unique",
                        x.encode(omega)
                    )));
                }
                found = Some((part.clone(), y.clone(), rest_x.clone()));
            }
        }
        found.ok_or_else(|| {
            SpeciesError::Precondition(format!(
                "no base-point decomposition of {} on {omega} at {bp}",
                x.encode(omega)
            ))
        })
    }

    fn forward(&self, omega: &LabeledSet, x: &Structure) -> Result<Structure, SpeciesError> {
        if omega.is_empty() {
            return Ok(Structure::empty_components());
        }
        let key = (omega.clone(), x.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let bp = Self::default_base_point(omega);
        let (part, y, rest_x) = self.peel(omega, x, bp)?;
        let rest = omega.minus(&part);
        let tail = self.forward(&rest, &rest_x)?;
        let mut parts = tail.as_components().clone();
        parts.insert((y, part));
        let result = Structure::Components(parts);
        self.memo.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    /// Re-derive the image using an arbitrary first-level base point.
    fn forward_with_base_point(
        &self,
        omega: &LabeledSet,
        x: &Structure,
        bp: BasePoint,
    ) -> Result<Structure, SpeciesError> {
        let (part, y, rest_x) = self.peel(omega, x, bp)?;
        let rest = omega.minus(&part);
        let tail = self.forward(&rest, &rest_x)?;
        let mut parts = tail.as_components().clone();
        parts.insert((y, part));
        Ok(Structure::Components(parts))
    }
}

/// Build the isomorphism `F -> E(F_eta)` by base-point peeling and validate
/// it up to `cap`: pointwise associativity/commutativity of the operator,
/// uniqueness of every peel, independence of the base-point choice,
/// bijectivity onto the component-set species, naturality, and weight
/// preservation.
pub fn build_psi(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<SpeciesIso, SpeciesError> {
    let pointwise = check_pointwise(species, cap)?;
    if !pointwise.passed() {
        let detail = pointwise
            .witness
            .map(|w| format!("{} on {}", w.kind, w.object))
            .unwrap_or_default();
        return Err(SpeciesError::Precondition(format!(
            "operator is not pointwise associative and commutative: {detail}"
        )));
    }

    let builder = Rc::new(PsiBuilder::new(species)?);
    let component_species = sets_of(&indecomposable_subspecies(species)?);

    for idx in MultiIndex::indices_up_to(cap) {
        let omega = standard_object(&idx);
        let xs = species.enumerate(&omega);

        let mut images = BTreeSet::new();
        for x in &xs {
            let image = builder.forward(&omega, x)?;
            if !images.insert(image.clone()) {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "two structures on {omega} map to {}",
                    image.encode(&omega)
                )));
            }
            // weight preservation
            let w_src = species.weight(&omega, x);
            let w_img = component_species.weight(&omega, &image);
            if w_src != w_img {
                return Err(SpeciesError::InvalidIsomorphism(format!(
                    "weight of {} changes from {w_src} to {w_img} on {omega}",
                    x.encode(&omega)
                )));
            }
        }
        let expected: BTreeSet<Structure> =
            component_species.enumerate(&omega).into_iter().collect();
        if images != expected {
            return Err(SpeciesError::InvalidIsomorphism(format!(
                "images on {omega} do not exhaust the component sets: {} vs {}",
                images.len(),
                expected.len()
            )));
        }

        // naturality against sampled morphisms
        for f in morphism_samples(&omega, seed, 2) {
            let target = f.target();
            for x in &xs {
                let lhs = builder.forward(&target, &species.transport(&f, x))?;
                let rhs = component_species.transport(&f, &builder.forward(&omega, x)?);
                if lhs != rhs {
                    return Err(SpeciesError::InvalidIsomorphism(format!(
                        "naturality of the component map fails for {} along {f}",
                        x.encode(&omega)
                    )));
                }
            }
        }
    }

    // base-point independence on every object the recursion visited (the
    // memo keeps growing while we check, so iterate to a fixpoint)
    let mut validated: BTreeSet<(LabeledSet, Structure)> = BTreeSet::new();
    loop {
        let pending: Vec<(LabeledSet, Structure)> = builder
            .memo
            .borrow()
            .keys()
            .filter(|k| !validated.contains(*k))
            .cloned()
            .collect();
        if pending.is_empty() {
            break;
        }
        for (omega, x) in pending {
            let reference = builder.forward(&omega, &x)?;
            for bp in omega.points() {
                let alt = builder.forward_with_base_point(&omega, &x, bp)?;
                if alt != reference {
                    return Err(SpeciesError::InvalidIsomorphism(format!(
                        "component map depends on the base point {bp} for {} on {omega}",
                        x.encode(&omega)
                    )));
                }
            }
            validated.insert((omega, x));
        }
    }

    let forward = {
        let builder = builder.clone();
        Rc::new(move |omega: &LabeledSet, x: &Structure| {
            builder
                .forward(omega, x)
                .expect("component map applied to an invalid structure")
        })
    };
    type InverseMaps = RefCell<BTreeMap<LabeledSet, Rc<BTreeMap<Structure, Structure>>>>;
    let inverse_maps: Rc<InverseMaps> = Rc::new(RefCell::new(BTreeMap::new()));
    let inverse = {
        let builder = builder.clone();
        Rc::new(move |omega: &LabeledSet, e: &Structure| {
            let map = {
                let hit = inverse_maps.borrow().get(omega).cloned();
                match hit {
                    Some(m) => m,
                    None => {
                        let mut m = BTreeMap::new();
                        for x in builder.species.enumerate(omega) {
                            let image = builder
                                .forward(omega, &x)
                                .expect("component map applied to an invalid structure");
                            m.insert(image, x);
                        }
                        let m = Rc::new(m);
                        inverse_maps.borrow_mut().insert(omega.clone(), m.clone());
                        m
                    }
                }
            };
            map.get(e)
                .unwrap_or_else(|| panic!("no preimage for {} on {omega}", e.encode(omega)))
                .clone()
        })
    };
    Ok(SpeciesIso::new(forward, inverse))
}

/// Conjugate the operator of `source` along an isomorphism
/// `iso: source -> target`, giving a composition operator on `target`.
/// When `validate` is set, the conjugated operator is run through the full
/// operator check at that cap and seed.
pub fn transport_operator(
    iso: &SpeciesIso,
    source: &SpeciesBundle,
    target: &SpeciesBundle,
    validate: Option<(&MultiIndex, u64)>,
) -> Result<SpeciesBundle, SpeciesError> {
    let eta1 = source.eta_fn()?.clone();
    let conjugated = {
        let iso = iso.clone();
        Rc::new(
            move |bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
                let y1 = iso.inverse(&bip.first, x1);
                let y2 = iso.inverse(&bip.second, x2);
                iso.forward(&bip.whole(), &eta1(bip, &y1, &y2))
            },
        )
    };
    let out = target
        .clone()
        .with_eta(conjugated)
        .with_name(format!("{}-conjugated", target.name()));
    if let Some((cap, seed)) = validate {
        let report = check_composition_operator(&out, cap, seed)?;
        if !report.passed() {
            let detail = report
                .witness
                .map(|w| format!("{} on {}", w.kind, w.object))
                .unwrap_or_default();
            return Err(SpeciesError::Precondition(format!(
                "conjugated operator fails the operator axioms: {detail}"
            )));
        }
    }
    Ok(out)
}
