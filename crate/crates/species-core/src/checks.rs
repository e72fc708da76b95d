//! The executable axiom and lemma suite.
//!
//! Every check walks all standard objects up to a per-sort cap and verifies
//! one cluster of claims exhaustively: operator injectivity, naturality on
//! a generating set of morphisms, the decomposition axiom, cover and
//! disjointness of the filtration, image-level permutability, base-point
//! decompositions, functoriality of the derived functors, the weight
//! axioms, and pointwise associativity/commutativity. A failing verdict
//! always carries a re-checkable witness.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use egf_engine::MultiIndex;

use crate::bundle::SpeciesBundle;
use crate::decompose::Decomposer;
use crate::error::SpeciesError;
use crate::object::{
    bipartitions, set_partitions, standard_object, sub_objects, LabeledSet, OrderedBipartition,
    SortedBijection,
};
use crate::report::{CheckReport, Runner, Witness};
use crate::structure::Structure;

fn check_arity(species: &SpeciesBundle, cap: &MultiIndex) -> Result<(), SpeciesError> {
    if species.arity() != cap.arity() {
        return Err(SpeciesError::ArityMismatch {
            cap: cap.arity(),
            species: species.arity(),
        });
    }
    Ok(())
}

fn standard_objects_up_to(cap: &MultiIndex) -> Vec<LabeledSet> {
    MultiIndex::indices_up_to(cap)
        .iter()
        .map(standard_object)
        .collect()
}

/// Generating morphisms out of `omega`: every sort-wise adjacent
/// transposition, plus `samples` seeded bijections onto a shifted copy of
/// the label set.
pub fn morphism_samples(omega: &LabeledSet, seed: u64, samples: usize) -> Vec<SortedBijection> {
    let mut out = Vec::new();
    for j in 0..omega.arity() {
        let labels: Vec<u32> = omega.sort(j).iter().copied().collect();
        for w in labels.windows(2) {
            out.push(SortedBijection::transposition(omega, j, w[0], w[1]));
        }
    }
    let mut hasher = DefaultHasher::new();
    omega.hash(&mut hasher);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hasher.finish());
    let delta = omega
        .points()
        .iter()
        .map(|p| p.label)
        .max()
        .unwrap_or(0)
        + 1;
    for _ in 0..samples {
        let maps = (0..omega.arity())
            .map(|j| {
                let sources: Vec<u32> = omega.sort(j).iter().copied().collect();
                let mut targets: Vec<u32> = sources.iter().map(|l| l + delta).collect();
                targets.shuffle(&mut rng);
                sources.into_iter().zip(targets).collect()
            })
            .collect();
        out.push(SortedBijection::new(maps));
    }
    out
}

fn eta_image(
    species: &SpeciesBundle,
    bip: &OrderedBipartition,
    xs1: &[Structure],
    xs2: &[Structure],
) -> BTreeSet<Structure> {
    let eta = species.eta_fn().expect("operator required").clone();
    let mut out = BTreeSet::new();
    for x1 in xs1 {
        for x2 in xs2 {
            out.insert(eta(bip, x1, x2));
        }
    }
    out
}

/// Injectivity of every eta map, and containment of its image in `F` of the
/// union.
pub fn check_injectivity(
    species: &SpeciesBundle,
    cap: &MultiIndex,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let mut run = Runner::new("inject");
    for omega in standard_objects_up_to(cap) {
        let ambient: BTreeSet<Structure> = species.enumerate(&omega).into_iter().collect();
        for bip in bipartitions(&omega, false) {
            let xs1 = species.enumerate(&bip.first);
            let xs2 = species.enumerate(&bip.second);
            let mut seen: BTreeMap<Structure, (Structure, Structure)> = BTreeMap::new();
            for x1 in &xs1 {
                for x2 in &xs2 {
                    run.case();
                    let image = eta(&bip, x1, x2);
                    if !ambient.contains(&image) {
                        return Ok(run.fail(
                            Witness::new("image-not-in-species", &omega)
                                .item("bipartition", &bip)
                                .item("x1", x1.encode(&bip.first))
                                .item("x2", x2.encode(&bip.second))
                                .item("image", image.encode(&omega)),
                        ));
                    }
                    if let Some((y1, y2)) = seen.insert(image.clone(), (x1.clone(), x2.clone())) {
                        return Ok(run.fail(
                            Witness::new("injectivity", &omega)
                                .item("bipartition", &bip)
                                .item("pair1", format!(
                                    "({}, {})",
                                    y1.encode(&bip.first),
                                    y2.encode(&bip.second)
                                ))
                                .item("pair2", format!(
                                    "({}, {})",
                                    x1.encode(&bip.first),
                                    x2.encode(&bip.second)
                                ))
                                .item("image", image.encode(&omega)),
                        ));
                    }
                }
            }
        }
    }
    Ok(run.pass())
}

/// Commutation of the naturality square for generating morphisms.
pub fn check_naturality(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let mut run = Runner::new("natural");
    for omega in standard_objects_up_to(cap) {
        for f in morphism_samples(&omega, seed, 2) {
            for bip in bipartitions(&omega, false) {
                let f1 = f.restrict(&bip.first);
                let f2 = f.restrict(&bip.second);
                let target_bip =
                    OrderedBipartition::new(f.image_of(&bip.first), f.image_of(&bip.second));
                for x1 in species.enumerate(&bip.first) {
                    for x2 in species.enumerate(&bip.second) {
                        run.case();
                        let lhs = species.transport(&f, &eta(&bip, &x1, &x2));
                        let rhs = eta(
                            &target_bip,
                            &species.transport(&f1, &x1),
                            &species.transport(&f2, &x2),
                        );
                        if lhs != rhs {
                            let target = f.target();
                            return Ok(run.fail(
                                Witness::new("naturality", &omega)
                                    .item("morphism", &f)
                                    .item("bipartition", &bip)
                                    .item("x1", x1.encode(&bip.first))
                                    .item("x2", x2.encode(&bip.second))
                                    .item("transport-of-image", lhs.encode(&target))
                                    .item("image-of-transports", rhs.encode(&target)),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(run.pass())
}

/// The decomposition axiom: for any two ordered partitions of the same
/// object, the intersection of the eta images equals the eta image of the
/// fourfold refinement.
pub fn check_d1(species: &SpeciesBundle, cap: &MultiIndex) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let mut run = Runner::new("d1");
    for omega in standard_objects_up_to(cap) {
        let parts = bipartitions(&omega, false);
        let enums: Vec<(Vec<Structure>, Vec<Structure>)> = parts
            .iter()
            .map(|b| (species.enumerate(&b.first), species.enumerate(&b.second)))
            .collect();
        let images: Vec<BTreeSet<Structure>> = parts
            .iter()
            .zip(&enums)
            .map(|(b, (xs1, xs2))| eta_image(species, b, xs1, xs2))
            .collect();
        for (i, p) in parts.iter().enumerate() {
            for (j, q) in parts.iter().enumerate() {
                run.case();
                let lhs: BTreeSet<Structure> =
                    images[i].intersection(&images[j]).cloned().collect();

                // fourfold refinement: omega_ab = p_a with q_b
                let o11 = intersect(&p.first, &q.first);
                let o12 = intersect(&p.first, &q.second);
                let o21 = intersect(&p.second, &q.first);
                let o22 = intersect(&p.second, &q.second);
                let inner1 = eta_image(
                    species,
                    &OrderedBipartition::new(o11.clone(), o12.clone()),
                    &species.enumerate(&o11),
                    &species.enumerate(&o12),
                );
                let inner2 = eta_image(
                    species,
                    &OrderedBipartition::new(o21.clone(), o22.clone()),
                    &species.enumerate(&o21),
                    &species.enumerate(&o22),
                );
                let outer = OrderedBipartition::new(p.first.clone(), p.second.clone());
                let mut rhs = BTreeSet::new();
                for a in &inner1 {
                    for b in &inner2 {
                        rhs.insert(eta(&outer, a, b));
                    }
                }

                if lhs != rhs {
                    let offending = lhs
                        .symmetric_difference(&rhs)
                        .next()
                        .expect("sets differ")
                        .clone();
                    return Ok(run.fail(
                        Witness::new("d1", &omega)
                            .item("partition1", p)
                            .item("partition2", q)
                            .item("intersection-size", lhs.len())
                            .item("refinement-size", rhs.len())
                            .item("differing-structure", offending.encode(&omega)),
                    ));
                }
            }
        }
    }
    Ok(run.pass())
}

fn intersect(a: &LabeledSet, b: &LabeledSet) -> LabeledSet {
    a.minus(&a.minus(b))
}

/// Full operator validation: unique empty structure, injectivity,
/// naturality, and the decomposition axiom.
pub fn check_composition_operator(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    species.eta_fn()?;

    let mut empty_run = Runner::new("empty-object");
    empty_run.case();
    let empty = LabeledSet::empty(species.arity());
    let on_empty = species.enumerate(&empty);
    let empty_report = if on_empty.len() == 1 {
        empty_run.pass()
    } else {
        empty_run.fail(
            Witness::new("empty-object-cardinality", &empty)
                .item("size", on_empty.len()),
        )
    };

    let parts = vec![
        empty_report,
        check_injectivity(species, cap)?,
        check_naturality(species, cap, seed)?,
        check_d1(species, cap)?,
    ];
    Ok(CheckReport::combine("composition-operator", parts))
}

/// Cover, pairwise disjointness, `F_eta^(1) = F_eta`, and the vanishing
/// boundary of the filtration.
pub fn check_partition_properties(
    species: &SpeciesBundle,
    cap: &MultiIndex,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let dec = Decomposer::direct(species)?;
    let mut run = Runner::new("partition");
    for omega in standard_objects_up_to(cap) {
        let all: BTreeSet<Structure> = species.enumerate(&omega).into_iter().collect();
        let norm = omega.norm();
        let mut level_of: BTreeMap<Structure, usize> = BTreeMap::new();
        let mut total = 0usize;
        for k in 0..=norm {
            let level = dec.filtration(&omega, k);
            total += level.len();
            for x in level.iter() {
                run.case();
                if let Some(&other) = level_of.get(x) {
                    return Ok(run.fail(
                        Witness::new("filtration-disjointness", &omega)
                            .item("structure", x.encode(&omega))
                            .item("level1", other)
                            .item("level2", k),
                    ));
                }
                level_of.insert(x.clone(), k);
                if !all.contains(x) {
                    return Ok(run.fail(
                        Witness::new("filtration-outside-species", &omega)
                            .item("structure", x.encode(&omega))
                            .item("level", k),
                    ));
                }
            }
        }
        run.case();
        if total != all.len() {
            let missing = all
                .iter()
                .find(|x| !level_of.contains_key(*x))
                .map(|x| x.encode(&omega))
                .unwrap_or_else(|| "(none)".into());
            return Ok(run.fail(
                Witness::new("filtration-cover", &omega)
                    .item("covered", total)
                    .item("species-size", all.len())
                    .item("uncovered-structure", missing),
            ));
        }

        run.case();
        let level_one = dec.filtration(&omega, 1);
        let indec = dec.indecomposables(&omega);
        if *level_one != *indec {
            return Ok(run.fail(
                Witness::new("level-one-vs-indecomposables", &omega)
                    .item("level-one-size", level_one.len())
                    .item("indecomposable-size", indec.len()),
            ));
        }

        run.case();
        let beyond = dec.filtration(&omega, norm + 1);
        if !beyond.is_empty() {
            return Ok(run.fail(
                Witness::new("filtration-boundary", &omega)
                    .item("level", norm + 1)
                    .item("size", beyond.len()),
            ));
        }
    }
    Ok(run.pass())
}

/// Binary bracketing shapes with leaves numbered left to right.
#[derive(Clone, Debug)]
enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

fn tree_shapes(m: usize, offset: usize) -> Vec<Tree> {
    if m == 1 {
        return vec![Tree::Leaf(offset)];
    }
    let mut out = Vec::new();
    for k in 1..m {
        for left in tree_shapes(k, offset) {
            for right in tree_shapes(m - k, offset + k) {
                out.push(Tree::Node(Box::new(left.clone()), Box::new(right)));
            }
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in permutations(m - 1) {
        for pos in 0..=smaller.len() {
            let mut next = smaller.clone();
            next.insert(pos, m - 1);
            out.push(next);
        }
    }
    out
}

fn eval_bracketing(
    species: &SpeciesBundle,
    tree: &Tree,
    perm: &[usize],
    parts: &[LabeledSet],
    sets: &[Vec<Structure>],
) -> (LabeledSet, BTreeSet<Structure>) {
    match tree {
        Tree::Leaf(slot) => {
            let i = perm[*slot];
            (parts[i].clone(), sets[i].iter().cloned().collect())
        }
        Tree::Node(l, r) => {
            let (lo, ls) = eval_bracketing(species, l, perm, parts, sets);
            let (ro, rs) = eval_bracketing(species, r, perm, parts, sets);
            let bip = OrderedBipartition::new(lo, ro);
            let eta = species.eta_fn().expect("operator required").clone();
            let mut out = BTreeSet::new();
            for a in &ls {
                for b in &rs {
                    out.insert(eta(&bip, a, b));
                }
            }
            (bip.whole(), out)
        }
    }
}

fn describe_bracketing(tree: &Tree, perm: &[usize], family: &str) -> String {
    match tree {
        Tree::Leaf(slot) => format!("{}[P{}]", family, perm[*slot] + 1),
        Tree::Node(l, r) => format!(
            "eta({} x {})",
            describe_bracketing(l, perm, family),
            describe_bracketing(r, perm, family)
        ),
    }
}

/// All eta-bracketings of the `F`-sets and of the `F_eta`-sets over every
/// set partition into at most `max_m` parts agree, and the closed-form
/// intersection identities for three and four parts hold.
pub fn check_permutability(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    max_m: usize,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let dec = Decomposer::direct(species)?;
    let mut run = Runner::new("permute");
    for omega in standard_objects_up_to(cap) {
        if omega.is_empty() {
            continue;
        }
        for m in 2..=max_m.min(omega.norm()) {
            let shapes = tree_shapes(m, 0);
            let perms = permutations(m);
            for parts in set_partitions(&omega, m) {
                let f_sets: Vec<Vec<Structure>> =
                    parts.iter().map(|p| species.enumerate(p)).collect();
                let feta_sets: Vec<Vec<Structure>> = parts
                    .iter()
                    .map(|p| dec.indecomposables(p).iter().cloned().collect())
                    .collect();
                for (family, sets) in [("F", &f_sets), ("F_eta", &feta_sets)] {
                    let mut reference: Option<(String, BTreeSet<Structure>)> = None;
                    for shape in &shapes {
                        for perm in &perms {
                            run.case();
                            let (_, value) =
                                eval_bracketing(species, shape, perm, &parts, sets);
                            let desc = describe_bracketing(shape, perm, family);
                            match &reference {
                                None => reference = Some((desc, value)),
                                Some((ref_desc, ref_value)) => {
                                    if value != *ref_value {
                                        return Ok(run.fail(
                                            Witness::new("permutability", &omega)
                                                .item("bracketing1", ref_desc)
                                                .item("size1", ref_value.len())
                                                .item("bracketing2", desc)
                                                .item("size2", value.len()),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                    if family == "F" {
                        let reference = reference.expect("at least one bracketing").1;
                        if let Some(witness) =
                            closed_form_intersections(species, &omega, &parts, &reference, m)
                        {
                            return Ok(run.fail(witness));
                        }
                        run.case();
                    }
                }
            }
        }
    }
    Ok(run.pass())
}

/// The three-part and four-part intersection identities: every bracketing
/// equals the intersection of all two-block eta images.
fn closed_form_intersections(
    species: &SpeciesBundle,
    omega: &LabeledSet,
    parts: &[LabeledSet],
    reference: &BTreeSet<Structure>,
    m: usize,
) -> Option<Witness> {
    if m != 3 && m != 4 {
        return None;
    }
    let mut intersection: Option<BTreeSet<Structure>> = None;
    // every split of the parts into two nonempty groups
    for mask in 1..(1u32 << m) - 1 {
        let mut left = LabeledSet::empty(omega.arity());
        let mut right = LabeledSet::empty(omega.arity());
        for (i, part) in parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left = left.union(part);
            } else {
                right = right.union(part);
            }
        }
        let bip = OrderedBipartition::new(left.clone(), right.clone());
        let image = eta_image(
            species,
            &bip,
            &species.enumerate(&left),
            &species.enumerate(&right),
        );
        intersection = Some(match intersection {
            None => image,
            Some(acc) => acc.intersection(&image).cloned().collect(),
        });
    }
    let intersection = intersection.expect("m >= 2");
    if intersection != *reference {
        return Some(
            Witness::new("pairwise-intersection-identity", omega)
                .item("parts", m)
                .item("intersection-size", intersection.len())
                .item("bracketing-size", reference.len()),
        );
    }
    None
}

/// Base-point decompositions of `F` and of every filtration level: for each
/// base point the eta images over base-point-bearing sub-objects partition
/// the target set.
pub fn check_base_point(
    species: &SpeciesBundle,
    cap: &MultiIndex,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let dec = Decomposer::direct(species)?;
    let mut run = Runner::new("basepoint");
    for omega in standard_objects_up_to(cap) {
        if omega.is_empty() {
            continue;
        }
        let all: BTreeSet<Structure> = species.enumerate(&omega).into_iter().collect();
        for bp in omega.points() {
            let admissible: Vec<LabeledSet> = sub_objects(&omega)
                .into_iter()
                .filter(|part| part.contains(&bp))
                .collect();

            let mut seen: BTreeSet<Structure> = BTreeSet::new();
            let mut pair_count = 0usize;
            for part in &admissible {
                let firsts = dec.indecomposables(part);
                let rest = omega.minus(part);
                let seconds = species.enumerate(&rest);
                pair_count += firsts.len() * seconds.len();
                let bip = OrderedBipartition::new(part.clone(), rest.clone());
                for x1 in firsts.iter() {
                    for x2 in &seconds {
                        run.case();
                        let image = eta(&bip, x1, x2);
                        if !seen.insert(image.clone()) {
                            return Ok(run.fail(
                                Witness::new("base-point-disjointness", &omega)
                                    .item("base-point", bp)
                                    .item("part", part)
                                    .item("structure", image.encode(&omega)),
                            ));
                        }
                    }
                }
            }
            run.case();
            if seen != all || pair_count != all.len() {
                return Ok(run.fail(
                    Witness::new("base-point-cover", &omega)
                        .item("base-point", bp)
                        .item("union-size", seen.len())
                        .item("pair-count", pair_count)
                        .item("species-size", all.len()),
                ));
            }

            for k in 1..=omega.norm() {
                let target = dec.filtration(&omega, k);
                let mut seen_k: BTreeSet<Structure> = BTreeSet::new();
                for part in &admissible {
                    let firsts = dec.indecomposables(part);
                    let rest = omega.minus(part);
                    let seconds = dec.filtration(&rest, k - 1);
                    let bip = OrderedBipartition::new(part.clone(), rest.clone());
                    for x1 in firsts.iter() {
                        for x2 in seconds.iter() {
                            run.case();
                            let image = eta(&bip, x1, x2);
                            if !seen_k.insert(image.clone()) {
                                return Ok(run.fail(
                                    Witness::new("filtration-base-point-disjointness", &omega)
                                        .item("base-point", bp)
                                        .item("level", k)
                                        .item("structure", image.encode(&omega)),
                                ));
                            }
                        }
                    }
                }
                run.case();
                if seen_k != *target {
                    return Ok(run.fail(
                        Witness::new("filtration-base-point-cover", &omega)
                            .item("base-point", bp)
                            .item("level", k)
                            .item("union-size", seen_k.len())
                            .item("level-size", target.len()),
                    ));
                }
            }
        }
    }
    Ok(run.pass())
}

/// Transport along sampled morphisms maps indecomposables onto
/// indecomposables and each filtration level onto the corresponding level.
pub fn check_functoriality(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let dec = Decomposer::direct(species)?;
    let mut run = Runner::new("functorial");
    for omega in standard_objects_up_to(cap) {
        for f in morphism_samples(&omega, seed, 2) {
            let target = f.target();
            run.case();
            let moved: BTreeSet<Structure> = dec
                .indecomposables(&omega)
                .iter()
                .map(|x| species.transport(&f, x))
                .collect();
            let expected = dec.indecomposables(&target);
            if moved != *expected {
                let stray = moved
                    .symmetric_difference(&expected)
                    .next()
                    .expect("sets differ")
                    .clone();
                return Ok(run.fail(
                    Witness::new("indecomposable-functoriality", &omega)
                        .item("morphism", &f)
                        .item("stray-structure", stray.encode(&target)),
                ));
            }
            for k in 0..=omega.norm() {
                run.case();
                let moved_k: BTreeSet<Structure> = dec
                    .filtration(&omega, k)
                    .iter()
                    .map(|x| species.transport(&f, x))
                    .collect();
                let expected_k = dec.filtration(&target, k);
                if moved_k != *expected_k {
                    let stray = moved_k
                        .symmetric_difference(&expected_k)
                        .next()
                        .expect("sets differ")
                        .clone();
                    return Ok(run.fail(
                        Witness::new("filtration-functoriality", &omega)
                            .item("morphism", &f)
                            .item("level", k)
                            .item("stray-structure", stray.encode(&target)),
                    ));
                }
            }
        }
    }
    Ok(run.pass())
}

/// The weight axioms: the empty structure has weight one, weights are
/// transport-invariant, and eta is weight-multiplicative on pairs whose
/// first factor is indecomposable.
pub fn check_weight(
    species: &SpeciesBundle,
    cap: &MultiIndex,
    seed: u64,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let dec = Decomposer::direct(species)?;
    let mut run = Runner::new("weights");

    let empty = LabeledSet::empty(species.arity());
    for x in species.enumerate(&empty) {
        run.case();
        let w = species.weight(&empty, &x);
        if !w.is_one() {
            return Ok(run.fail(
                Witness::new("weight-of-empty", &empty)
                    .item("structure", x.encode(&empty))
                    .item("weight", w),
            ));
        }
    }

    for omega in standard_objects_up_to(cap) {
        for f in morphism_samples(&omega, seed, 2) {
            let target = f.target();
            for x in species.enumerate(&omega) {
                run.case();
                let before = species.weight(&omega, &x);
                let after = species.weight(&target, &species.transport(&f, &x));
                if before != after {
                    return Ok(run.fail(
                        Witness::new("weight-transport", &omega)
                            .item("morphism", &f)
                            .item("structure", x.encode(&omega))
                            .item("weight-before", before)
                            .item("weight-after", after),
                    ));
                }
            }
        }

        for bip in bipartitions(&omega, false) {
            let firsts = dec.indecomposables(&bip.first);
            let seconds = species.enumerate(&bip.second);
            for x1 in firsts.iter() {
                for x2 in &seconds {
                    run.case();
                    let image = eta(&bip, x1, x2);
                    let lhs = species.weight(&omega, &image);
                    let rhs = &species.weight(&bip.first, x1) * &species.weight(&bip.second, x2);
                    if lhs != rhs {
                        return Ok(run.fail(
                            Witness::new("weight-multiplicativity", &omega)
                                .item("bipartition", &bip)
                                .item("x1", x1.encode(&bip.first))
                                .item("x2", x2.encode(&bip.second))
                                .item("weight-of-image", lhs)
                                .item("product-of-weights", rhs),
                        ));
                    }
                }
            }
        }
    }
    Ok(run.pass())
}

/// Element-level associativity and commutativity of eta. Failure is a
/// legitimate verdict here, not an error: several valid operators are
/// pointwise non-commutative.
pub fn check_pointwise(
    species: &SpeciesBundle,
    cap: &MultiIndex,
) -> Result<CheckReport, SpeciesError> {
    check_arity(species, cap)?;
    let eta = species.eta_fn()?.clone();
    let mut run = Runner::new("pointwise");
    for omega in standard_objects_up_to(cap) {
        for bip in bipartitions(&omega, false) {
            let swapped = bip.swapped();
            for x1 in species.enumerate(&bip.first) {
                for x2 in species.enumerate(&bip.second) {
                    run.case();
                    let ab = eta(&bip, &x1, &x2);
                    let ba = eta(&swapped, &x2, &x1);
                    if ab != ba {
                        return Ok(run.fail(
                            Witness::new("pointwise-commutativity", &omega)
                                .item("bipartition", &bip)
                                .item("x1", x1.encode(&bip.first))
                                .item("x2", x2.encode(&bip.second))
                                .item("eta(x1,x2)", ab.encode(&omega))
                                .item("eta(x2,x1)", ba.encode(&omega)),
                        ));
                    }
                }
            }
        }

        // ordered tripartitions: each point goes to one of three parts
        let points = omega.points();
        let n = points.len();
        let mut assignment = vec![0u8; n];
        loop {
            let mut parts = vec![LabeledSet::empty(omega.arity()); 3];
            for (i, p) in points.iter().enumerate() {
                parts[assignment[i] as usize] = parts[assignment[i] as usize].with_point(p);
            }
            let (p1, p2, p3) = (&parts[0], &parts[1], &parts[2]);
            let bip12 = OrderedBipartition::new(p1.clone(), p2.clone());
            let bip12_3 = OrderedBipartition::new(p1.union(p2), p3.clone());
            let bip23 = OrderedBipartition::new(p2.clone(), p3.clone());
            let bip1_23 = OrderedBipartition::new(p1.clone(), p2.union(p3));
            for x1 in species.enumerate(p1) {
                for x2 in species.enumerate(p2) {
                    let left_inner = eta(&bip12, &x1, &x2);
                    for x3 in species.enumerate(p3) {
                        run.case();
                        let lhs = eta(&bip12_3, &left_inner, &x3);
                        let rhs = eta(&bip1_23, &x1, &eta(&bip23, &x2, &x3));
                        if lhs != rhs {
                            return Ok(run.fail(
                                Witness::new("pointwise-associativity", &omega)
                                    .item("parts", format!("{p1} | {p2} | {p3}"))
                                    .item("x1", x1.encode(p1))
                                    .item("x2", x2.encode(p2))
                                    .item("x3", x3.encode(p3))
                                    .item("left-associated", lhs.encode(&omega))
                                    .item("right-associated", rhs.encode(&omega)),
                            ));
                        }
                    }
                }
            }
            // next ternary assignment
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                assignment[i] += 1;
                if assignment[i] < 3 {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(run.pass())
}
