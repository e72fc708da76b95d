//! Bipartite graphs on two sorts of vertices, with two composition
//! operators: plain disjoint union, and the "completion" operator that also
//! inserts every edge between the two parts. Under the union operator the
//! indecomposables are the connected graphs; under completion they are the
//! complements of connected graphs.

use std::collections::{BTreeSet, VecDeque};
use std::rc::Rc;

use exact_arith::Poly;
use species_core::{LabeledSet, OrderedBipartition, SortedBijection, SpeciesBundle, Structure};

use crate::iso::SpeciesIso;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BipartiteVariant {
    /// eta is disjoint union; weight marks edges.
    Union,
    /// eta completes the union with all cross edges; weight marks non-edges.
    Completion,
}

/// All cells `white x black` of a two-sort object.
fn cells(omega: &LabeledSet) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for &w in omega.sort(0) {
        for &b in omega.sort(1) {
            out.push((w, b));
        }
    }
    out
}

fn cross_edges(bip: &OrderedBipartition) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for &w in bip.first.sort(0) {
        for &b in bip.second.sort(1) {
            out.insert((w, b));
        }
    }
    for &w in bip.second.sort(0) {
        for &b in bip.first.sort(1) {
            out.insert((w, b));
        }
    }
    out
}

pub fn bipartite_species(variant: BipartiteVariant) -> SpeciesBundle {
    let enumerate = Rc::new(|omega: &LabeledSet| {
        let cells = cells(omega);
        let mut out = Vec::with_capacity(1 << cells.len());
        for mask in 0u64..(1 << cells.len()) {
            let edges: BTreeSet<(u32, u32)> = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            out.push(Structure::Edges(edges));
        }
        out
    });
    let transport = Rc::new(|f: &SortedBijection, x: &Structure| {
        Structure::Edges(
            x.as_edges()
                .iter()
                .map(|&(w, b)| (f.apply(0, w), f.apply(1, b)))
                .collect(),
        )
    });
    let (name, eta, weight): (_, species_core::EtaFn, species_core::WeightFn) = match variant {
        BipartiteVariant::Union => (
            "bipartite-union",
            Rc::new(|_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
                Structure::Edges(x1.as_edges().union(x2.as_edges()).copied().collect())
            }),
            // w(b) = t^{|b|}
            Rc::new(|_omega: &LabeledSet, x: &Structure| {
                Poly::t_power(x.as_edges().len() as u32)
            }),
        ),
        BipartiteVariant::Completion => (
            "bipartite-completion",
            Rc::new(|bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
                let mut edges: BTreeSet<(u32, u32)> =
                    x1.as_edges().union(x2.as_edges()).copied().collect();
                edges.extend(cross_edges(bip));
                Structure::Edges(edges)
            }),
            // w'(b) = t^{n1 n2 - |b|}
            Rc::new(|omega: &LabeledSet, x: &Structure| {
                let full = omega.sort(0).len() * omega.sort(1).len();
                Poly::t_power((full - x.as_edges().len()) as u32)
            }),
        ),
    };
    SpeciesBundle::new(name, 2, enumerate, transport)
        .with_eta(eta)
        .with_weight(weight)
}

/// Graph connectivity of a bipartite graph on the vertex set of `omega`.
/// The empty vertex set counts as disconnected; a single vertex is
/// connected; two or more vertices need a spanning path of edges.
pub fn bipartite_connected(omega: &LabeledSet, b: &Structure) -> bool {
    let edges = b.as_edges();
    let whites: Vec<u32> = omega.sort(0).iter().copied().collect();
    let blacks: Vec<u32> = omega.sort(1).iter().copied().collect();
    let total = whites.len() + blacks.len();
    if total == 0 {
        return false;
    }
    let mut visited: BTreeSet<(usize, u32)> = BTreeSet::new();
    let start = if whites.is_empty() {
        (1, blacks[0])
    } else {
        (0, whites[0])
    };
    let mut queue = VecDeque::from([start]);
    visited.insert(start);
    while let Some((sort, label)) = queue.pop_front() {
        for &(w, bl) in edges.iter() {
            let neighbor = if sort == 0 && w == label {
                Some((1, bl))
            } else if sort == 1 && bl == label {
                Some((0, w))
            } else {
                None
            };
            if let Some(n) = neighbor {
                if visited.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    visited.len() == total
}

/// Connected components of a bipartite graph: each component's vertex
/// support together with its edges. Isolated vertices form singleton
/// components.
pub fn connected_components(
    omega: &LabeledSet,
    b: &Structure,
) -> Vec<(LabeledSet, BTreeSet<(u32, u32)>)> {
    let edges = b.as_edges();
    let mut remaining: BTreeSet<(usize, u32)> = omega
        .points()
        .iter()
        .map(|p| (p.sort, p.label))
        .collect();
    let mut out = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut component: BTreeSet<(usize, u32)> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        component.insert(start);
        while let Some((sort, label)) = queue.pop_front() {
            for &(w, bl) in edges.iter() {
                let neighbor = if sort == 0 && w == label {
                    Some((1, bl))
                } else if sort == 1 && bl == label {
                    Some((0, w))
                } else {
                    None
                };
                if let Some(n) = neighbor {
                    if component.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
        }
        for v in &component {
            remaining.remove(v);
        }
        let support = LabeledSet::new(vec![
            component
                .iter()
                .filter(|(s, _)| *s == 0)
                .map(|&(_, l)| l)
                .collect(),
            component
                .iter()
                .filter(|(s, _)| *s == 1)
                .map(|&(_, l)| l)
                .collect(),
        ]);
        let component_edges: BTreeSet<(u32, u32)> = edges
            .iter()
            .filter(|&&(w, _)| support.sort(0).contains(&w))
            .copied()
            .collect();
        out.push((support, component_edges));
    }
    out
}

/// Edge complementation within the full cell grid of the ambient object; a
/// weight-preserving isomorphism from the union-weighted species to the
/// completion-weighted species (and vice versa).
pub fn complement_iso() -> SpeciesIso {
    let complement = Rc::new(|omega: &LabeledSet, x: &Structure| {
        let edges = x.as_edges();
        let all: BTreeSet<(u32, u32)> = cells(omega).into_iter().collect();
        Structure::Edges(all.difference(edges).copied().collect())
    });
    SpeciesIso::new(complement.clone(), complement)
}
