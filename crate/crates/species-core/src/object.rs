//! Ground objects of the framework: tuples of finite label sets, their
//! bipartitions and sub-objects, sort-wise bijections, and base points.
//!
//! All set operations are componentwise. Labels are plain integers; the
//! standard object of size `(n_1,...,n_r)` carries labels `1..n_j` in
//! sort `j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use egf_engine::MultiIndex;
use serde::Serialize;

pub type Label = u32;

/// An r-tuple of finite label sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LabeledSet {
    sorts: Vec<BTreeSet<Label>>,
}

impl LabeledSet {
    pub fn new(sorts: Vec<BTreeSet<Label>>) -> Self {
        LabeledSet { sorts }
    }

    pub fn empty(arity: usize) -> Self {
        LabeledSet {
            sorts: vec![BTreeSet::new(); arity],
        }
    }

    /// Convenience constructor from slices of labels.
    pub fn from_slices(sorts: &[&[Label]]) -> Self {
        LabeledSet {
            sorts: sorts
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.sorts.len()
    }

    pub fn sort(&self, j: usize) -> &BTreeSet<Label> {
        &self.sorts[j]
    }

    /// Total number of labels over all sorts.
    pub fn norm(&self) -> usize {
        self.sorts.iter().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.iter().all(|s| s.is_empty())
    }

    pub fn sizes(&self) -> MultiIndex {
        MultiIndex(self.sorts.iter().map(|s| s.len()).collect())
    }

    pub fn contains(&self, p: &BasePoint) -> bool {
        p.sort < self.arity() && self.sorts[p.sort].contains(&p.label)
    }

    /// All `(label, sort)` points, ordered by sort then label.
    pub fn points(&self) -> Vec<BasePoint> {
        let mut out = Vec::with_capacity(self.norm());
        for (sort, labels) in self.sorts.iter().enumerate() {
            for &label in labels {
                out.push(BasePoint { label, sort });
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &LabeledSet) -> bool {
        self.arity() == other.arity()
            && self
                .sorts
                .iter()
                .zip(&other.sorts)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn is_disjoint_from(&self, other: &LabeledSet) -> bool {
        self.sorts
            .iter()
            .zip(&other.sorts)
            .all(|(a, b)| a.is_disjoint(b))
    }

    /// Componentwise disjoint union. Panics when the operands overlap.
    pub fn union(&self, other: &LabeledSet) -> LabeledSet {
        assert!(self.is_disjoint_from(other), "union of overlapping objects");
        LabeledSet {
            sorts: self
                .sorts
                .iter()
                .zip(&other.sorts)
                .map(|(a, b)| a.union(b).copied().collect())
                .collect(),
        }
    }

    /// Componentwise set difference.
    pub fn minus(&self, other: &LabeledSet) -> LabeledSet {
        LabeledSet {
            sorts: self
                .sorts
                .iter()
                .zip(&other.sorts)
                .map(|(a, b)| a.difference(b).copied().collect())
                .collect(),
        }
    }

    /// Insert a single point, returning the enlarged object.
    pub fn with_point(&self, p: &BasePoint) -> LabeledSet {
        let mut sorts = self.sorts.clone();
        sorts[p.sort].insert(p.label);
        LabeledSet { sorts }
    }
}

impl fmt::Display for LabeledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sorts
            .iter()
            .map(|s| {
                let labels: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A distinguished label in one sort of an ambient object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasePoint {
    pub label: Label,
    pub sort: usize,
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.label, self.sort + 1)
    }
}

/// An ordered pair of componentwise-disjoint objects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedBipartition {
    pub first: LabeledSet,
    pub second: LabeledSet,
}

impl OrderedBipartition {
    pub fn new(first: LabeledSet, second: LabeledSet) -> Self {
        assert!(
            first.is_disjoint_from(&second),
            "bipartition parts must be disjoint"
        );
        OrderedBipartition { first, second }
    }

    pub fn whole(&self) -> LabeledSet {
        self.first.union(&self.second)
    }

    pub fn swapped(&self) -> OrderedBipartition {
        OrderedBipartition {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }
}

impl fmt::Display for OrderedBipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.first, self.second)
    }
}

/// The standard object `([n_1],...,[n_r])` with labels `1..n_j` per sort.
pub fn standard_object(n: &MultiIndex) -> LabeledSet {
    LabeledSet {
        sorts: n
            .0
            .iter()
            .map(|&nj| (1..=nj as Label).collect())
            .collect(),
    }
}

/// All componentwise sub-objects of `omega`, in a fixed deterministic order.
pub fn sub_objects(omega: &LabeledSet) -> Vec<LabeledSet> {
    let points = omega.points();
    let n = points.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut first = LabeledSet::empty(omega.arity());
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                first.sorts[p.sort].insert(p.label);
            }
        }
        out.push(first);
    }
    out
}

/// All ordered componentwise bipartitions of `omega`. With `proper_only`,
/// both parts must be nonempty as whole tuples. Without it the count is
/// `2^norm`.
pub fn bipartitions(omega: &LabeledSet, proper_only: bool) -> Vec<OrderedBipartition> {
    sub_objects(omega)
        .into_iter()
        .filter_map(|first| {
            let second = omega.minus(&first);
            if proper_only && (first.is_empty() || second.is_empty()) {
                return None;
            }
            Some(OrderedBipartition { first, second })
        })
        .collect()
}

/// All unordered set partitions of the points of `omega` into exactly `m`
/// nonempty parts (each part a sub-object).
pub fn set_partitions(omega: &LabeledSet, m: usize) -> Vec<Vec<LabeledSet>> {
    let points = omega.points();
    if m == 0 {
        return if points.is_empty() {
            vec![vec![]]
        } else {
            vec![]
        };
    }
    if points.len() < m {
        return vec![];
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<BasePoint>> = Vec::new();
    assign(&points, 0, m, &mut blocks, &mut out, omega.arity());
    out
}

fn assign(
    points: &[BasePoint],
    i: usize,
    m: usize,
    blocks: &mut Vec<Vec<BasePoint>>,
    out: &mut Vec<Vec<LabeledSet>>,
    arity: usize,
) {
    if i == points.len() {
        if blocks.len() == m {
            out.push(
                blocks
                    .iter()
                    .map(|b| {
                        let mut set = LabeledSet::empty(arity);
                        for p in b {
                            set.sorts[p.sort].insert(p.label);
                        }
                        set
                    })
                    .collect(),
            );
        }
        return;
    }
    // not enough points left to fill the remaining blocks
    if blocks.len() + (points.len() - i) < m {
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(points[i]);
        assign(points, i + 1, m, blocks, out, arity);
        blocks[b].pop();
    }
    if blocks.len() < m {
        blocks.push(vec![points[i]]);
        assign(points, i + 1, m, blocks, out, arity);
        blocks.pop();
    }
}

/// A tuple of bijections between finite label sets, one per sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedBijection {
    maps: Vec<BTreeMap<Label, Label>>,
}

impl SortedBijection {
    pub fn new(maps: Vec<BTreeMap<Label, Label>>) -> Self {
        for m in &maps {
            let image: BTreeSet<Label> = m.values().copied().collect();
            assert_eq!(image.len(), m.len(), "not injective in some sort");
        }
        SortedBijection { maps }
    }

    pub fn identity(omega: &LabeledSet) -> Self {
        SortedBijection {
            maps: omega
                .sorts
                .iter()
                .map(|s| s.iter().map(|&l| (l, l)).collect())
                .collect(),
        }
    }

    /// Swap two labels inside one sort of `omega`, identity elsewhere.
    pub fn transposition(omega: &LabeledSet, sort: usize, a: Label, b: Label) -> Self {
        let mut f = SortedBijection::identity(omega);
        f.maps[sort].insert(a, b);
        f.maps[sort].insert(b, a);
        f
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    pub fn apply(&self, sort: usize, label: Label) -> Label {
        *self.maps[sort]
            .get(&label)
            .unwrap_or_else(|| panic!("label {label} not in domain of sort {sort}"))
    }

    pub fn source(&self) -> LabeledSet {
        LabeledSet {
            sorts: self.maps.iter().map(|m| m.keys().copied().collect()).collect(),
        }
    }

    pub fn target(&self) -> LabeledSet {
        LabeledSet {
            sorts: self
                .maps
                .iter()
                .map(|m| m.values().copied().collect())
                .collect(),
        }
    }

    /// Image of a sub-object of the domain.
    pub fn image_of(&self, part: &LabeledSet) -> LabeledSet {
        LabeledSet {
            sorts: part
                .sorts
                .iter()
                .enumerate()
                .map(|(j, s)| s.iter().map(|&l| self.apply(j, l)).collect())
                .collect(),
        }
    }

    /// Restriction to a sub-object of the domain.
    pub fn restrict(&self, part: &LabeledSet) -> SortedBijection {
        SortedBijection {
            maps: part
                .sorts
                .iter()
                .enumerate()
                .map(|(j, s)| s.iter().map(|&l| (l, self.apply(j, l))).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> SortedBijection {
        SortedBijection {
            maps: self
                .maps
                .iter()
                .map(|m| m.iter().map(|(&k, &v)| (v, k)).collect())
                .collect(),
        }
    }

    /// `other` after `self` (apply `self` first).
    pub fn then(&self, other: &SortedBijection) -> SortedBijection {
        SortedBijection {
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(j, m)| m.iter().map(|(&k, &v)| (k, other.apply(j, v))).collect())
                .collect(),
        }
    }
}

impl fmt::Display for SortedBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .maps
            .iter()
            .map(|m| {
                let entries: Vec<String> =
                    m.iter().map(|(k, v)| format!("{k}->{v}")).collect();
                format!("{{{}}}", entries.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}
