//! Canonically-encoded labelled structures.
//!
//! Every species stores its objects in one of four payload shapes. Each is
//! totally ordered and hashable, and two structures are equal exactly when
//! their canonical text encodings (relative to the same ambient object)
//! coincide.

use std::collections::{BTreeMap, BTreeSet};

use crate::object::{Label, LabeledSet};

/// A labelled object of some species.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    /// Bipartite graph: edge set inside `sort1 x sort2` of the ambient object.
    Edges(BTreeSet<(Label, Label)>),
    /// Binary function: total map from ambient labels to {0,1}.
    Table(BTreeMap<Label, u8>),
    /// Combinatorial matrix: sparse nonzero cells over `sort1 x sort2`
    /// (for one-sort symmetric species, over `omega x omega`).
    Matrix(BTreeMap<(Label, Label), u32>),
    /// Set of tagged components: structures paired with their disjoint
    /// nonempty supports.
    Components(BTreeSet<(Structure, LabeledSet)>),
}

impl Structure {
    pub fn empty_edges() -> Self {
        Structure::Edges(BTreeSet::new())
    }

    pub fn empty_components() -> Self {
        Structure::Components(BTreeSet::new())
    }

    pub fn as_edges(&self) -> &BTreeSet<(Label, Label)> {
        match self {
            Structure::Edges(e) => e,
            _ => panic!("expected an edge-set structure"),
        }
    }

    pub fn as_table(&self) -> &BTreeMap<Label, u8> {
        match self {
            Structure::Table(t) => t,
            _ => panic!("expected a function-table structure"),
        }
    }

    pub fn as_matrix(&self) -> &BTreeMap<(Label, Label), u32> {
        match self {
            Structure::Matrix(m) => m,
            _ => panic!("expected a matrix structure"),
        }
    }

    pub fn as_components(&self) -> &BTreeSet<(Structure, LabeledSet)> {
        match self {
            Structure::Components(c) => c,
            _ => panic!("expected a component-set structure"),
        }
    }

    /// Canonical text encoding relative to the ambient object, used in
    /// witnesses and golden files.
    pub fn encode(&self, omega: &LabeledSet) -> String {
        match self {
            Structure::Edges(edges) => {
                let cells: Vec<String> = edges
                    .iter()
                    .map(|(a, b)| format!("({a},{b})"))
                    .collect();
                format!("BG{{{}}}", cells.join(","))
            }
            Structure::Table(table) => {
                let cells: Vec<String> =
                    table.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                format!("BF{{{}}}", cells.join(","))
            }
            Structure::Matrix(cells) => {
                let (rows, cols) = if omega.arity() == 2 {
                    (omega.sort(0).len(), omega.sort(1).len())
                } else {
                    (omega.sort(0).len(), omega.sort(0).len())
                };
                let entries: Vec<String> = cells
                    .iter()
                    .map(|(&(i, j), v)| format!("({i},{j})={v}"))
                    .collect();
                format!("CM{{{rows} x {cols}; {}}}", entries.join(","))
            }
            Structure::Components(parts) => {
                let rendered: Vec<String> = parts
                    .iter()
                    .map(|(x, support)| format!("{}@{}", x.encode(support), support))
                    .collect();
                format!("E{{{}}}", rendered.join(","))
            }
        }
    }
}
