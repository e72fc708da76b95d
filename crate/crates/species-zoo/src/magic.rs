//! Magic matrices: nonnegative integer matrices with all row and column
//! sums equal to `s`, in four variants (all, entry-`s`-free, symmetric,
//! and symmetric entry-`s`-free). The composition operator is the direct
//! sum, which in the sparse cell encoding is a plain map union.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use itertools::Itertools;

use egf_engine::{closed_form, ClosedFormId, Egf, MultiIndex};
use exact_arith::Poly;
use species_core::{
    species_egf, LabeledSet, OrderedBipartition, Runner, SortedBijection, SpeciesBundle,
    SpeciesError, Structure, Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagicVariant {
    /// All s-magic matrices on a two-sort support.
    All,
    /// Those without any entry equal to s.
    Barred,
    /// Symmetric s-magic matrices on a one-sort support.
    Symmetric,
    /// Symmetric without any entry equal to s.
    BarredSymmetric,
}

impl MagicVariant {
    pub fn arity(self) -> usize {
        match self {
            MagicVariant::All | MagicVariant::Barred => 2,
            MagicVariant::Symmetric | MagicVariant::BarredSymmetric => 1,
        }
    }

    fn barred(self) -> bool {
        matches!(self, MagicVariant::Barred | MagicVariant::BarredSymmetric)
    }
}

impl fmt::Display for MagicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MagicVariant::All => "all",
            MagicVariant::Barred => "barred",
            MagicVariant::Symmetric => "symmetric",
            MagicVariant::BarredSymmetric => "barred-symmetric",
        };
        write!(f, "{s}")
    }
}

type Cells = BTreeMap<(u32, u32), u32>;

/// Vectors summing to `total` with `v[i] <= bounds[i]`.
fn distributions(total: u32, bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; bounds.len()];
    fn recurse(
        i: usize,
        remaining: u32,
        bounds: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == bounds.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let tail: u32 = bounds[i + 1..].iter().sum();
        let low = remaining.saturating_sub(tail);
        let high = bounds[i].min(remaining);
        for v in low..=high {
            current[i] = v;
            recurse(i + 1, remaining - v, bounds, current, out);
        }
        if high < low {
            // range was empty; nothing to restore
        }
        current[i] = 0;
    }
    recurse(0, total, bounds, &mut current, &mut out);
    out
}

/// Row-by-row backtracking with column-sum pruning.
fn magic_matrices(rows: &[u32], cols: &[u32], s: u32, barred: bool) -> Vec<Cells> {
    struct Search<'a> {
        rows: &'a [u32],
        cols: &'a [u32],
        s: u32,
        entry_cap: u32,
        out: Vec<Cells>,
    }

    impl Search<'_> {
        fn recurse(&mut self, row_i: usize, col_rem: &mut [u32], cells: &mut Cells) {
            if row_i == self.rows.len() {
                if col_rem.iter().all(|&r| r == 0) {
                    self.out.push(cells.clone());
                }
                return;
            }
            let bounds: Vec<u32> = col_rem.iter().map(|&r| r.min(self.entry_cap)).collect();
            for assignment in distributions(self.s, &bounds) {
                for (j, &v) in assignment.iter().enumerate() {
                    col_rem[j] -= v;
                    if v > 0 {
                        cells.insert((self.rows[row_i], self.cols[j]), v);
                    }
                }
                self.recurse(row_i + 1, col_rem, cells);
                for (j, &v) in assignment.iter().enumerate() {
                    col_rem[j] += v;
                    if v > 0 {
                        cells.remove(&(self.rows[row_i], self.cols[j]));
                    }
                }
            }
        }
    }

    let mut search = Search {
        rows,
        cols,
        s,
        entry_cap: if barred { s - 1 } else { s },
        out: Vec::new(),
    };
    let mut col_rem = vec![s; cols.len()];
    search.recurse(0, &mut col_rem, &mut BTreeMap::new());
    search.out
}

/// Upper-triangle backtracking for symmetric matrices; the mirrored cells
/// are filled in as rows complete, and column sums come for free.
fn symmetric_magic_matrices(labels: &[u32], s: u32, barred: bool) -> Vec<Cells> {
    let entry_cap = if barred { s - 1 } else { s };
    let n = labels.len();
    let mut out = Vec::new();
    let mut rem = vec![s; n];
    let mut cells: Cells = BTreeMap::new();

    fn recurse(
        i: usize,
        labels: &[u32],
        entry_cap: u32,
        rem: &mut Vec<u32>,
        cells: &mut Cells,
        out: &mut Vec<Cells>,
    ) {
        let n = labels.len();
        if i == n {
            out.push(cells.clone());
            return;
        }
        let bounds: Vec<u32> = (i..n)
            .map(|j| {
                if j == i {
                    entry_cap.min(rem[i])
                } else {
                    entry_cap.min(rem[j])
                }
            })
            .collect();
        for assignment in distributions(rem[i], &bounds) {
            let saved_rem_i = rem[i];
            rem[i] = 0;
            for (k, &v) in assignment.iter().enumerate() {
                let j = i + k;
                if j != i {
                    rem[j] -= v;
                }
                if v > 0 {
                    cells.insert((labels[i], labels[j]), v);
                    cells.insert((labels[j], labels[i]), v);
                }
            }
            recurse(i + 1, labels, entry_cap, rem, cells, out);
            for (k, &v) in assignment.iter().enumerate() {
                let j = i + k;
                if j != i {
                    rem[j] += v;
                }
                if v > 0 {
                    cells.remove(&(labels[i], labels[j]));
                    cells.remove(&(labels[j], labels[i]));
                }
            }
            rem[i] = saved_rem_i;
        }
    }
    recurse(0, labels, entry_cap, &mut rem, &mut cells, &mut out);
    out
}

/// Bundle for one magic-matrix variant. The weight is constant 1.
pub fn magic_species(s: u32, variant: MagicVariant) -> SpeciesBundle {
    assert!(s >= 1, "magic sum must be positive");
    let name = format!("magic-{s}-{variant}");
    let barred = variant.barred();
    match variant.arity() {
        2 => {
            let enumerate = Rc::new(move |omega: &LabeledSet| {
                let rows: Vec<u32> = omega.sort(0).iter().copied().collect();
                let cols: Vec<u32> = omega.sort(1).iter().copied().collect();
                magic_matrices(&rows, &cols, s, barred)
                    .into_iter()
                    .map(Structure::Matrix)
                    .collect()
            });
            let transport = Rc::new(|f: &SortedBijection, x: &Structure| {
                Structure::Matrix(
                    x.as_matrix()
                        .iter()
                        .map(|(&(i, j), &v)| ((f.apply(0, i), f.apply(1, j)), v))
                        .collect(),
                )
            });
            SpeciesBundle::new(name, 2, enumerate, transport).with_eta(direct_sum_eta())
        }
        _ => {
            let enumerate = Rc::new(move |omega: &LabeledSet| {
                let labels: Vec<u32> = omega.sort(0).iter().copied().collect();
                symmetric_magic_matrices(&labels, s, barred)
                    .into_iter()
                    .map(Structure::Matrix)
                    .collect()
            });
            let transport = Rc::new(|f: &SortedBijection, x: &Structure| {
                Structure::Matrix(
                    x.as_matrix()
                        .iter()
                        .map(|(&(i, j), &v)| ((f.apply(0, i), f.apply(0, j)), v))
                        .collect(),
                )
            });
            SpeciesBundle::new(name, 1, enumerate, transport).with_eta(direct_sum_eta())
        }
    }
}

/// Direct sum: the off-blocks are zero, so the sparse cell maps just merge.
fn direct_sum_eta() -> species_core::EtaFn {
    Rc::new(
        |_bip: &OrderedBipartition, x1: &Structure, x2: &Structure| {
            let mut cells = x1.as_matrix().clone();
            cells.extend(x2.as_matrix().iter().map(|(&k, &v)| (k, v)));
            Structure::Matrix(cells)
        },
    )
}

/// All s-magic matrices on the standard `n x n` support, by backtracking.
pub fn enumerate_magic(s: u32, n: usize, budget: u64) -> Result<BTreeSet<Structure>, SpeciesError> {
    let labels: Vec<u32> = (1..=n as u32).collect();
    let matrices = magic_matrices(&labels, &labels, s, false);
    if matrices.len() as u64 > budget {
        return Err(SpeciesError::BudgetExceeded {
            omega: format!("([{n}],[{n}])"),
            seen: matrices.len() as u64,
            budget,
        });
    }
    Ok(matrices.into_iter().map(Structure::Matrix).collect())
}

/// All 2-magic matrices on `n x n`, generated as sums of two permutation
/// matrices and deduplicated.
pub fn enumerate_2magic_birkhoff(n: usize) -> BTreeSet<Structure> {
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut out = BTreeSet::new();
    for p1 in labels.iter().permutations(n) {
        for p2 in labels.iter().permutations(n) {
            let mut cells: Cells = BTreeMap::new();
            for (i, (&a, &b)) in p1.iter().zip(&p2).enumerate() {
                let row = labels[i];
                *cells.entry((row, *a)).or_insert(0) += 1;
                *cells.entry((row, *b)).or_insert(0) += 1;
            }
            out.insert(Structure::Matrix(cells));
        }
    }
    out
}

fn fact(n: u32) -> u128 {
    (2..=n as u128).product::<u128>().max(1)
}

/// Closed-form count of indecomposable 2-magic matrices on `n x n`
/// (symmetric or not). The small cases are exceptional; from `n = 2`
/// (non-symmetric) resp. `n = 3` (symmetric) on the factorial formulas
/// apply.
pub fn indecomposable_2magic_count(n: u32, symmetric: bool) -> u128 {
    assert!(n >= 1);
    if symmetric {
        match n {
            1 => 1,
            2 => 2,
            _ => (fact(n) + fact(n - 1)) / 2,
        }
    } else {
        match n {
            1 => 1,
            _ => fact(n) * fact(n - 1) / 2,
        }
    }
}

fn first_difference(a: &Egf, b: &Egf) -> Option<(MultiIndex, Poly, Poly)> {
    for idx in MultiIndex::indices_up_to(a.cap()) {
        let ca = a.coeff(&idx);
        let cb = b.coeff(&idx);
        if ca != cb {
            return Some((idx, ca, cb));
        }
    }
    None
}

/// Compare the enumerated refined series of the four variants against the
/// closed forms (s = 2) and verify the entry-exclusion relations between
/// the variants (s = 1 and 2). Everything is exact equality of truncated
/// series: `cap_pair` bounds both sorts of the two-sort variants,
/// `cap_sym` the symmetric ones.
pub fn verify_magic_relations(
    cap_pair: usize,
    cap_sym: usize,
    budget: u64,
) -> Result<species_core::CheckReport, SpeciesError> {
    let mut run = Runner::new("closed-forms");
    let pair_cap = MultiIndex(vec![cap_pair, cap_pair]);
    let sym_cap = MultiIndex(vec![cap_sym]);

    let refined = |s: u32, variant: MagicVariant| -> Result<Egf, SpeciesError> {
        let cap = if variant.arity() == 2 {
            pair_cap.clone()
        } else {
            sym_cap.clone()
        };
        species_egf(&magic_species(s, variant), &cap, true, budget)
    };

    let closed_checks: [(ClosedFormId, MagicVariant, &MultiIndex); 4] = [
        (ClosedFormId::TwoMagic, MagicVariant::All, &pair_cap),
        (ClosedFormId::TwoMagicBarred, MagicVariant::Barred, &pair_cap),
        (
            ClosedFormId::TwoMagicSymmetric,
            MagicVariant::Symmetric,
            &sym_cap,
        ),
        (
            ClosedFormId::TwoMagicBarredSymmetric,
            MagicVariant::BarredSymmetric,
            &sym_cap,
        ),
    ];
    for (id, variant, cap) in closed_checks {
        run.case();
        let enumerated = refined(2, variant)?;
        let expected = closed_form(id, cap)?;
        if let Some((idx, ca, cb)) = first_difference(&enumerated, &expected) {
            let omega = species_core::standard_object(&idx);
            return Ok(run.fail(
                Witness::new(format!("closed-form-{id}"), &omega)
                    .item("index", idx)
                    .item("enumerated", ca)
                    .item("closed-form", cb),
            ));
        }
    }

    for s in [1u32, 2] {
        run.case();
        let all = refined(s, MagicVariant::All)?;
        let barred = refined(s, MagicVariant::Barred)?;
        let factor = closed_form(ClosedFormId::BarredFactor, &pair_cap)?;
        if let Some((idx, ca, cb)) = first_difference(&barred, &factor.mul(&all)?) {
            let omega = species_core::standard_object(&idx);
            return Ok(run.fail(
                Witness::new(format!("entry-exclusion-relation-s{s}"), &omega)
                    .item("index", idx)
                    .item("barred-series", ca)
                    .item("factor-times-all", cb),
            ));
        }

        run.case();
        let sym = refined(s, MagicVariant::Symmetric)?;
        let barred_sym = refined(s, MagicVariant::BarredSymmetric)?;
        let factor_sym = closed_form(ClosedFormId::BarredSymmetricFactor, &sym_cap)?;
        if let Some((idx, ca, cb)) = first_difference(&barred_sym, &factor_sym.mul(&sym)?) {
            let omega = species_core::standard_object(&idx);
            return Ok(run.fail(
                Witness::new(format!("symmetric-entry-exclusion-relation-s{s}"), &omega)
                    .item("index", idx)
                    .item("barred-symmetric-series", ca)
                    .item("factor-times-symmetric", cb),
            ));
        }
    }

    Ok(run.pass())
}
