//! Truncated multivariate power series in `z_1..z_r` with polynomial
//! coefficients, plus the handful of closed-form series the identity
//! checkers compare against.
//!
//! Coefficients are stored in *ordinary* form: the entry at index
//! `(n_1,...,n_r)` is the coefficient of `z_1^{n_1}...z_r^{n_r}`, with any
//! EGF normalization `1/(n_1!...n_r!)` already folded in. Multiplication is
//! then a plain truncated convolution.

mod closed_form;
mod series;

pub use closed_form::{closed_form, ClosedFormId};
pub use series::{Egf, EgfError};

/// Exponent vector of `z_1^{n_1} ... z_r^{n_r}`; also used as a per-sort
/// truncation cap.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn zeros(arity: usize) -> Self {
        MultiIndex(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Sum of the component degrees.
    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.arity() == other.arity() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All indices `i` with `0 <= i <= cap` componentwise, in lexicographic
    /// order.
    pub fn indices_up_to(cap: &MultiIndex) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(0)];
        for &bound in &cap.0 {
            let mut next = Vec::with_capacity(out.len() * (bound + 1));
            for prefix in &out {
                for v in 0..=bound {
                    let mut idx = prefix.0.clone();
                    idx.push(v);
                    next.push(MultiIndex(idx));
                }
            }
            out = next;
        }
        out
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
