//! Closed-form reference series, assembled from primitive series with the
//! engine's own exp/log/mul/pow machinery. These are what the enumerated
//! series get compared against.

use std::fmt;
use std::str::FromStr;

use exact_arith::{inverse_factorial_product, rat, Poly, Rational, Var};

use crate::{Egf, EgfError, MultiIndex};

/// Identifiers for the built-in closed forms.
///
/// The `TwoMagic*` family refines counts of matrices with all row and column
/// sums equal to 2; the `Barred*Factor` series relate the with-entry-`s` and
/// without-entry-`s` variants; `BipartiteRefined` is the component-marked
/// weighted bipartite-graph series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormId {
    /// `(1 - z1 z2)^{-y/2} * e^{z1 z2 y/2}` (two sorts).
    TwoMagic,
    /// `(1 - z1 z2)^{-y/2} * e^{-z1 z2 y/2}` (two sorts).
    TwoMagicBarred,
    /// `(1 - z)^{-y/2} * exp(y z^2/4 + y z / (2(1-z)))` (one sort).
    TwoMagicSymmetric,
    /// `(1 - z)^{-y/2} * exp(-y z^2/4 - y z + y z / (2(1-z)))` (one sort).
    TwoMagicBarredSymmetric,
    /// `(sum (1+t)^{n1 n2} z1^{n1} z2^{n2} / (n1! n2!))^y` (two sorts).
    BipartiteRefined,
    /// `e^{-y z1 z2}` (two sorts).
    BarredFactor,
    /// `e^{-y (z + z^2/2)}` (one sort).
    BarredSymmetricFactor,
}

impl ClosedFormId {
    pub fn arity(self) -> usize {
        match self {
            ClosedFormId::TwoMagicSymmetric
            | ClosedFormId::TwoMagicBarredSymmetric
            | ClosedFormId::BarredSymmetricFactor => 1,
            _ => 2,
        }
    }

    pub const ALL: [ClosedFormId; 7] = [
        ClosedFormId::TwoMagic,
        ClosedFormId::TwoMagicBarred,
        ClosedFormId::TwoMagicSymmetric,
        ClosedFormId::TwoMagicBarredSymmetric,
        ClosedFormId::BipartiteRefined,
        ClosedFormId::BarredFactor,
        ClosedFormId::BarredSymmetricFactor,
    ];
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClosedFormId::TwoMagic => "two-magic",
            ClosedFormId::TwoMagicBarred => "two-magic-barred",
            ClosedFormId::TwoMagicSymmetric => "two-magic-symmetric",
            ClosedFormId::TwoMagicBarredSymmetric => "two-magic-barred-symmetric",
            ClosedFormId::BipartiteRefined => "bipartite-refined",
            ClosedFormId::BarredFactor => "barred-factor",
            ClosedFormId::BarredSymmetricFactor => "barred-symmetric-factor",
        };
        write!(f, "{s}")
    }
}

impl FromStr for ClosedFormId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClosedFormId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| format!("unknown closed form: {s}"))
    }
}

/// `(1 - z^step)^{-y/2}`: the geometric series raised to the formal power
/// `y`, then `y` rescaled to `y/2`.
fn inverse_sqrt_binomial(cap: &MultiIndex, step: &MultiIndex) -> Result<Egf, EgfError> {
    let geo = Egf::geometric(cap.clone(), step);
    Ok(geo.pow_y()?.map_coeffs(|c| c.scale_var(Var::Y, &rat(1, 2))))
}

/// Build the named closed-form series truncated at `cap`.
pub fn closed_form(id: ClosedFormId, cap: &MultiIndex) -> Result<Egf, EgfError> {
    if cap.arity() != id.arity() {
        return Err(EgfError::ArityMismatch(cap.arity(), id.arity()));
    }
    match id {
        ClosedFormId::TwoMagic | ClosedFormId::TwoMagicBarred => {
            let step = MultiIndex(vec![1, 1]);
            let sign = if id == ClosedFormId::TwoMagic { 1 } else { -1 };
            let base = inverse_sqrt_binomial(cap, &step)?;
            let arg = Egf::monomial(
                cap.clone(),
                step,
                Poly::monomial(0, 1, rat(sign, 2)),
            );
            base.mul(&arg.exp()?)
        }
        ClosedFormId::TwoMagicSymmetric => {
            let step = MultiIndex(vec![1]);
            let base = inverse_sqrt_binomial(cap, &step)?;
            // y z^2/4 + y z / (2(1-z))
            let quarter = Egf::monomial(
                cap.clone(),
                MultiIndex(vec![2]),
                Poly::monomial(0, 1, rat(1, 4)),
            );
            let tail = Egf::geometric(cap.clone(), &step)
                .sub(&Egf::one(cap.clone()))?
                .scale_poly(&Poly::monomial(0, 1, rat(1, 2)));
            base.mul(&quarter.add(&tail)?.exp()?)
        }
        ClosedFormId::TwoMagicBarredSymmetric => {
            let step = MultiIndex(vec![1]);
            let base = inverse_sqrt_binomial(cap, &step)?;
            // -y z^2/4 - y z + y z / (2(1-z))
            let quarter = Egf::monomial(
                cap.clone(),
                MultiIndex(vec![2]),
                Poly::monomial(0, 1, rat(-1, 4)),
            );
            let linear = Egf::monomial(
                cap.clone(),
                MultiIndex(vec![1]),
                Poly::monomial(0, 1, rat(-1, 1)),
            );
            let tail = Egf::geometric(cap.clone(), &step)
                .sub(&Egf::one(cap.clone()))?
                .scale_poly(&Poly::monomial(0, 1, rat(1, 2)));
            base.mul(&quarter.add(&linear)?.add(&tail)?.exp()?)
        }
        ClosedFormId::BipartiteRefined => {
            let one_plus_t = &Poly::one() + &Poly::t();
            let base = Egf::from_fn(cap.clone(), |idx| {
                let exponent = (idx.0[0] * idx.0[1]) as u32;
                one_plus_t
                    .pow(exponent)
                    .scale(&inverse_factorial_product(&idx.0))
            });
            base.pow_y()
        }
        ClosedFormId::BarredFactor => Egf::monomial(
            cap.clone(),
            MultiIndex(vec![1, 1]),
            Poly::monomial(0, 1, Rational::new((-1).into(), 1.into())),
        )
        .exp(),
        ClosedFormId::BarredSymmetricFactor => {
            let arg = Egf::monomial(
                cap.clone(),
                MultiIndex(vec![1]),
                Poly::monomial(0, 1, rat(-1, 1)),
            )
            .add(&Egf::monomial(
                cap.clone(),
                MultiIndex(vec![2]),
                Poly::monomial(0, 1, rat(-1, 2)),
            ))?;
            arg.exp()
        }
    }
}
