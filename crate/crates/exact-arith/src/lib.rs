//! Exact coefficient arithmetic: arbitrary-precision rationals and sparse
//! polynomials in the two formal variables `t` (weight marker) and `y`
//! (component marker).
//!
//! Everything here is exact; there is no rounding and no modular reduction.
//! All identity checks downstream demand exact zero differences, so this
//! crate is the coefficient ring for the whole workspace.

mod poly;

pub use poly::{Poly, Var};

use num::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (enforced by the underlying representation).
pub type Rational = num::BigRational;

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `1 / (n_1! * n_2! * ... * n_r!)`, the EGF normalization for one index.
pub fn inverse_factorial_product(ns: &[usize]) -> Rational {
    let mut denom = BigInt::from(1);
    for &n in ns {
        denom *= factorial(n);
    }
    Rational::new(BigInt::from(1), denom)
}
