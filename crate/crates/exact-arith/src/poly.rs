//! Sparse bivariate polynomials over the rationals.
//!
//! Invariants:
//! - `terms` maps exponent pairs `(deg_t, deg_y)` to *nonzero* coefficients
//! - term order is lexicographic on `(deg_t, deg_y)`, which fixes the
//!   canonical textual form used in golden files and CLI output

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::traits::{One, Signed, Zero};

use crate::Rational;

/// The two formal variables a [`Poly`] may mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Weight marker.
    T,
    /// Component marker.
    Y,
}

/// Exact polynomial in `t` and `y` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(0, 0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(crate::rat_int(n))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::monomial(1, 0, Rational::one())
    }

    /// The variable `y`.
    pub fn y() -> Self {
        Poly::monomial(0, 1, Rational::one())
    }

    /// `c * t^deg_t * y^deg_y`.
    pub fn monomial(deg_t: u32, deg_y: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_t, deg_y), c);
        }
        Poly { terms }
    }

    /// `t^n`.
    pub fn t_power(n: u32) -> Self {
        Poly::monomial(n, 0, Rational::one())
    }

    /// `y^n`.
    pub fn y_power(n: u32) -> Self {
        Poly::monomial(0, n, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    /// Coefficient of `t^deg_t * y^deg_y` (zero when absent).
    pub fn coeff(&self, deg_t: u32, deg_y: u32) -> Rational {
        self.terms
            .get(&(deg_t, deg_y))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// Some(c) when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    /// True when no term mentions `var`.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.terms.keys().all(|&(dt, dy)| match var {
            Var::T => dt == 0,
            Var::Y => dy == 0,
        })
    }

    fn insert_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute 1 for `var`, collecting terms.
    pub fn eval_at_one(&self, var: Var) -> Poly {
        let mut out = Poly::zero();
        for (&(dt, dy), c) in &self.terms {
            let key = match var {
                Var::T => (0, dy),
                Var::Y => (dt, 0),
            };
            out.insert_term(key, c.clone());
        }
        out
    }

    /// Substitute `c * var` for `var`: the coefficient of `var^k` picks up a
    /// factor `c^k`. With `c = 0` this evaluates the variable at zero.
    pub fn scale_var(&self, var: Var, c: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (&(dt, dy), coeff) in &self.terms {
            let deg = match var {
                Var::T => dt,
                Var::Y => dy,
            };
            let mut factor = Rational::one();
            for _ in 0..deg {
                factor *= c;
            }
            out.insert_term((dt, dy), coeff * factor);
        }
        out
    }

    /// Substitute integers for both variables and return the rational value.
    pub fn eval(&self, t: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(dt, dy), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..dt {
                term *= t;
            }
            for _ in 0..dy {
                term *= y;
            }
            acc += term;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_term(*k, v.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (k, v) in &rhs.terms {
            self.insert_term(*k, v.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_term(*k, -v.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(at, ay), ac) in &self.terms {
            for (&(bt, by), bc) in &rhs.terms {
                out.insert_term((at + bt, ay + by), ac * bc);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dt, dy), c) in &self.terms {
            let mono = monomial_string(dt, dy);
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial_string(dt: u32, dy: u32) -> String {
    let mut parts = Vec::new();
    match dt {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{dt}")),
    }
    match dy {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{dy}")),
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn add_identity_and_cancellation() {
        let t = Poly::t();
        assert_eq!(&t + &Poly::zero(), t);

        // (1 + t) + (1 + (-1)*t) = 2
        let a = &Poly::one() + &Poly::t();
        let b = &Poly::one() + &Poly::t().scale(&rat_int(-1));
        assert_eq!(&a + &b, Poly::from_int(2));
    }

    #[test]
    fn add_halves_of_y() {
        // direct rational oracle: 1/2 + 1/2 = 1
        let half_y = Poly::monomial(0, 1, rat(1, 2));
        let expected = Poly::monomial(0, 1, rat(1, 2) + rat(1, 2));
        assert_eq!(&half_y + &half_y, expected);
        assert_eq!(&half_y + &half_y, Poly::y());
    }

    #[test]
    fn mul_binomial_square() {
        let one_plus_t = &Poly::one() + &Poly::t();
        let sq = &one_plus_t * &one_plus_t;
        let mut expected = Poly::one();
        expected += &Poly::t().scale(&rat_int(2));
        expected += &Poly::t_power(2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn mul_annihilator() {
        let p = &Poly::t_power(3) + &Poly::y();
        assert_eq!(&p * &Poly::zero(), Poly::zero());
    }

    #[test]
    fn binomial_sixth_power_coefficient() {
        // repeated-multiplication oracle for (1+t)^6: multiply out one factor
        // at a time and read off the t^3 coefficient.
        let one_plus_t = &Poly::one() + &Poly::t();
        let mut p = Poly::one();
        for _ in 0..6 {
            p = &p * &one_plus_t;
        }
        assert_eq!(p.coeff(3, 0), rat_int(20));
        assert_eq!(p, one_plus_t.pow(6));
    }

    #[test]
    fn eval_at_one_examples() {
        // (y^2 + 2y) at y=1 -> 3
        let p = &Poly::y_power(2) + &Poly::y().scale(&rat_int(2));
        assert_eq!(p.eval_at_one(Var::Y), Poly::from_int(3));

        // (t*y) at y=1 -> t
        let ty = Poly::monomial(1, 1, rat_int(1));
        assert_eq!(ty.eval_at_one(Var::Y), Poly::t());
    }

    #[test]
    fn scale_var_halves_y() {
        // y |-> y/2 divides the y^k coefficient by 2^k
        let p = &Poly::y_power(2).scale(&rat_int(4)) + &Poly::y();
        let scaled = p.scale_var(Var::Y, &rat(1, 2));
        assert_eq!(scaled.coeff(0, 2), rat_int(1));
        assert_eq!(scaled.coeff(0, 1), rat(1, 2));
    }

    #[test]
    fn display_canonical_order() {
        // lexicographic on (deg_t, deg_y): y^2 before t*y
        let p = &Poly::monomial(1, 1, rat_int(1)) + &Poly::y_power(2);
        assert_eq!(p.to_string(), "y^2 + t*y");
        assert_eq!(Poly::zero().to_string(), "0");
        let q = &Poly::one() - &Poly::monomial(1, 0, rat(3, 2));
        assert_eq!(q.to_string(), "1 - 3/2*t");
    }

    /// Naive term-by-term product used as an independent multiplication oracle.
    fn naive_mul(a: &Poly, b: &Poly) -> Poly {
        let mut pairs: Vec<((u32, u32), Rational)> = Vec::new();
        for (&(at, ay), ac) in a.terms() {
            for (&(bt, by), bc) in b.terms() {
                pairs.push(((at + bt, ay + by), ac * bc));
            }
        }
        let mut out = Poly::zero();
        for (k, c) in pairs {
            out += &Poly::monomial(k.0, k.1, c);
        }
        out
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(
            ((0u32..4, 0u32..4), -100i64..=100, 1i64..=16),
            0..6,
        )
        .prop_map(|terms| {
            let mut p = Poly::zero();
            for ((dt, dy), n, d) in terms {
                p += &Poly::monomial(dt, dy, rat(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &Poly::zero(), a.clone());
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &Poly::one(), a.clone());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, Poly::zero());
        }

        #[test]
        fn mul_matches_naive_oracle(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        }

        #[test]
        fn eval_at_one_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            let prod = (&a * &b).eval_at_one(Var::Y);
            let sep = &a.eval_at_one(Var::Y) * &b.eval_at_one(Var::Y);
            prop_assert_eq!(prod, sep);
            let prod_t = (&a * &b).eval_at_one(Var::T);
            let sep_t = &a.eval_at_one(Var::T) * &b.eval_at_one(Var::T);
            prop_assert_eq!(prod_t, sep_t);
        }
    }
}
