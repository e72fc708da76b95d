//! The truncated series type and its analytic operations.
//!
//! Invariants:
//! - every stored index is `<= cap` componentwise
//! - no stored coefficient is the zero polynomial
//! - two series compare equal iff they have the same arity, cap, and
//!   coefficient map

use std::collections::BTreeMap;

use exact_arith::{rat_int, Poly, Rational, Var};
use serde_json::{json, Value};
use thiserror::Error;

use crate::MultiIndex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EgfError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("cap mismatch: {0} vs {1}")]
    CapMismatch(MultiIndex, MultiIndex),
    #[error("constant term must be zero")]
    NonzeroConstantTerm,
    #[error("constant term must be one")]
    ConstantTermNotOne,
    #[error("base series coefficients must not involve y")]
    BaseInvolvesY,
    #[error("sort {0} out of range for arity {1}")]
    SortOutOfRange(usize, usize),
    #[error("cannot differentiate in sort {0}: cap is zero there")]
    CapExhausted(usize),
}

/// Truncated multivariate power series with [`Poly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Egf {
    cap: MultiIndex,
    coeffs: BTreeMap<MultiIndex, Poly>,
}

impl Egf {
    pub fn zero(cap: MultiIndex) -> Self {
        Egf {
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(cap: MultiIndex) -> Self {
        Egf::constant(cap, Poly::one())
    }

    pub fn constant(cap: MultiIndex, c: Poly) -> Self {
        let idx = MultiIndex::zeros(cap.arity());
        Egf::monomial(cap, idx, c)
    }

    /// Single term `c * z^idx`; silently dropped when `idx` exceeds the cap.
    pub fn monomial(cap: MultiIndex, idx: MultiIndex, c: Poly) -> Self {
        let mut s = Egf::zero(cap);
        s.set_coeff(idx, c);
        s
    }

    /// Build a series by evaluating `f` at every index up to the cap.
    pub fn from_fn(cap: MultiIndex, mut f: impl FnMut(&MultiIndex) -> Poly) -> Self {
        let mut s = Egf::zero(cap.clone());
        for idx in MultiIndex::indices_up_to(&cap) {
            let c = f(&idx);
            s.set_coeff(idx, c);
        }
        s
    }

    /// Geometric series `sum_{k>=0} z^{k*step}` truncated at the cap.
    /// With a zero `step` this is just the constant 1.
    pub fn geometric(cap: MultiIndex, step: &MultiIndex) -> Self {
        let mut s = Egf::one(cap.clone());
        if step.is_zero() {
            return s;
        }
        let mut idx = step.clone();
        while idx.leq(&cap) {
            s.set_coeff(idx.clone(), Poly::one());
            idx = idx.plus(step);
        }
        s
    }

    pub fn arity(&self) -> usize {
        self.cap.arity()
    }

    pub fn cap(&self) -> &MultiIndex {
        &self.cap
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Poly {
        self.coeffs.get(idx).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.coeffs.iter()
    }

    pub fn constant_term(&self) -> Poly {
        self.coeff(&MultiIndex::zeros(self.arity()))
    }

    fn set_coeff(&mut self, idx: MultiIndex, c: Poly) {
        if !c.is_zero() && idx.leq(&self.cap) {
            self.coeffs.insert(idx, c);
        }
    }

    fn add_coeff(&mut self, idx: MultiIndex, c: &Poly) {
        if c.is_zero() || !idx.leq(&self.cap) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Egf) -> Result<(), EgfError> {
        if self.arity() != other.arity() {
            return Err(EgfError::ArityMismatch(self.arity(), other.arity()));
        }
        if self.cap != other.cap {
            return Err(EgfError::CapMismatch(self.cap.clone(), other.cap.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Egf) -> Result<Egf, EgfError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_coeff(idx.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Egf) -> Result<Egf, EgfError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_coeff(idx.clone(), &-c);
        }
        Ok(out)
    }

    /// Truncated Cauchy product; both operands must share arity and cap.
    pub fn mul(&self, other: &Egf) -> Result<Egf, EgfError> {
        self.check_compatible(other)?;
        let mut out = Egf::zero(self.cap.clone());
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let k = i.plus(j);
                if k.leq(&self.cap) {
                    out.add_coeff(k, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by a fixed polynomial.
    pub fn scale_poly(&self, p: &Poly) -> Egf {
        let mut out = Egf::zero(self.cap.clone());
        for (idx, c) in &self.coeffs {
            out.set_coeff(idx.clone(), c * p);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Egf {
        self.scale_poly(&Poly::constant(r.clone()))
    }

    /// Apply a map to every coefficient (substitutions, specializations).
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Egf {
        let mut out = Egf::zero(self.cap.clone());
        for (idx, c) in &self.coeffs {
            out.set_coeff(idx.clone(), f(c));
        }
        out
    }

    /// Specialize a polynomial variable to 1 in every coefficient.
    pub fn eval_var_at_one(&self, var: Var) -> Egf {
        self.map_coeffs(|c| c.eval_at_one(var))
    }

    /// Retain only indices below a smaller cap.
    pub fn truncated(&self, cap: &MultiIndex) -> Result<Egf, EgfError> {
        if !cap.leq(&self.cap) {
            return Err(EgfError::CapMismatch(cap.clone(), self.cap.clone()));
        }
        let mut out = Egf::zero(cap.clone());
        for (idx, c) in &self.coeffs {
            out.set_coeff(idx.clone(), c.clone());
        }
        Ok(out)
    }

    /// `exp(a) = sum_k a^k / k!`; requires zero constant term.
    pub fn exp(&self) -> Result<Egf, EgfError> {
        if !self.constant_term().is_zero() {
            return Err(EgfError::NonzeroConstantTerm);
        }
        let mut out = Egf::one(self.cap.clone());
        let mut term = Egf::one(self.cap.clone());
        for k in 1..=self.cap.norm() {
            term = term.mul(self)?.scale(&Rational::new(1.into(), k.into()));
            if term.coeffs.is_empty() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `log(a) = sum_k (-1)^{k+1} (a-1)^k / k`; requires constant term 1.
    pub fn log(&self) -> Result<Egf, EgfError> {
        if !self.constant_term().is_one() {
            return Err(EgfError::ConstantTermNotOne);
        }
        let u = self.sub(&Egf::one(self.cap.clone()))?;
        let mut out = Egf::zero(self.cap.clone());
        let mut power = Egf::one(self.cap.clone());
        for k in 1..=self.cap.norm() {
            power = power.mul(&u)?;
            if power.coeffs.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign.into(), (k as i64).into())))?;
        }
        Ok(out)
    }

    /// Formal `a^y = exp(y * log(a))`. The base must have constant term 1
    /// and coefficients free of `y`.
    pub fn pow_y(&self) -> Result<Egf, EgfError> {
        if !self.constant_term().is_one() {
            return Err(EgfError::ConstantTermNotOne);
        }
        if self.coeffs.values().any(|c| !c.is_free_of(Var::Y)) {
            return Err(EgfError::BaseInvolvesY);
        }
        self.log()?.scale_poly(&Poly::y()).exp()
    }

    /// Formal partial derivative in one sort; the cap there drops by one.
    pub fn partial(&self, sort: usize) -> Result<Egf, EgfError> {
        if sort >= self.arity() {
            return Err(EgfError::SortOutOfRange(sort, self.arity()));
        }
        if self.cap.0[sort] == 0 {
            return Err(EgfError::CapExhausted(sort));
        }
        let mut cap = self.cap.clone();
        cap.0[sort] -= 1;
        let mut out = Egf::zero(cap);
        for (idx, c) in &self.coeffs {
            if idx.0[sort] == 0 {
                continue;
            }
            let mut lower = idx.clone();
            lower.0[sort] -= 1;
            out.set_coeff(lower, c.scale(&rat_int(idx.0[sort] as i64)));
        }
        Ok(out)
    }

    /// JSON form `{arity, cap, entries: [{index, poly}]}` with entries in
    /// lexicographic index order.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(idx, c)| json!({"index": idx.0, "poly": c.to_string()}))
            .collect();
        json!({
            "arity": self.arity(),
            "cap": self.cap.0,
            "entries": entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rat;
    use proptest::prelude::*;

    fn z(cap: &MultiIndex) -> Egf {
        Egf::monomial(cap.clone(), MultiIndex(vec![1]), Poly::one())
    }

    #[test]
    fn mul_binomial_and_unit() {
        let cap = MultiIndex(vec![2]);
        let one_plus_z = Egf::one(cap.clone()).add(&z(&cap)).unwrap();
        let sq = one_plus_z.mul(&one_plus_z).unwrap();
        assert_eq!(sq.coeff(&MultiIndex(vec![0])), Poly::one());
        assert_eq!(sq.coeff(&MultiIndex(vec![1])), Poly::from_int(2));
        assert_eq!(sq.coeff(&MultiIndex(vec![2])), Poly::one());

        let a = Egf::from_fn(MultiIndex(vec![3]), |i| {
            Poly::from_int(i.0[0] as i64 + 1)
        });
        assert_eq!(a.mul(&Egf::one(MultiIndex(vec![3]))).unwrap(), a);
    }

    #[test]
    fn mul_matches_convolution_oracle() {
        // (sum z^n)^2: coefficient of z^3 is the number of ways 3 = i + j,
        // counted by a direct convolution loop.
        let cap = MultiIndex(vec![5]);
        let geo = Egf::geometric(cap.clone(), &MultiIndex(vec![1]));
        let sq = geo.mul(&geo).unwrap();
        let mut oracle = 0i64;
        for i in 0..=3 {
            let j = 3 - i;
            oracle += 1;
            let _ = (i, j);
        }
        assert_eq!(oracle, 4);
        assert_eq!(sq.coeff(&MultiIndex(vec![3])), Poly::from_int(4));
    }

    #[test]
    fn exp_of_zero_and_of_z() {
        let cap = MultiIndex(vec![4]);
        assert_eq!(Egf::zero(cap.clone()).exp().unwrap(), Egf::one(cap.clone()));

        let e = z(&cap).exp().unwrap();
        assert_eq!(e.coeff(&MultiIndex(vec![0])), Poly::one());
        assert_eq!(e.coeff(&MultiIndex(vec![1])), Poly::one());
        assert_eq!(e.coeff(&MultiIndex(vec![2])), Poly::constant(rat(1, 2)));
        assert_eq!(e.coeff(&MultiIndex(vec![3])), Poly::constant(rat(1, 6)));
        assert_eq!(e.coeff(&MultiIndex(vec![4])), Poly::constant(rat(1, 24)));
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let cap = MultiIndex(vec![2]);
        assert_eq!(
            Egf::one(cap).exp().unwrap_err(),
            EgfError::NonzeroConstantTerm
        );
    }

    #[test]
    fn log_examples() {
        let cap = MultiIndex(vec![5]);
        assert_eq!(Egf::one(cap.clone()).log().unwrap(), Egf::zero(cap.clone()));

        let arg = z(&cap)
            .add(&Egf::monomial(cap.clone(), MultiIndex(vec![2]), Poly::one()))
            .unwrap();
        assert_eq!(arg.exp().unwrap().log().unwrap(), arg);
    }

    #[test]
    fn log_of_bipartite_count_series_recovers_connected_weight() {
        // Enumerated weighted bipartite series up to (1,1): coefficients
        // (1+t)^{n1 n2}/(n1! n2!). Its log at index (1,1) must equal the
        // total weight of connected graphs there, which is t (one graph,
        // one edge).
        let cap = MultiIndex(vec![1, 1]);
        let one_plus_t = &Poly::one() + &Poly::t();
        let gf = Egf::from_fn(cap, |idx| one_plus_t.pow((idx.0[0] * idx.0[1]) as u32));
        let log = gf.log().unwrap();
        assert_eq!(log.coeff(&MultiIndex(vec![1, 1])), Poly::t());
        assert_eq!(log.coeff(&MultiIndex(vec![1, 0])), Poly::one());
        assert_eq!(log.coeff(&MultiIndex(vec![0, 0])), Poly::zero());
    }

    #[test]
    fn pow_y_examples() {
        let cap = MultiIndex(vec![4]);
        assert_eq!(Egf::one(cap.clone()).pow_y().unwrap(), Egf::one(cap.clone()));

        // (exp z)^y = exp(yz): coefficient of z^2 is y^2/2
        let ey = z(&cap).exp().unwrap().pow_y().unwrap();
        assert_eq!(
            ey.coeff(&MultiIndex(vec![2])),
            Poly::monomial(0, 2, rat(1, 2))
        );

        // ((1-x)^{-1})^y: coefficient of x^2 is y(y+1)/2, by the generalized
        // binomial oracle C(y+k-1, k) computed as a rising factorial.
        let geo = Egf::geometric(cap.clone(), &MultiIndex(vec![1]));
        let powered = geo.pow_y().unwrap();
        let rising = |k: u32| {
            // y (y+1) ... (y+k-1) / k!
            let mut p = Poly::one();
            for j in 0..k {
                p = &p * &(&Poly::y() + &Poly::from_int(j as i64));
            }
            p.scale(&Rational::new(1.into(), exact_arith::factorial(k as usize)))
        };
        assert_eq!(powered.coeff(&MultiIndex(vec![2])), rising(2));
        assert_eq!(powered.coeff(&MultiIndex(vec![3])), rising(3));
    }

    #[test]
    fn pow_y_rejects_y_in_base() {
        let cap = MultiIndex(vec![2]);
        let bad = Egf::one(cap.clone())
            .add(&Egf::monomial(cap, MultiIndex(vec![1]), Poly::y()))
            .unwrap();
        assert_eq!(bad.pow_y().unwrap_err(), EgfError::BaseInvolvesY);
    }

    #[test]
    fn partial_examples() {
        let cap = MultiIndex(vec![3]);
        let z2 = Egf::monomial(cap.clone(), MultiIndex(vec![2]), Poly::one());
        let d = z2.partial(0).unwrap();
        assert_eq!(d.coeff(&MultiIndex(vec![1])), Poly::from_int(2));

        let c = Egf::one(cap.clone());
        assert_eq!(c.partial(0).unwrap(), Egf::zero(MultiIndex(vec![2])));

        assert_eq!(
            Egf::one(MultiIndex(vec![1, 1])).partial(2).unwrap_err(),
            EgfError::SortOutOfRange(2, 2)
        );
    }

    #[test]
    fn json_serialization_is_sorted() {
        let cap = MultiIndex(vec![1, 1]);
        let s = Egf::from_fn(cap, |idx| Poly::from_int((idx.0[0] + 2 * idx.0[1]) as i64));
        let v = s.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"arity":2,"cap":[1,1],"entries":[{"index":[0,1],"poly":"2"},{"index":[1,0],"poly":"1"},{"index":[1,1],"poly":"3"}]}"#
        );
    }

    fn arb_coeff() -> impl Strategy<Value = Poly> {
        ((0u32..2, 0u32..2), -6i64..=6, 1i64..=4)
            .prop_map(|((dt, dy), n, d)| Poly::monomial(dt, dy, rat(n, d)))
    }

    fn arb_series(cap: Vec<usize>) -> impl Strategy<Value = Egf> {
        let cap = MultiIndex(cap);
        let idxs = MultiIndex::indices_up_to(&cap);
        proptest::collection::vec(arb_coeff(), idxs.len()).prop_map(move |cs| {
            let mut s = Egf::zero(cap.clone());
            for (idx, c) in idxs.iter().zip(cs) {
                s.set_coeff(idx.clone(), c);
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exp_log_roundtrip(s in arb_series(vec![3, 2])) {
            // force constant term 0
            let zero_idx = MultiIndex::zeros(2);
            let c = s.coeff(&zero_idx);
            let a = s.sub(&Egf::constant(s.cap().clone(), c)).unwrap();
            prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());

            let one = Egf::one(a.cap().clone());
            let b = a.add(&one).unwrap();
            prop_assert_eq!(b.log().unwrap().exp().unwrap(), b);
        }

        #[test]
        fn pow_y_specializations(s in arb_series(vec![4])) {
            // force a valid base: constant term 1, coefficients free of y
            let base = s.map_coeffs(|c| c.eval_at_one(Var::Y));
            let zero_idx = MultiIndex::zeros(1);
            let c = base.coeff(&zero_idx);
            let base = base
                .sub(&Egf::constant(base.cap().clone(), c))
                .unwrap()
                .add(&Egf::one(s.cap().clone()))
                .unwrap();
            let powered = base.pow_y().unwrap();
            prop_assert_eq!(powered.eval_var_at_one(Var::Y), base.clone());
            let at_two = powered.map_coeffs(|c| c.scale_var(Var::Y, &rat_int(2)).eval_at_one(Var::Y));
            prop_assert_eq!(at_two, base.mul(&base).unwrap());
        }

        #[test]
        fn partial_product_rule(a in arb_series(vec![3, 2]), b in arb_series(vec![3, 2])) {
            for sort in 0..2 {
                let lhs = a.mul(&b).unwrap().partial(sort).unwrap();
                let cap = lhs.cap().clone();
                let da = a.partial(sort).unwrap();
                let db = b.partial(sort).unwrap();
                let rhs = da
                    .mul(&b.truncated(&cap).unwrap())
                    .unwrap()
                    .add(&a.truncated(&cap).unwrap().mul(&db).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn partial_commutes_with_exp(s in arb_series(vec![3, 2])) {
            let zero_idx = MultiIndex::zeros(2);
            let c = s.coeff(&zero_idx);
            let a = s.sub(&Egf::constant(s.cap().clone(), c)).unwrap();
            let e = a.exp().unwrap();
            for sort in 0..2 {
                let lhs = e.partial(sort).unwrap();
                let cap = lhs.cap().clone();
                let rhs = a
                    .partial(sort)
                    .unwrap()
                    .mul(&e.truncated(&cap).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
