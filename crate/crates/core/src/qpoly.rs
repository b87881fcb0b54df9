//! Laurent polynomials in `s = q^{1/2}` with arbitrary precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QPolyError {
    #[error("quantum integer [{0}] is only defined for n >= 1")]
    NonPositive(i64),
    #[error("polynomial has odd powers of q^(1/2): {0}")]
    HalfPowers(String),
}

/// Exact Laurent polynomial `Σ c_k s^k` where `s² = q`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial_s(0, 1)
    }

    /// `coeff · s^exp`.
    pub fn monomial_s(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `coeff · q^exp`.
    pub fn monomial_q(exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self::monomial_s(2 * exp, coeff)
    }

    pub fn q() -> Self {
        Self::monomial_q(1, 1)
    }

    pub fn q_inv() -> Self {
        Self::monomial_q(-1, 1)
    }

    pub fn from_s_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn from_q_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        Self::from_s_terms(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent of s, coefficient)`, increasing exponent.
    pub fn s_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff_s(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn coeff_q(&self, exp: i64) -> BigInt {
        self.coeff_s(2 * exp)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when every exponent of `s` is even, i.e. the value lies in `Z[q, q^-1]`.
    pub fn has_integral_q_powers(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn ensure_integral_q_powers(&self) -> Result<(), QPolyError> {
        if self.has_integral_q_powers() {
            Ok(())
        } else {
            Err(QPolyError::HalfPowers(self.to_string()))
        }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `q ↦ q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Multiply by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + 2 * k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }
}

/// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1) = Σ_{i=0}^{n-1} q^{n-1-2i}`.
pub fn quantum_integer(n: i64) -> Result<LaurentPoly, QPolyError> {
    if n < 1 {
        return Err(QPolyError::NonPositive(n));
    }
    Ok(LaurentPoly::from_q_terms(
        (0..n).map(|i| (n - 1 - 2 * i, 1)),
    ))
}

pub fn eval_at_one(p: &LaurentPoly) -> BigInt {
    p.eval_at_one()
}

pub fn bar_involution(p: &LaurentPoly) -> LaurentPoly {
    p.bar()
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial_s(0, c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::monomial_s(0, c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl MulAssign for LaurentPoly {
    fn mul_assign(&mut self, rhs: LaurentPoly) {
        *self = &*self * &rhs;
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| a * b)
    }
}

fn render_q_power(s_exp: i64) -> String {
    if s_exp % 2 == 0 {
        match s_exp / 2 {
            1 => "q".to_string(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({s_exp}/2)")
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `q^2 + 1 + q^-2`, `2q - q^(-3/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", render_q_power(*e))?;
            } else {
                write!(f, "{mag}{}", render_q_power(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi(n: i64) -> LaurentPoly {
        quantum_integer(n).unwrap()
    }

    #[test]
    fn quantum_integer_small_values() {
        assert_eq!(qi(1), LaurentPoly::one());
        assert_eq!(qi(2), LaurentPoly::from_q_terms([(1, 1), (-1, 1)]));
        assert_eq!(qi(3), LaurentPoly::from_q_terms([(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn quantum_integer_rejects_nonpositive() {
        assert_eq!(quantum_integer(0), Err(QPolyError::NonPositive(0)));
        assert!(quantum_integer(-3).is_err());
    }

    #[test]
    fn quantum_integer_matches_defining_quotient() {
        // (q - q^-1)[n] = q^n - q^-n
        let diff = LaurentPoly::from_q_terms([(1, 1), (-1, -1)]);
        for n in 1..=12 {
            let lhs = &diff * &qi(n);
            assert_eq!(lhs, LaurentPoly::from_q_terms([(n, 1), (-n, -1)]));
        }
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(eval_at_one(&LaurentPoly::zero()), BigInt::from(0));
        assert_eq!(eval_at_one(&qi(3)), BigInt::from(3));
        let p = LaurentPoly::from_q_terms([(3, 1), (1, 2), (-1, 2), (-3, 1)]);
        assert_eq!(p, &qi(2) * &qi(3));
        assert_eq!(eval_at_one(&p), BigInt::from(6));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar_involution(&LaurentPoly::q()), LaurentPoly::q_inv());
        assert_eq!(bar_involution(&qi(3)), qi(3));
        let p = qi(2).shift_q(2);
        assert_eq!(bar_involution(&p), qi(2).shift_q(-2));
    }

    #[test]
    fn quantum_integers_are_bar_invariant() {
        for n in 1..=20 {
            assert!(qi(n).is_bar_invariant(), "[{n}]");
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(qi(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((&qi(2) * &qi(3)).to_string(), "q^3 + 2q + 2q^-1 + q^-3");
        let half = LaurentPoly::from_s_terms([(3, 1), (-1, -2)]);
        assert_eq!(half.to_string(), "q^(3/2) - 2q^(-1/2)");
        assert_eq!((-LaurentPoly::q()).to_string(), "-q");
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = LaurentPoly::q();
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.term_count(), 0);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..8, -5i64..5), 0..6).prop_map(LaurentPoly::from_s_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_at_one_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }

        #[test]
        fn bar_is_an_involutive_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
