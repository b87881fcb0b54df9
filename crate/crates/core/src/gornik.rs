//! The deformation `C[X]/(X³ - 1)` of `A`, done exactly over `Q(j)`, and the
//! block sizes `n(c)` of the deformed web algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{boundary_tally, count_colorings, BoundaryColoring, ColoringError};
use crate::enumeration::{enumerate_ne, EnumerationError, WebBasis};
use crate::foam::FacetColor;
use crate::signs::SignSequence;
use crate::web::{trace_close, Web};

pub use crate::foam::PreFoam;

/// `re + im·j` with `j² + j + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl EisensteinRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        EisensteinRational { re, im }
    }

    pub fn int(n: i64) -> Self {
        EisensteinRational::new(rat(n), rat(0))
    }

    pub fn zero() -> Self {
        EisensteinRational::int(0)
    }

    pub fn one() -> Self {
        EisensteinRational::int(1)
    }

    pub fn j() -> Self {
        EisensteinRational::new(rat(0), rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugation, `j ↦ j²`.
    pub fn conj(&self) -> Self {
        EisensteinRational::new(&self.re - &self.im, -self.im.clone())
    }

    /// `|z|² = re² - re·im + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(EisensteinRational::new(c.re / &n, c.im / n))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(EisensteinRational::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        EisensteinRational::new(&self.re * k, &self.im * k)
    }
}

impl Add for &EisensteinRational {
    type Output = EisensteinRational;
    fn add(self, o: &EisensteinRational) -> EisensteinRational {
        EisensteinRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &EisensteinRational {
    type Output = EisensteinRational;
    fn sub(self, o: &EisensteinRational) -> EisensteinRational {
        EisensteinRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &EisensteinRational {
    type Output = EisensteinRational;
    fn neg(self) -> EisensteinRational {
        EisensteinRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Mul for &EisensteinRational {
    type Output = EisensteinRational;
    fn mul(self, o: &EisensteinRational) -> EisensteinRational {
        // j² = -1 - j
        let bd = &self.im * &o.im;
        EisensteinRational::new(
            &self.re * &o.re - &bd,
            &self.re * &o.im + &self.im * &o.re - bd,
        )
    }
}

impl fmt::Display for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}j", self.im),
            (false, false) => write!(f, "{} + {}j", self.re, self.im),
        }
    }
}

/// `c0 + c1 X + c2 X²` in `Q(j)[X]/(X³ - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GornikElement {
    pub coeffs: [EisensteinRational; 3],
}

impl GornikElement {
    pub fn new(c0: EisensteinRational, c1: EisensteinRational, c2: EisensteinRational) -> Self {
        GornikElement {
            coeffs: [c0, c1, c2],
        }
    }

    pub fn zero() -> Self {
        GornikElement::scalar(EisensteinRational::zero())
    }

    pub fn one() -> Self {
        GornikElement::scalar(EisensteinRational::one())
    }

    pub fn scalar(z: EisensteinRational) -> Self {
        GornikElement::new(z, EisensteinRational::zero(), EisensteinRational::zero())
    }

    pub fn x() -> Self {
        GornikElement::new(
            EisensteinRational::zero(),
            EisensteinRational::one(),
            EisensteinRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(EisensteinRational::is_zero)
    }

    pub fn scale(&self, z: &EisensteinRational) -> Self {
        GornikElement {
            coeffs: self.coeffs.clone().map(|c| &c * z),
        }
    }
}

impl Add for &GornikElement {
    type Output = GornikElement;
    fn add(self, o: &GornikElement) -> GornikElement {
        GornikElement {
            coeffs: [0, 1, 2].map(|k| &self.coeffs[k] + &o.coeffs[k]),
        }
    }
}

impl Sub for &GornikElement {
    type Output = GornikElement;
    fn sub(self, o: &GornikElement) -> GornikElement {
        GornikElement {
            coeffs: [0, 1, 2].map(|k| &self.coeffs[k] - &o.coeffs[k]),
        }
    }
}

impl Mul for &GornikElement {
    type Output = GornikElement;
    fn mul(self, o: &GornikElement) -> GornikElement {
        let mut out = GornikElement::zero();
        for i in 0..3 {
            for k in 0..3 {
                let t = &self.coeffs[i] * &o.coeffs[k];
                out.coeffs[(i + k) % 3] = &out.coeffs[(i + k) % 3] + &t;
            }
        }
        out
    }
}

impl fmt::Display for GornikElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["1", "X", "X^2"];
        let terms: Vec<String> = (0..3)
            .filter(|&k| !self.coeffs[k].is_zero())
            .map(|k| format!("({})*{}", self.coeffs[k], names[k]))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// The orthogonal idempotents `(a, b, c)`, eigenvalues `1, j², j` of `X`.
pub fn idempotents() -> (GornikElement, GornikElement, GornikElement) {
    let j = EisensteinRational::j();
    let j2 = j.pow(2);
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let one = EisensteinRational::one();
    let make = |u: &EisensteinRational, v: &EisensteinRational| {
        GornikElement::new(one.clone(), u.clone(), v.clone())
            .scale(&EisensteinRational::new(third.clone(), rat(0)))
    };
    (make(&one, &one), make(&j, &j2), make(&j2, &j))
}

pub fn idempotent(c: FacetColor) -> GornikElement {
    let (a, b, cc) = idempotents();
    match c {
        FacetColor::A => a,
        FacetColor::B => b,
        FacetColor::C => cc,
    }
}

/// The edge color attached to a facet color.
pub fn color_value(c: FacetColor) -> i8 {
    match c {
        FacetColor::A => -1,
        FacetColor::B => 0,
        FacetColor::C => 1,
    }
}

pub fn well_colored(f: &PreFoam) -> Result<bool, crate::foam::FoamError> {
    f.well_colored()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub epsilon: SignSequence,
    /// Every boundary coloring of ε, including those with `n(c) = 0`.
    pub counts: BTreeMap<BoundaryColoring, u128>,
}

impl BlockDecomposition {
    pub fn dimension(&self) -> u128 {
        self.counts.values().map(|n| n * n).sum()
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }
}

fn tallies(basis: &WebBasis) -> Result<Vec<BTreeMap<BoundaryColoring, u128>>, ColoringError> {
    basis.webs.par_iter().map(boundary_tally).collect()
}

pub fn block_counts_for(basis: &WebBasis) -> Result<BlockDecomposition, ColoringError> {
    let mut counts: BTreeMap<BoundaryColoring, u128> = BoundaryColoring::all(basis.epsilon.len())
        .into_iter()
        .map(|c| (c, 0))
        .collect();
    for t in tallies(basis)? {
        for (c, n) in t {
            *counts
                .get_mut(&c)
                .expect("tally within all boundary colorings") += n;
        }
    }
    Ok(BlockDecomposition {
        epsilon: basis.epsilon.clone(),
        counts,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum GornikError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Web(#[from] crate::web::WebError),
}

pub fn block_counts(eps: &SignSequence) -> Result<BlockDecomposition, GornikError> {
    Ok(block_counts_for(&enumerate_ne(eps)?)?)
}

/// Both sides of `Σ n(c)² = Σ |colorings(closure)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockIdentity {
    pub epsilon: SignSequence,
    pub block_dimension: u128,
    pub closure_colorings: u128,
}

impl BlockIdentity {
    pub fn holds(&self) -> bool {
        self.block_dimension == self.closure_colorings
    }
}

pub fn block_identity_for(basis: &WebBasis) -> Result<BlockIdentity, GornikError> {
    let blocks = block_counts_for(basis)?;
    let webs: &[Web] = &basis.webs;
    let closure_colorings = webs
        .par_iter()
        .map(|w1| -> Result<u128, GornikError> {
            let mut s = 0;
            for w2 in webs {
                s += count_colorings(&trace_close(w1, w2)?);
            }
            Ok(s)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(BlockIdentity {
        epsilon: basis.epsilon.clone(),
        block_dimension: blocks.dimension(),
        closure_colorings,
    })
}

pub fn verify_block_identity(eps: &SignSequence) -> Result<bool, GornikError> {
    Ok(block_identity_for(&enumerate_ne(eps)?)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::count_restricting;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn eisenstein_field() {
        let j = EisensteinRational::j();
        let one = EisensteinRational::one();
        assert_eq!(&(&one + &j) + &j.pow(2), EisensteinRational::zero());
        assert_eq!(j.pow(3), one);
        assert_eq!(j.conj(), j.pow(2));
        let z = EisensteinRational::new(rat(2), rat(-5));
        assert_eq!(&z * &z.inverse().unwrap(), one);
        assert!(EisensteinRational::zero().inverse().is_none());
    }

    #[test]
    fn idempotent_axioms() {
        let (a, b, c) = idempotents();
        let all = [&a, &b, &c];
        for (i, e) in all.iter().enumerate() {
            for (k, f) in all.iter().enumerate() {
                let p = *e * *f;
                if i == k {
                    assert_eq!(&p, *e);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        assert_eq!(&(&a + &b) + &c, GornikElement::one());
        let j = EisensteinRational::j();
        let x = &(&a + &b.scale(&j.pow(2))) + &c.scale(&j);
        assert_eq!(x, GornikElement::x());
        assert_eq!(&GornikElement::x() * &b, b.scale(&j.pow(2)));
        let x3 = &(&GornikElement::x() * &GornikElement::x()) * &GornikElement::x();
        assert_eq!(x3, GornikElement::one());
    }

    #[test]
    fn small_blocks() {
        let b = block_counts(&eps("+-")).unwrap();
        assert_eq!(b.counts.len(), 9);
        assert_eq!(b.counts.values().filter(|&&n| n == 1).count(), 3);
        assert_eq!(b.counts.values().filter(|&&n| n == 0).count(), 6);
        let b = block_counts(&eps("+++")).unwrap();
        let ones: Vec<&BoundaryColoring> = b
            .counts
            .iter()
            .filter(|(_, &n)| n == 1)
            .map(|(c, _)| c)
            .collect();
        assert_eq!(ones.len(), 6);
        assert!(ones.iter().all(|c| {
            let mut v = c.0.clone();
            v.sort();
            v == [-1, 0, 1]
        }));
        assert_eq!(b.total(), 6);
        let b = block_counts(&eps("")).unwrap();
        assert_eq!(b.counts.len(), 1);
        assert_eq!(b.dimension(), 1);
    }

    #[test]
    fn identity_small() {
        for s in ["", "+-", "+++", "+-+-", "++--", "+-+-+-"] {
            let id = block_identity_for(&enumerate_ne(&eps(s)).unwrap()).unwrap();
            assert!(id.holds(), "{s}: {id:?}");
        }
        let id = block_identity_for(&enumerate_ne(&eps("+++")).unwrap()).unwrap();
        assert_eq!(id.block_dimension, 6);
    }

    #[test]
    fn counts_agree_with_restriction() {
        let basis = enumerate_ne(&eps("++--")).unwrap();
        let b = block_counts_for(&basis).unwrap();
        for (c, n) in &b.counts {
            let direct: u128 = basis
                .webs
                .iter()
                .map(|w| count_restricting(w, c).unwrap())
                .sum();
            assert_eq!(direct, *n);
        }
        let all: u128 = basis.webs.iter().map(count_colorings).sum();
        assert_eq!(b.total(), all);
    }
}
