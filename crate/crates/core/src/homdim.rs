//! Graded hom dimensions between web modules and the bracket pairing on
//! `NE(ε)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{boundary_tally, ColoringError};
use crate::enumeration::{enumerate_ne, EnumerationError, WebBasis};
use crate::qpoly::LaurentPoly;
use crate::signs::SignSequence;
use crate::skein::{bracket, SkeinError};
use crate::web::{trace_close, Web, WebError};

#[derive(Debug, Error)]
pub enum HomdimError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("the bracket pairing on NE({0}) is degenerate")]
    Degenerate(SignSequence),
}

/// `⟨tr(w̄₁ w₂)⟩ · q^l`.
pub fn graded_homdim(w1: &Web, w2: &Web) -> Result<LaurentPoly, HomdimError> {
    let closed = trace_close(w1, w2)?;
    Ok(bracket(&closed)?.shift_q(w1.top().len() as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub epsilon: SignSequence,
    pub basis: WebBasis,
    pub entries: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn for_basis(basis: WebBasis) -> Result<GramMatrix, HomdimError> {
        let webs = &basis.webs;
        let entries = webs
            .par_iter()
            .map(|wi| {
                webs.iter()
                    .map(|wj| Ok(bracket(&trace_close(wi, wj)?)?.eval_at_one()))
                    .collect::<Result<Vec<_>, HomdimError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GramMatrix {
            epsilon: basis.epsilon.clone(),
            basis,
            entries,
        })
    }

    pub fn new(eps: &SignSequence) -> Result<GramMatrix, HomdimError> {
        GramMatrix::for_basis(enumerate_ne(eps)?)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries)
    }
}

/// Entry `(i, j)` rebuilt as `Σ_c n_i(c) n_j(c)` from boundary colorings.
pub fn gram_from_colorings(basis: &WebBasis) -> Result<Vec<Vec<BigInt>>, HomdimError> {
    let tallies = basis
        .webs
        .par_iter()
        .map(boundary_tally)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(tallies
        .iter()
        .map(|ti| {
            tallies
                .iter()
                .map(|tj| {
                    ti.iter()
                        .filter_map(|(c, n)| tj.get(c).map(|m| BigInt::from(*n) * BigInt::from(*m)))
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Bareiss fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// The determinant of the Gram matrix on `NE(ε)`; zero is an error.
pub fn gram_determinant(eps: &SignSequence) -> Result<BigInt, HomdimError> {
    let d = GramMatrix::new(eps)?.determinant();
    if d.is_zero() {
        return Err(HomdimError::Degenerate(eps.clone()));
    }
    Ok(d)
}

/// Rank of the Grothendieck group, with the web basis as witness.
pub fn k0_rank(eps: &SignSequence) -> Result<(usize, WebBasis), HomdimError> {
    let basis = enumerate_ne(eps)?;
    Ok((basis.len(), basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::quantum_integer;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss() {
        assert_eq!(determinant(&[]), BigInt::from(1));
        assert_eq!(determinant(&ints(&[&[0, 2], &[3, 1]])), BigInt::from(-6));
        assert_eq!(
            determinant(&ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(determinant(&ints(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(
            determinant(&ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn small_homdims() {
        let cap = enumerate_ne(&eps("+-")).unwrap().webs.remove(0);
        assert_eq!(
            graded_homdim(&cap, &cap).unwrap().to_string(),
            "q^4 + q^2 + 1"
        );
        let y = enumerate_ne(&eps("+++")).unwrap().webs.remove(0);
        let expected = (quantum_integer(2).unwrap() * quantum_integer(3).unwrap()).shift_q(3);
        assert_eq!(graded_homdim(&y, &y).unwrap(), expected);
    }

    #[test]
    fn determinants() {
        assert_eq!(gram_determinant(&eps("+-")).unwrap(), BigInt::from(3));
        assert_eq!(gram_determinant(&eps("+++")).unwrap(), BigInt::from(6));
        assert_eq!(gram_determinant(&eps("")).unwrap(), BigInt::from(1));
        let g = GramMatrix::new(&eps("+-+-+-")).unwrap();
        assert_eq!(g.size(), 6);
        assert!(g.is_symmetric());
        assert!(!g.determinant().is_zero());
        assert!((0..6).all(|i| g.entries[i][i] > BigInt::zero()));
    }

    #[test]
    fn gram_matches_colorings() {
        for s in ["+-+-", "++--", "+-+-+-", "++-+--"] {
            let g = GramMatrix::new(&eps(s)).unwrap();
            assert_eq!(gram_from_colorings(&g.basis).unwrap(), g.entries, "{s}");
        }
    }

    #[test]
    fn homdim_is_positive() {
        let basis = enumerate_ne(&eps("+-+-+-")).unwrap();
        let g = GramMatrix::for_basis(basis.clone()).unwrap();
        for (i, wi) in basis.webs.iter().enumerate() {
            for (j, wj) in basis.webs.iter().enumerate() {
                let h = graded_homdim(wi, wj).unwrap();
                assert!(h.has_nonnegative_coefficients());
                assert_eq!(h.eval_at_one(), g.entries[i][j]);
            }
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(k0_rank(&eps("")).unwrap().0, 1);
        assert_eq!(k0_rank(&eps("+++")).unwrap().0, 1);
        assert_eq!(k0_rank(&eps("+-+-+-")).unwrap().0, 6);
        assert!(matches!(
            k0_rank(&eps("++")),
            Err(HomdimError::Enumeration(_))
        ));
    }
}
