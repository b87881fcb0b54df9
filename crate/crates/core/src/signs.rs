use std::fmt;
use std::ops::{Index, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Orientation label of a strand: `+` carries `V⁺`, `-` carries `V⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid sign {found:?} at position {position} (expected '+' or '-')")]
pub struct SignParseError {
    pub position: usize,
    pub found: char,
}

/// A finite sequence of signs `ε`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignSequence(signs)
    }

    pub fn empty() -> Self {
        SignSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    /// `#+ - #-`.
    pub fn charge(&self) -> i64 {
        self.0.iter().map(|s| s.value()).sum()
    }

    /// Webs with boundary `ε` exist iff the signed sum is divisible by three.
    pub fn is_admissible(&self) -> bool {
        self.charge().rem_euclid(3) == 0
    }

    pub fn concat(&self, other: &SignSequence) -> SignSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignSequence(v)
    }

    /// Replace `self[range]` by `replacement`.
    pub fn splice(&self, start: usize, len: usize, replacement: &[Sign]) -> SignSequence {
        let mut v = self.0[..start].to_vec();
        v.extend_from_slice(replacement);
        v.extend_from_slice(&self.0[start + len..]);
        SignSequence(v)
    }

    /// All sign sequences of length `n`, in lexicographic order with `+ < -`.
    pub fn all_of_length(n: usize) -> Vec<SignSequence> {
        (0..1u64 << n)
            .map(|bits| {
                SignSequence(
                    (0..n)
                        .map(|i| {
                            if bits >> (n - 1 - i) & 1 == 0 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Every admissible sequence of length at most `max_len`.
    pub fn admissible_up_to(max_len: usize) -> Vec<SignSequence> {
        (0..=max_len)
            .flat_map(SignSequence::all_of_length)
            .filter(SignSequence::is_admissible)
            .collect()
    }
}

impl Index<usize> for SignSequence {
    type Output = Sign;
    fn index(&self, i: usize) -> &Sign {
        &self.0[i]
    }
}

impl From<Vec<Sign>> for SignSequence {
    fn from(v: Vec<Sign>) -> Self {
        SignSequence(v)
    }
}

impl FromStr for SignSequence {
    type Err = SignParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| Sign::from_char(c).ok_or(SignParseError { position, found: c }))
            .collect::<Result<Vec<_>, _>>()
            .map(SignSequence)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(eps("").is_admissible());
        assert!(eps("+-").is_admissible());
        assert!(eps("+++").is_admissible());
        assert!(eps("---").is_admissible());
        assert!(!eps("++-").is_admissible());
        assert!(!eps("+").is_admissible());
        assert!(eps("++++-").is_admissible());
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(eps("+−+").to_string(), "+-+");
        let err = "+x".parse::<SignSequence>().unwrap_err();
        assert_eq!(err.position, 1);
    }

    #[test]
    fn enumeration_of_sequences() {
        assert_eq!(SignSequence::all_of_length(3).len(), 8);
        let adm = SignSequence::admissible_up_to(3);
        assert_eq!(
            adm,
            vec![eps(""), eps("+-"), eps("-+"), eps("+++"), eps("---")]
        );
    }
}
