//! Root data of su(p,q).
//!
//! Coordinates live in `E = R^(p+q)` with orthonormal basis `e_1, ..., e_(p+q)`.
//! Indices `1..=p` form the first block, `p+1..=p+q` the second. The compact
//! positive roots are the within-block differences `e_i - e_j` (i < j); the
//! noncompact weights are the cross-block differences `±(e_i - e_j)` with
//! `i <= p < j`, split into the plus half (weights of `p+`) and the minus
//! half (their negatives, weights of `p-`).
//!
//! Roots are stored as index pairs plus a sign, never as dense vectors: every
//! computation on them reduces to coordinate comparisons.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// The pair (p,q) fixing su(p,q) and its block structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct Signature {
    p: u32,
    q: u32,
}

#[derive(Deserialize)]
struct RawSignature {
    p: u32,
    q: u32,
}

impl TryFrom<RawSignature> for Signature {
    type Error = SignatureError;

    fn try_from(raw: RawSignature) -> Result<Self, SignatureError> {
        Signature::new(raw.p, raw.q)
    }
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self, SignatureError> {
        if p == 0 {
            return Err(SignatureError::ZeroBlock { block: 'p' });
        }
        if q == 0 {
            return Err(SignatureError::ZeroBlock { block: 'q' });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// p + q, the number of coordinates of the ambient space E.
    pub fn rank(&self) -> usize {
        self.p as usize + self.q as usize
    }

    /// True when the 1-based index lies in the first block.
    pub fn in_first_block(&self, index: usize) -> bool {
        index >= 1 && index <= self.p as usize
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "su({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("signature block {block} must be at least 1")]
    ZeroBlock { block: char },
}

/// Which half of the noncompact weights: `Plus` for p+, `Minus` for p-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Plus,
    Minus,
}

/// `sign * (e_i - e_j)` with `1 <= i < j <= p+q`.
///
/// Compact iff i and j lie in the same block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    i: usize,
    j: usize,
    positive: bool,
}

impl Root {
    pub fn new(i: usize, j: usize, positive: bool) -> Result<Self, RootError> {
        if i == 0 || i >= j {
            return Err(RootError::BadIndexPair { i, j });
        }
        Ok(Root { i, j, positive })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn negated(&self) -> Root {
        Root {
            i: self.i,
            j: self.j,
            positive: !self.positive,
        }
    }

    pub fn is_compact(&self, sig: Signature) -> bool {
        sig.in_first_block(self.i) == sig.in_first_block(self.j)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "e{}-e{}", self.i, self.j)
        } else {
            write!(f, "-(e{}-e{})", self.i, self.j)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("root indices must satisfy 1 <= i < j, got i={i}, j={j}")]
    BadIndexPair { i: usize, j: usize },
    #[error("coordinate index {index} out of range for a vector of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// The within-block roots `e_i - e_j`, i < j, in both blocks.
///
/// Count: p(p-1)/2 + q(q-1)/2.
pub fn compact_positive_roots(sig: Signature) -> Vec<Root> {
    let p = sig.p() as usize;
    let n = sig.rank();
    let mut roots = Vec::with_capacity(p * (p - 1) / 2 + (n - p) * (n - p - 1) / 2);
    for i in 1..=p {
        for j in (i + 1)..=p {
            roots.push(Root { i, j, positive: true });
        }
    }
    for i in (p + 1)..=n {
        for j in (i + 1)..=n {
            roots.push(Root { i, j, positive: true });
        }
    }
    roots
}

/// The pq weights of p+ (`e_i - e_j`, i <= p < j) or their negatives for p-.
pub fn noncompact_weights(sig: Signature, half: Half) -> Vec<Root> {
    let p = sig.p() as usize;
    let n = sig.rank();
    let mut weights = Vec::with_capacity(p * (n - p));
    for i in 1..=p {
        for j in (p + 1)..=n {
            weights.push(Root {
                i,
                j,
                positive: half == Half::Plus,
            });
        }
    }
    weights
}

/// Standard inner product of `alpha` against the coordinate vector:
/// `sign * (a_i - a_j)`.
pub fn pairing(coords: &[i64], alpha: Root) -> Result<i64, RootError> {
    if alpha.j > coords.len() {
        return Err(RootError::IndexOutOfRange {
            index: alpha.j,
            len: coords.len(),
        });
    }
    let diff = coords[alpha.i - 1] - coords[alpha.j - 1];
    Ok(if alpha.positive { diff } else { -diff })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn signature_rejects_zero_blocks() {
        assert!(Signature::new(0, 3).is_err());
        assert!(Signature::new(3, 0).is_err());
        assert!(Signature::new(1, 1).is_ok());
    }

    #[test]
    fn compact_roots_of_su_1_1_are_empty() {
        assert!(compact_positive_roots(sig(1, 1)).is_empty());
    }

    #[test]
    fn compact_roots_of_su_2_2() {
        let roots = compact_positive_roots(sig(2, 2));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], Root::new(1, 2, true).unwrap());
        assert_eq!(roots[1], Root::new(3, 4, true).unwrap());
    }

    #[test]
    fn compact_roots_of_su_2_3_count() {
        assert_eq!(compact_positive_roots(sig(2, 3)).len(), 4);
    }

    #[test]
    fn noncompact_weights_of_su_2_3() {
        let plus = noncompact_weights(sig(2, 3), Half::Plus);
        assert_eq!(plus.len(), 6);
        assert!(plus.iter().all(|r| r.is_positive() && !r.is_compact(sig(2, 3))));
    }

    #[test]
    fn noncompact_weights_of_su_1_1() {
        let plus = noncompact_weights(sig(1, 1), Half::Plus);
        assert_eq!(plus, vec![Root::new(1, 2, true).unwrap()]);
    }

    #[test]
    fn root_counts_exhaustive_small() {
        for p in 1..=8u32 {
            for q in 1..=8u32 {
                let s = sig(p, q);
                let compact = compact_positive_roots(s).len() as u32;
                let plus = noncompact_weights(s, Half::Plus).len() as u32;
                let minus = noncompact_weights(s, Half::Minus).len() as u32;
                assert_eq!(compact, p * (p - 1) / 2 + q * (q - 1) / 2);
                assert_eq!(plus, p * q);
                assert_eq!(minus, p * q);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let coords = [1, -1, 0, 0, 0];
        let a13 = Root::new(1, 3, true).unwrap();
        assert_eq!(pairing(&coords, a13).unwrap(), 1);

        let zero = [0i64; 5];
        assert_eq!(pairing(&zero, a13).unwrap(), 0);

        // -(e2 - e4) pairs to -(a2 - a4) = 1
        let neg24 = Root::new(2, 4, false).unwrap();
        assert_eq!(pairing(&coords, neg24).unwrap(), 1);
    }

    #[test]
    fn pairing_rejects_short_vector() {
        let alpha = Root::new(1, 5, true).unwrap();
        assert!(matches!(
            pairing(&[0, 0, 0], alpha),
            Err(RootError::IndexOutOfRange { index: 5, len: 3 })
        ));
    }

    #[test]
    fn pairing_is_antisymmetric_under_negation() {
        let coords = [4, 2, 2, -1, -3, 0, 7];
        for i in 1..=6 {
            for j in (i + 1)..=7 {
                let alpha = Root::new(i, j, true).unwrap();
                let p = pairing(&coords, alpha).unwrap();
                let m = pairing(&coords, alpha.negated()).unwrap();
                assert_eq!(p, -m);
            }
        }
    }

    #[test]
    fn plus_half_size_matches_complex_dimension() {
        // dim_C of the symmetric space of su(p,q) is pq; the verifier relies on
        // this for sub-signature cycle dimensions.
        assert_eq!(noncompact_weights(sig(4, 5), Half::Plus).len(), 20);
        assert_eq!(noncompact_weights(sig(3, 5), Half::Plus).len(), 15);
    }
}
