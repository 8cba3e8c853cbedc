//! Discrete-decomposability tests for the two symmetric-pair families.
//!
//! Membership in D is decided by order conditions on any dominant
//! representative `a_1..a_(p+q)` of the class. For the first family
//! (subalgebra `su(k) + su(p-k,q) + u(1)`, valid for `q >= p > k`) the
//! condition is the disjunction
//!
//! * `a_p >= a_(p+1)` (holomorphic), or
//! * some `p+1 <= l <= p+q-1` has `a_l >= a_1` and `a_p >= a_(l+1)`, or
//! * `a_(p+q) >= a_1` (anti-holomorphic);
//!
//! the second family (`su(p,q-k) + su(k) + u(1)`, valid for `q >= p`,
//! `k < q`) mirrors the middle clause into the first block. Neither family's
//! condition mentions k, so the verdict is the same for every valid k.
//!
//! The negation has a closed form: the condition fails exactly when some
//! second-block coordinate sits strictly between `a_1` and `a_p` (first
//! family; mirrored for the second). `non_decomposability_witness` returns
//! that coordinate's index, and the equivalence of the two routes is a
//! shipped property test.

use crate::parabolic::{Family, LevelPattern};
use crate::root_system::Signature;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One row of the decomposability table: a family plus its parameter k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct SymmetricPair {
    family: Family,
    k: u32,
}

#[derive(Deserialize)]
struct RawPair {
    family: Family,
    k: u32,
}

impl TryFrom<RawPair> for SymmetricPair {
    type Error = PairError;

    fn try_from(raw: RawPair) -> Result<Self, PairError> {
        SymmetricPair::new(raw.family, raw.k)
    }
}

impl SymmetricPair {
    pub fn new(family: Family, k: u32) -> Result<Self, PairError> {
        if k == 0 {
            return Err(PairError::ZeroK);
        }
        Ok(SymmetricPair { family, k })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Table-row validity: `q >= p`, and `k < p` (row1) or `k < q` (row2).
    pub fn validate(&self, sig: Signature) -> Result<(), PairError> {
        if sig.p() > sig.q() {
            return Err(PairError::BlockOrder {
                p: sig.p(),
                q: sig.q(),
            });
        }
        let bound = match self.family {
            Family::Row1 => sig.p(),
            Family::Row2 => sig.q(),
        };
        if self.k >= bound {
            return Err(PairError::KOutOfRange {
                family: self.family,
                k: self.k,
                bound,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("pair parameter k must be at least 1")]
    ZeroK,
    #[error("the table requires q >= p, got p={p}, q={q}")]
    BlockOrder { p: u32, q: u32 },
    #[error("{family} requires k < {bound}, got k={k}")]
    KOutOfRange { family: Family, k: u32, bound: u32 },
    #[error("pattern belongs to {pattern_sig}, not {expected}")]
    SignatureMismatch {
        pattern_sig: Signature,
        expected: Signature,
    },
}

fn check(pat: &LevelPattern, pair: SymmetricPair, sig: Signature) -> Result<(), PairError> {
    pair.validate(sig)?;
    let pattern_sig = pat.signature();
    if pattern_sig != sig {
        return Err(PairError::SignatureMismatch {
            pattern_sig,
            expected: sig,
        });
    }
    Ok(())
}

/// Whether the class restricts discretely over the pair's subalgebra.
///
/// Depends only on the family, never on k.
pub fn is_discretely_decomposable(
    pat: &LevelPattern,
    pair: SymmetricPair,
    sig: Signature,
) -> Result<bool, PairError> {
    check(pat, pair, sig)?;
    let lam = pat.representative();
    let a = lam.coords();
    let p = sig.p() as usize;
    let n = sig.rank();
    // 1-based coordinate access, matching the inequalities above.
    let a = |i: usize| a[i - 1];
    Ok(match pair.family() {
        Family::Row1 => {
            a(p) >= a(p + 1)
                || a(n) >= a(1)
                || ((p + 1)..n).any(|l| a(l) >= a(1) && a(p) >= a(l + 1))
        }
        Family::Row2 => {
            a(n) >= a(1)
                || a(p) >= a(p + 1)
                || (1..p).any(|l| a(l) >= a(p + 1) && a(n) >= a(l + 1))
        }
    })
}

/// The smallest index s strictly between the extremes of the other block:
/// `a_1 > a_s > a_p` with `p+1 <= s <= p+q` for row1, and the mirrored
/// `a_(p+1) > a_s > a_(p+q)` with `s <= p` for row2.
///
/// Present exactly when the class is not discretely decomposable.
pub fn non_decomposability_witness(
    pat: &LevelPattern,
    pair: SymmetricPair,
    sig: Signature,
) -> Result<Option<usize>, PairError> {
    check(pat, pair, sig)?;
    let lam = pat.representative();
    let a = lam.coords();
    let p = sig.p() as usize;
    let n = sig.rank();
    let a = |i: usize| a[i - 1];
    Ok(match pair.family() {
        Family::Row1 => ((p + 1)..=n).find(|&s| a(1) > a(s) && a(s) > a(p)),
        Family::Row2 => (1..=p).find(|&s| a(p + 1) > a(s) && a(s) > a(n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_all;
    use crate::parabolic::{canonicalize, invariants, Lambda};

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn pair(family: Family, k: u32) -> SymmetricPair {
        SymmetricPair::new(family, k).unwrap()
    }

    fn class(p: u32, q: u32, coords: &[i64]) -> LevelPattern {
        canonicalize(&Lambda::new(sig(p, q), coords.to_vec()).unwrap())
    }

    #[test]
    fn pair_validation() {
        assert!(pair(Family::Row1, 1).validate(sig(2, 3)).is_ok());
        assert!(pair(Family::Row1, 2).validate(sig(2, 3)).is_err()); // k < p fails
        assert!(pair(Family::Row2, 2).validate(sig(2, 3)).is_ok());
        assert!(pair(Family::Row1, 1).validate(sig(3, 2)).is_err()); // q >= p fails
        assert!(SymmetricPair::new(Family::Row1, 0).is_err());
    }

    #[test]
    fn e1_minus_e2_is_not_decomposable_for_row1() {
        let c = class(2, 3, &[1, -1, 0, 0, 0]);
        let s = sig(2, 3);
        assert!(!is_discretely_decomposable(&c, pair(Family::Row1, 1), s).unwrap());
        assert_eq!(
            non_decomposability_witness(&c, pair(Family::Row1, 1), s).unwrap(),
            Some(3)
        );
        // Mirrored family sees the transition at l = 1 and accepts.
        assert!(is_discretely_decomposable(&c, pair(Family::Row2, 1), s).unwrap());
    }

    #[test]
    fn e1_plus_e2_is_decomposable_and_holomorphic() {
        let c = class(2, 3, &[1, 1, 0, 0, 0]);
        let s = sig(2, 3);
        assert!(invariants(&c).holomorphic);
        assert!(is_discretely_decomposable(&c, pair(Family::Row1, 1), s).unwrap());
        assert_eq!(
            non_decomposability_witness(&c, pair(Family::Row1, 1), s).unwrap(),
            None
        );
    }

    #[test]
    fn transition_clause_accepts_e3_minus_e5() {
        let c = class(2, 3, &[0, 0, 1, 0, -1]);
        let s = sig(2, 3);
        assert!(is_discretely_decomposable(&c, pair(Family::Row1, 1), s).unwrap());
    }

    #[test]
    fn trivial_class_is_always_decomposable() {
        for (p, q) in [(1, 1), (2, 3), (4, 4)] {
            let s = sig(p, q);
            let c = LevelPattern::trivial(s);
            for family in [Family::Row1, Family::Row2] {
                if pair(family, 1).validate(s).is_err() {
                    continue;
                }
                assert!(is_discretely_decomposable(&c, pair(family, 1), s).unwrap());
                assert_eq!(
                    non_decomposability_witness(&c, pair(family, 1), s).unwrap(),
                    None
                );
            }
        }
    }

    #[test]
    fn distinguished_row2_class_fails_row2() {
        // lambda = e6 - e10 on su(5,5)
        let c = class(5, 5, &[0, 0, 0, 0, 0, 1, 0, 0, 0, -1]);
        let s = sig(5, 5);
        assert!(!is_discretely_decomposable(&c, pair(Family::Row2, 1), s).unwrap());
        assert_eq!(
            non_decomposability_witness(&c, pair(Family::Row2, 1), s).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let c = class(2, 3, &[1, -1, 0, 0, 0]);
        let err = is_discretely_decomposable(&c, pair(Family::Row1, 1), sig(3, 3)).unwrap_err();
        assert!(matches!(err, PairError::SignatureMismatch { .. }));
    }

    #[test]
    fn negation_equivalence_exhaustive_small() {
        for p in 1..=4u32 {
            for q in p..=4u32 {
                if p + q > 7 {
                    continue;
                }
                let s = sig(p, q);
                for family in [Family::Row1, Family::Row2] {
                    let pr = pair(family, 1);
                    if pr.validate(s).is_err() {
                        continue;
                    }
                    for pattern in enumerate_all(s) {
                        let dd = is_discretely_decomposable(&pattern, pr, s).unwrap();
                        let witness = non_decomposability_witness(&pattern, pr, s).unwrap();
                        assert_eq!(
                            dd,
                            witness.is_none(),
                            "negation mismatch for {pattern} under {family}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_is_k_independent_exhaustive_small() {
        for p in 2..=3u32 {
            for q in p..=4u32 {
                if p + q > 7 {
                    continue;
                }
                let s = sig(p, q);
                for pattern in enumerate_all(s) {
                    for family in [Family::Row1, Family::Row2] {
                        let bound = match family {
                            Family::Row1 => p,
                            Family::Row2 => q,
                        };
                        let verdicts: Vec<bool> = (1..bound)
                            .map(|k| {
                                is_discretely_decomposable(&pattern, pair(family, k), s).unwrap()
                            })
                            .collect();
                        assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn holomorphic_implies_decomposable_exhaustive_small() {
        for p in 1..=4u32 {
            for q in p..=4u32 {
                let s = sig(p, q);
                for pattern in enumerate_all(s) {
                    let inv = invariants(&pattern);
                    if !(inv.holomorphic || inv.antiholomorphic) {
                        continue;
                    }
                    for family in [Family::Row1, Family::Row2] {
                        let pr = pair(family, 1);
                        if pr.validate(s).is_err() {
                            continue;
                        }
                        assert!(
                            is_discretely_decomposable(&pattern, pr, s).unwrap(),
                            "(anti)holomorphic class {pattern} must be decomposable"
                        );
                    }
                }
            }
        }
    }
}
