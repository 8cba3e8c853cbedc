//! Assembles Q and D, checks the singleton-survivor claims, and validates
//! the supporting inequalities.
//!
//! For a signature and a symmetric pair, the cycle and its complement have
//! complex dimensions read off the sub-signature's root data; `t` is their
//! minimum. Q collects the classes with `R+ = R- <= t`, D-membership is the
//! decomposability verdict, and the theorem under test says `Q \ D` is
//! exactly the family's distinguished class — for row1 when
//! `5 <= p <= q <= 2p-2`, for row2 when `5 <= p <= q`, `q != p+1`, and for
//! both rows on su(2,2). Outside those ranges the report still carries the
//! computed outcome, flagged by `within_hypothesis`.

use crate::decomposability::{
    is_discretely_decomposable, non_decomposability_witness, PairError, SymmetricPair,
};
use crate::enumeration::{enumerate_q_bounded, BudgetExceeded, ProgressFn};
use crate::parabolic::{distinguished_class, Family, LevelPattern, ParabolicInvariants};
use crate::root_system::{noncompact_weights, Half, Signature};
use thiserror::Error;

/// Strata sizes around one witness value: first-block counts strictly above
/// / equal to / strictly below it (x, y, z), second-block counts (l, m, n),
/// and the 1-based index of the witness coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockProfile {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub l: u32,
    pub m: u32,
    pub n: u32,
    pub witness_s: usize,
}

/// Which block the witness coordinate is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    First,
    Second,
}

/// One member of Q with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QClass {
    pub pattern: LevelPattern,
    pub invariants: ParabolicInvariants,
    pub decomposable: bool,
    pub witness_s: Option<usize>,
}

/// Outcome of one verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub signature: Signature,
    pub pair: SymmetricPair,
    pub t: u64,
    pub q_set: Vec<QClass>,
    pub d_cap_q: Vec<QClass>,
    pub q_minus_d: Vec<QClass>,
    pub singleton: bool,
    pub expected: LevelPattern,
    pub matches_expected: bool,
    /// Whether (signature, pair) falls under the theorem's hypothesis; when
    /// false the computed verdict is informational, not a claim check.
    pub within_hypothesis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("level {level} out of range, pattern has {num_levels} levels")]
    NoSuchLevel { level: usize, num_levels: usize },
    #[error("level {level} has no mass in the chosen block")]
    EmptyStratum { level: usize },
}

/// Complex dimensions of the cycle and its complement, from the
/// sub-signature's root data.
///
/// Row1 with parameter k: the fixed factor is su(p-k, q), so the cycle has
/// dimension (p-k)q and the complement kq; row2 mirrors with su(p, q-k).
pub fn cycle_dimensions(sig: Signature, pair: SymmetricPair) -> Result<(u64, u64), PairError> {
    pair.validate(sig)?;
    let sub = match pair.family() {
        Family::Row1 => Signature::new(sig.p() - pair.k(), sig.q()),
        Family::Row2 => Signature::new(sig.p(), sig.q() - pair.k()),
    }
    .expect("validated pair leaves both blocks nonempty");
    let cycle = noncompact_weights(sub, Half::Plus).len() as u64;
    let total = sig.p() as u64 * sig.q() as u64;
    Ok((cycle, total - cycle))
}

/// The bound t: minimum of the two cycle dimensions.
pub fn compute_t(sig: Signature, pair: SymmetricPair) -> Result<u64, PairError> {
    let (d, d_complement) = cycle_dimensions(sig, pair)?;
    Ok(d.min(d_complement))
}

/// Whether (signature, pair) is covered by the singleton claim: k = 1 and
/// either `5 <= p <= q` with the row's side condition, or su(2,2).
pub fn within_hypothesis(sig: Signature, pair: SymmetricPair) -> bool {
    if pair.k() != 1 {
        return false;
    }
    let (p, q) = (sig.p(), sig.q());
    if (p, q) == (2, 2) {
        return true;
    }
    if !(5 <= p && p <= q) {
        return false;
    }
    match pair.family() {
        Family::Row1 => q <= 2 * p - 2,
        Family::Row2 => q != p + 1,
    }
}

/// Full verification run: enumerate Q, split by decomposability, compare
/// the survivors against the distinguished class.
pub fn verify_theorem(
    sig: Signature,
    pair: SymmetricPair,
    budget: u64,
    progress: Option<&ProgressFn<'_>>,
) -> Result<VerificationReport, VerifyError> {
    pair.validate(sig)?;
    let t = compute_t(sig, pair)?;
    let classes = enumerate_q_bounded(sig, t, budget, progress)?;

    let q_set: Vec<QClass> = classes
        .into_iter()
        .map(|(pattern, invariants)| {
            let decomposable = is_discretely_decomposable(&pattern, pair, sig)
                .expect("pattern comes from this signature");
            let witness_s = non_decomposability_witness(&pattern, pair, sig)
                .expect("pattern comes from this signature");
            QClass {
                pattern,
                invariants,
                decomposable,
                witness_s,
            }
        })
        .collect();

    let d_cap_q: Vec<QClass> = q_set.iter().filter(|c| c.decomposable).cloned().collect();
    let q_minus_d: Vec<QClass> = q_set.iter().filter(|c| !c.decomposable).cloned().collect();

    let expected = distinguished_class(sig, pair.family())
        .expect("valid pair implies the distinguished shape exists");
    let singleton = q_minus_d.len() == 1;
    let matches_expected = singleton && q_minus_d[0].pattern == expected;

    Ok(VerificationReport {
        signature: sig,
        pair,
        t,
        q_set,
        d_cap_q,
        q_minus_d,
        singleton,
        expected,
        matches_expected,
        within_hypothesis: within_hypothesis(sig, pair),
    })
}

/// Strata counts of a pattern around the value of one level, with the
/// witness coordinate taken from the given block of that level.
pub fn block_profile(
    pat: &LevelPattern,
    level: usize,
    block: Block,
) -> Result<BlockProfile, ProfileError> {
    let levels = pat.levels();
    if level >= levels.len() {
        return Err(ProfileError::NoSuchLevel {
            level,
            num_levels: levels.len(),
        });
    }
    let (x_here, y_here) = levels[level];
    let mass = match block {
        Block::First => x_here,
        Block::Second => y_here,
    };
    if mass == 0 {
        return Err(ProfileError::EmptyStratum { level });
    }

    let x: u32 = levels[..level].iter().map(|&(x, _)| x).sum();
    let z: u32 = levels[level + 1..].iter().map(|&(x, _)| x).sum();
    let l: u32 = levels[..level].iter().map(|&(_, y)| y).sum();
    let n: u32 = levels[level + 1..].iter().map(|&(_, y)| y).sum();
    let p: u32 = x + x_here + z;

    let witness_s = match block {
        Block::First => x as usize + 1,
        Block::Second => (p + l) as usize + 1,
    };
    Ok(BlockProfile {
        x,
        y: x_here,
        z,
        l,
        m: y_here,
        n,
        witness_s,
    })
}

/// The three lower bounds tying R+, R-, R to a witness profile:
///
/// * `R+ >= x(m+n) + yn`
/// * `R- >= z(l+m) + yl`
/// * `R  >= x(m+n) + y(n+l) + z(l+m)`
pub fn check_proof_inequalities(pat: &LevelPattern, profile: &BlockProfile) -> bool {
    let inv = crate::parabolic::invariants(pat);
    let (x, y, z) = (profile.x as u64, profile.y as u64, profile.z as u64);
    let (l, m, n) = (profile.l as u64, profile.m as u64, profile.n as u64);
    inv.r_plus >= x * (m + n) + y * n
        && inv.r_minus >= z * (l + m) + y * l
        && inv.r_total >= x * (m + n) + y * (n + l) + z * (l + m)
}
