//! Parabolic classes as canonical level patterns.
//!
//! A dominant parameter determines its parabolic class through nothing but
//! the relative order of its coordinates, so classes are identified by
//! *level patterns*: sequences of per-block multiplicities `(x_k, y_k)` of
//! the distinct coordinate values, listed from highest value to lowest.
//!
//! Two adjacent levels supported in the same single block (`x|0` next to
//! `x'|0`, or `0|y` next to `0|y'`) induce exactly the same cross-block
//! order relations, hence the same module; only the canonical *merged* form
//! — no such adjacent pair — identifies a class. [`canonicalize`] always
//! returns merged patterns. Unmerged sequences still arise as the raw
//! orderings streamed by the enumeration module; [`LevelPattern`] admits
//! them and [`LevelPattern::canonical_class`] folds them to their class.
//!
//! The nilradical meets the noncompact weights in
//!
//! * `R+ = #{(i,j) : i <= p < j, a_i > a_j} = sum_{k<k'} x_k * y_k'`,
//! * `R- = #{(i,j) : i <= p < j, a_j > a_i} = sum_{k<k'} y_k * x_k'`,
//!
//! and the Levi factor is the direct sum of blocks `u(x_k, y_k)`, one per
//! level. A class is holomorphic iff `R- = 0` and anti-holomorphic iff
//! `R+ = 0`.

use crate::root_system::Signature;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A dominant integer parameter: coordinates `a_1..a_(p+q)`, nonincreasing
/// within each block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lambda {
    sig: Signature,
    coords: Vec<i64>,
}

impl Lambda {
    pub fn new(sig: Signature, coords: Vec<i64>) -> Result<Self, DominanceError> {
        if coords.len() != sig.rank() {
            return Err(DominanceError::WrongLength {
                expected: sig.rank(),
                got: coords.len(),
            });
        }
        let p = sig.p() as usize;
        // Name the first violated inequality, 1-based.
        for i in 0..coords.len() - 1 {
            let crosses_block = i + 1 == p;
            if !crosses_block && coords[i] < coords[i + 1] {
                return Err(DominanceError::Violated {
                    index: i + 1,
                    left: coords[i],
                    right: coords[i + 1],
                });
            }
        }
        Ok(Lambda { sig, coords })
    }

    pub fn zero(sig: Signature) -> Self {
        Lambda {
            coords: vec![0; sig.rank()],
            sig,
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinates of the first block, `a_1..a_p`.
    pub fn first_block(&self) -> &[i64] {
        &self.coords[..self.sig.p() as usize]
    }

    /// Coordinates of the second block, `a_(p+1)..a_(p+q)`.
    pub fn second_block(&self) -> &[i64] {
        &self.coords[self.sig.p() as usize..]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("dominance violated: a_{index} >= a_{next} fails ({left} < {right})", next = index + 1)]
    Violated { index: usize, left: i64, right: i64 },
}

/// Canonical identity of a parabolic class: per-level block multiplicities,
/// highest value first. Rendered as `x|y` levels joined by `>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelPattern {
    levels: Vec<(u32, u32)>,
}

impl LevelPattern {
    /// Validates: at least one level, no empty level, both block sums >= 1.
    pub fn new(levels: Vec<(u32, u32)>) -> Result<Self, PatternError> {
        if levels.is_empty() {
            return Err(PatternError::Empty);
        }
        if let Some(k) = levels.iter().position(|&(x, y)| x == 0 && y == 0) {
            return Err(PatternError::EmptyLevel { level: k + 1 });
        }
        let p: u64 = levels.iter().map(|&(x, _)| x as u64).sum();
        let q: u64 = levels.iter().map(|&(_, y)| y as u64).sum();
        if p == 0 || q == 0 {
            return Err(PatternError::EmptyBlock);
        }
        Ok(LevelPattern { levels })
    }

    /// The one-level pattern of the zero parameter, `(p, q)`.
    pub fn trivial(sig: Signature) -> Self {
        LevelPattern {
            levels: vec![(sig.p(), sig.q())],
        }
    }

    pub fn levels(&self) -> &[(u32, u32)] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// The signature recovered from the block sums.
    pub fn signature(&self) -> Signature {
        let p: u32 = self.levels.iter().map(|&(x, _)| x).sum();
        let q: u32 = self.levels.iter().map(|&(_, y)| y).sum();
        Signature::new(p, q).expect("pattern invariant: both block sums >= 1")
    }

    /// True when no two adjacent levels are supported in the same single
    /// block — the canonical form of a class.
    pub fn is_canonical(&self) -> bool {
        self.levels.windows(2).all(|w| {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            !((y0 == 0 && y1 == 0) || (x0 == 0 && x1 == 0))
        })
    }

    /// The canonical merged form: adjacent levels lying in the same single
    /// block fold into one. Identity on canonical patterns.
    pub fn canonical_class(&self) -> LevelPattern {
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(self.levels.len());
        for &(x, y) in &self.levels {
            if let Some(&mut (ref mut px, ref mut py)) = merged.last_mut() {
                if (*py == 0 && y == 0) || (*px == 0 && x == 0) {
                    *px += x;
                    *py += y;
                    continue;
                }
            }
            merged.push((x, y));
        }
        LevelPattern { levels: merged }
    }

    /// An integer parameter inducing this pattern: level k takes value r-k
    /// (levels 1-based, r levels in total).
    pub fn representative(&self) -> Lambda {
        let sig = self.signature();
        let r = self.levels.len() as i64;
        let mut coords = Vec::with_capacity(sig.rank());
        for (k, &(x, _)) in self.levels.iter().enumerate() {
            coords.extend(std::iter::repeat(r - 1 - k as i64).take(x as usize));
        }
        for (k, &(_, y)) in self.levels.iter().enumerate() {
            coords.extend(std::iter::repeat(r - 1 - k as i64).take(y as usize));
        }
        Lambda::new(sig, coords).expect("representative is dominant by construction")
    }
}

impl fmt::Display for LevelPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(x, y)) in self.levels.iter().enumerate() {
            if k > 0 {
                write!(f, ">")?;
            }
            write!(f, "{x}|{y}")?;
        }
        Ok(())
    }
}

impl FromStr for LevelPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, PatternError> {
        let mut levels = Vec::new();
        for part in s.split('>') {
            let part = part.trim();
            let (x, y) = part
                .split_once('|')
                .ok_or_else(|| PatternError::Syntax { token: part.to_string() })?;
            let x: u32 = x.trim().parse().map_err(|_| PatternError::Syntax {
                token: part.to_string(),
            })?;
            let y: u32 = y.trim().parse().map_err(|_| PatternError::Syntax {
                token: part.to_string(),
            })?;
            levels.push((x, y));
        }
        LevelPattern::new(levels)
    }
}

impl Serialize for LevelPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LevelPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("level pattern must have at least one level")]
    Empty,
    #[error("level {level} has x = y = 0")]
    EmptyLevel { level: usize },
    #[error("both blocks must have at least one coordinate")]
    EmptyBlock,
    #[error("malformed level {token:?}, expected x|y")]
    Syntax { token: String },
}

/// Nilradical dimensions, holomorphy flags and Levi blocks of one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicInvariants {
    pub r_plus: u64,
    pub r_minus: u64,
    pub r_total: u64,
    pub holomorphic: bool,
    pub antiholomorphic: bool,
    pub levi: LevelPattern,
}

/// Canonical level pattern of a dominant parameter: value-multiplicity
/// levels, folded to the merged class form.
///
/// Invariant under translation by a constant and under any strictly
/// increasing reparameterization of the values.
pub fn canonicalize(lambda: &Lambda) -> LevelPattern {
    let mut values: Vec<i64> = lambda.coords().to_vec();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();

    let levels = values
        .iter()
        .map(|&v| {
            let x = lambda.first_block().iter().filter(|&&a| a == v).count() as u32;
            let y = lambda.second_block().iter().filter(|&&a| a == v).count() as u32;
            (x, y)
        })
        .collect();
    LevelPattern::new(levels)
        .expect("every distinct value occurs in some block")
        .canonical_class()
}

/// R+, R-, R, holomorphy flags and Levi blocks from the level products.
pub fn invariants(pat: &LevelPattern) -> ParabolicInvariants {
    let levels = pat.levels();
    let mut r_plus: u64 = 0;
    let mut r_minus: u64 = 0;
    let mut x_above: u64 = 0;
    let mut y_above: u64 = 0;
    for &(x, y) in levels {
        r_plus += x_above * y as u64;
        r_minus += y_above * x as u64;
        x_above += x as u64;
        y_above += y as u64;
    }
    ParabolicInvariants {
        r_plus,
        r_minus,
        r_total: r_plus + r_minus,
        holomorphic: r_minus == 0,
        antiholomorphic: r_plus == 0,
        levi: pat.clone(),
    }
}

/// The two symmetric-pair families, by table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Row1,
    Row2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Row1 => write!(f, "row1"),
            Family::Row2 => write!(f, "row2"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "row1" => Ok(Family::Row1),
            "row2" => Ok(Family::Row2),
            other => Err(format!("unknown family {other:?}, expected row1 or row2")),
        }
    }
}

/// The distinguished surviving class of each family:
/// `1|0 > (p-2)|q > 1|0` for row1, `0|1 > p|(q-2) > 0|1` for row2.
pub fn distinguished_class(sig: Signature, which: Family) -> Result<LevelPattern, DistinguishedClassError> {
    match which {
        Family::Row1 => {
            if sig.p() < 2 {
                return Err(DistinguishedClassError {
                    family: which,
                    block: 'p',
                    got: sig.p(),
                });
            }
            Ok(LevelPattern {
                levels: vec![(1, 0), (sig.p() - 2, sig.q()), (1, 0)],
            })
        }
        Family::Row2 => {
            if sig.q() < 2 {
                return Err(DistinguishedClassError {
                    family: which,
                    block: 'q',
                    got: sig.q(),
                });
            }
            Ok(LevelPattern {
                levels: vec![(0, 1), (sig.p(), sig.q() - 2), (0, 1)],
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("distinguished class for {family} needs block {block} >= 2, got {got}")]
pub struct DistinguishedClassError {
    pub family: Family,
    pub block: char,
    pub got: u32,
}
