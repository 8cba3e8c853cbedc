//! Combinatorics of theta-stable parabolic subalgebras of su(p,q).
//!
//! A dominant integer parameter on the two index blocks of su(p,q) determines
//! a parabolic class; only the relative order of its coordinates matters, so
//! classes are stored as canonical *level patterns* — the per-block
//! multiplicities of the distinct parameter values, from highest to lowest.
//! On top of that identity the crate computes:
//!
//! * the nilradical dimensions `R+`, `R-`, `R` and the Levi blocks
//!   ([`parabolic`]);
//! * bigraded Poincaré polynomials of the associated cohomology, as products
//!   of Gaussian binomials with an `(R+, R-)` bidegree shift ([`cohomology`]);
//! * exhaustive and pruned enumeration of all classes of a signature
//!   ([`enumeration`]);
//! * the discrete-decomposability tests for the two symmetric-pair families
//!   ([`decomposability`]);
//! * the singleton-survivor verification that combines all of the above
//!   ([`verifier`]).
//!
//! Everything is exact integer arithmetic; all values are immutable after
//! construction and safe to share across threads.

pub mod cli;
pub mod cohomology;
pub mod decomposability;
pub mod enumeration;
pub mod parabolic;
pub mod root_system;
pub mod verifier;

pub use cohomology::PoincarePolynomial;
pub use decomposability::SymmetricPair;
pub use parabolic::{Family, Lambda, LevelPattern, ParabolicInvariants};
pub use root_system::{Half, Root, Signature};
pub use verifier::{BlockProfile, VerificationReport};
