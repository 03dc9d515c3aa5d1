//! Exact arithmetic for suborbital graphs of the two-parameter congruence
//! subgroups Γ₀(L,M) of the modular group acting on Q̂ = Q ∪ {∞}.
//!
//! The crate is `no_std` and needs only `alloc`. It is organised bottom-up:
//!
//! - [`rational`]: reduced fractions on Q̂, gcd, modular inverses,
//!   factorization and the Dedekind psi function.
//! - [`group`]: unimodular matrices, the Möbius action, congruence-subgroup
//!   membership and the block relation `v ≈_N w`.
//! - [`suborbital`]: the graphs `F_{u,L}` (rooted at ∞) and `F_{M,u}`
//!   (rooted at 0), their edge predicates, enumeration, pairing and
//!   transitivity witnesses.
//! - [`oracle`]: brute-force ground truth by bounded enumeration of group
//!   elements, used to cross-check everything above.

#![no_std]

extern crate alloc;

mod error;
pub mod group;
pub mod oracle;
pub mod rational;
pub mod suborbital;

pub use error::{Error, Result};
pub use group::{Cusp, SubgroupSpec, UnimodularMatrix};
pub use rational::{Factorization, ProjectiveRational};
pub use suborbital::{DirectedEdge, Family, GraphSpec, Sign, SuborbitalGraph};
