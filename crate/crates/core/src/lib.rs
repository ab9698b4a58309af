//! Exact-arithmetic lattice-ordered groups and rings with truncations.
//!
//! The crate makes a small corner of ordered algebra executable:
//!
//! * concrete divisible abelian lattice-ordered group and ring models over
//!   exact rationals (finite grids of function values, finitely supported
//!   sequences, the lexicographic plane, scalars, and a zero-multiplication
//!   ring);
//! * truncations on their positive cones, with an axiom checker that decides
//!   cap truncations exactly and samples custom ones;
//! * the unitization `G ⊕ ℚ` induced by a truncation — positivity, lattice
//!   operations, absolute value, the adjoined-unit multiplication, and the
//!   scaled-cone variant;
//! * classification of when that unitization is again a lattice-ordered
//!   ring (reduced f-ring with truncation range `{x : x² ≤ c·x}`), with
//!   replayable witnesses on failure;
//! * multiplier (orthomorphism) representation for the Archimedean function
//!   models: the embedding `x ↦ (y ↦ x·y)`, Stone checks, the induced
//!   truncation, truncation-preserving homomorphisms, and the unital
//!   extension of the embedding to the unitization.
//!
//! Everything is exact rational arithmetic — no floating point — and all
//! sampled checks are seeded and deterministic.

pub mod classify;
pub mod lattice;
pub mod models;
pub mod orthorep;
pub mod rat;
pub mod selfcheck;
pub mod truncation;
pub mod unitization;
pub mod verdict;

pub use lattice::{
    LatticeGroup, LatticeRing, ModelError, ModelFamily, Registered, RingFacts, SampleCfg, Sampler,
    StructuralFacts,
};
pub use rat::Rat;
pub use truncation::{check_axioms, truncations_equal, BaseMap, CheckParams, Truncation};
pub use unitization::{Unitization, Unitized};
pub use verdict::{Evidence, NamedVerdict, Status, Verdict};
