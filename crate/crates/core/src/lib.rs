//! Limit linear series on curves of compact type made of two general pointed
//! curves joined by a chain of elliptic curves whose node differences are
//! torsion of a fixed order.
//!
//! The crate is split by concern:
//!
//! * [`bn`] - Brill-Noether numbers, vanishing sequences and the
//!   Eisenbud-Harris criterion for a general one-pointed curve.
//! * [`elliptic`] - combinatorial model of a `g^r_d` on a two-pointed
//!   elliptic curve with torsion node difference.
//! * [`chain`] - chain shapes, witnesses, and the exhaustive search deciding
//!   whether a limit `g^r_d` exists.
//! * [`loci`] - closed-form torsion thresholds and existence ranges, locus
//!   enumeration and relation reports.
//! * [`oracle`] - explicit elliptic curves over prime fields and exact
//!   Riemann-Roch computations used to cross-check [`elliptic`].

pub mod bn;
pub mod chain;
pub mod elliptic;
pub mod loci;
pub mod oracle;

pub use bn::{BnError, GrdParams, VanishingSeq};
pub use chain::{
    ChainError, ChainSpec, Component, Criterion, LimitWitness, Mode, SearchOptions, Verdict,
    WitnessStats,
};
pub use elliptic::{EllipticAspect, NuProfile};
pub use loci::{LociError, LocusId, TcbeFamily};
