//! Exact complex-multiplication endomorphisms of elliptic curves, their
//! Lattès maps on ℙ¹, and pre-periodicity of the diagonal in `E × E` and
//! `ℙ¹ × ℙ¹` under `[ω] × [ω']`.

pub mod dynamics;
pub mod ecurve;
pub mod endo;
pub mod error;
pub mod fixtures;
pub mod kfield;
pub mod qring;
pub mod ratfunc;

pub use dynamics::{
    decide_diagonal, projection_check, verify_pair_ring, verify_pair_symbolic, Consistency, Level, LevelVerdict,
    Outcome, PreperiodicPair, SymbolicVerifier, Verdict,
};
pub use ecurve::{orbit_detect, Curve, Orbit, Point};
pub use endo::{
    cm_generator, endo_add, endo_compose, endo_eq, endo_from_quadint, endo_iterate, lattes, Endo, LattesMap,
};
pub use error::{Error, Result};
pub use kfield::KNum;
pub use qring::{QuadInt, RingId};
pub use ratfunc::{DegreeBudget, P1Point, Poly, RatFunc};
