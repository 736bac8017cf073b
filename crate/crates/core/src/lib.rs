//! Exact computation with bounded affine permutations: positroid Catalan
//! numbers and R-polynomials by recurrence, inversion multisets computed two
//! independent ways, Dyck paths avoiding convex sets, and the synthesis of
//! repetition-free permutations from concave profiles.
//!
//! Windows are 0-based: a permutation of period `n` is stored as
//! `f(0), ..., f(n-1)`.
//!
//! ```
//! use posicat::{BoundedAffinePerm, Engine};
//!
//! let f = BoundedAffinePerm::translation(3, 7).unwrap();
//! let mut engine = Engine::new();
//! assert_eq!(engine.compute_c(&f).unwrap(), 5u32.into());
//! ```

pub mod affine;
pub mod cli;
pub mod dyck;
pub mod engine;
pub mod fset;
pub mod harness;
pub mod paths;
pub mod poly;

pub use affine::{
    AffinePerm, BoundedAffinePerm, BoundednessClass, CyclePerm, GammaPair, Indexing, Inversion,
    PermError,
};
pub use dyck::{
    count_avoiding_paths, enumerate_avoiding_paths, profile_to_perm, synthesize,
    synthesize_perm, synthesize_profile, ConcaveProfile, DyckError, DyckPath,
};
pub use engine::{Engine, EngineError, KeyMode, TraceEvent};
pub use fset::{inversion_multiset, is_repetition_free, Frame, LatticeMultiset, SetError};
pub use harness::VerificationReport;
pub use paths::{LatticeVec, PathError, RatPath};
pub use poly::{IntPoly, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Dyck(#[from] DyckError),
}
