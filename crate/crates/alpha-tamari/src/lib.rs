//! Parabolic Tamari lattices through four order-isomorphic incarnations:
//! (alpha,231)-avoiding permutations under the left weak order, alpha-codes,
//! reduced vectors and bracket vectors under componentwise order, together
//! with the bijections between them and a brute-force verification harness.
//!
//! The pieces fit together as follows. A composition `alpha` of `n` splits
//! positions into regions ([`Composition`]); the alpha-permutations increase
//! inside each region and carry the left weak order ([`perm`]). Encoding a
//! permutation counts, per position, the run of smaller entries after its
//! region ([`code::encode`]); the image is cut out by three conditions and
//! the avoiders decode back uniquely ([`code::decode`]). Region-reversal
//! translates codes into reduced vectors, and reinserting fixed positions
//! turns those into bracket vectors ([`nu`]). The [`poset`] module
//! materializes any of the five orders with meet/join and DOT/JSON export,
//! and [`verify`] re-derives every claimed property by exhaustive search.

mod composition;
mod dfs;
mod error;

pub mod code;
pub mod nu;
pub mod perm;
pub mod poset;
pub mod verify;

pub use composition::{compositions_of, Composition};
pub use error::{
    report_json, BracketViolation, CodeViolation, Error, ReducedViolation, Result, Violation,
};

/// Default bound on `n` for operations that materialize whole element sets.
pub const DEFAULT_MAX_N: usize = 12;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV_VAR: &str = "ALPHA_TAMARI_MAX_N";

/// The effective enumeration cap: the override from the environment when set
/// and parseable, the default otherwise.
pub fn enumeration_cap() -> usize {
    std::env::var(MAX_N_ENV_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}
