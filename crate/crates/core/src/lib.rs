//! Exact computation of generalized Noether numbers for the finite groups
//! that contain a cyclic subgroup of index two.
//!
//! The toolkit has two halves that meet in the middle:
//!
//! * [`abelian`] and [`zerosum`] implement finite abelian groups and the
//!   combinatorics of zero-sum sequences over them (Davenport constants,
//!   zero-corners, contractions, sequence norms and similarity).
//! * [`groups`] and [`invariants`] build monomial representations for the
//!   index-two catalog (dihedral, semidihedral, dicyclic, modular families
//!   and their odd extensions) and compute `beta_k` of the invariant ring
//!   degree by degree over a pair of prime fields, requiring both primes to
//!   agree before a value is reported.
//!
//! [`cli`] wires everything into a batch command-line front end.

pub mod abelian;
pub mod cli;
pub mod groups;
pub mod invariants;
pub mod zerosum;

use thiserror::Error;

/// Error classes shared by every module; the CLI maps them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input specification (bad JSON, parameter out of range).
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    /// Precondition of an operation violated by otherwise well-formed data.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured search or enumeration cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// The two prime fields disagreed on a value that must be field-stable.
    #[error("two-prime consistency failure: {0}")]
    Consistency(String),
    /// The requested field does not contain the roots of unity needed.
    #[error("field error: {0}")]
    Field(String),
    /// Internal invariant broken; indicates a construction bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
