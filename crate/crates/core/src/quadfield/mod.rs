//! Quadratic fields: discriminants, integers, ideals, prime splitting,
//! factorization, and principality.
//!
//! All ideal arithmetic is exact. Ideals live in a canonical Hermite form,
//! so equality is representation equality, and principality comes with an
//! explicit canonical generator rather than a bare yes/no.

mod disc;
mod elem;
mod ideal;
mod split;
mod walk;

pub use disc::{fundamental_discriminants, FundamentalDiscriminant};
pub use elem::{QuadInt, QuadNum};
pub use ideal::OIdeal;
pub use split::{
    factor_ideal, invariant_compose, invariant_decompose, prime_splitting, solve_norm_one_ideal,
    InvariantParts, Splitting, DEFAULT_FACTOR_BOUND,
};
pub use walk::{fundamental_unit, is_principal, is_principal_with_generator, torsion_units};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not a rational prime")]
    NotPrime(i64),
    #[error("mixing discriminants {0} and {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("bad element: {0}")]
    BadElement(String),
    #[error("bad ideal: {0}")]
    BadIdeal(String),
    #[error("refusing to factor {0}: exceeds the configured bound {1}")]
    FactorizationTooLarge(BigInt, u64),
    #[error("element norm is not a unit: {0}")]
    NormNotUnit(String),
    #[error("ideal is not invariant under conjugation: {0}")]
    NotInvariant(String),
}
