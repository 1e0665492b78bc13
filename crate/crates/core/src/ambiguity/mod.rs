//! Ambiguous and strongly ambiguous class groups, and the per-field
//! verification that their orders obey the unit-index predictions.
//!
//! Conjugation acts on the class group of a quadratic field. The classes it
//! fixes form the ambiguous subgroup; the classes of conjugation-invariant
//! ideals form the strongly ambiguous subgroup. Both orders are governed by
//! nothing more than the count of ramified places and two norm indices of
//! {1, -1}, and the gap between the two subgroups is measured by a single
//! sign homomorphism. This module computes every side of those statements
//! by brute force and reports the comparisons.

mod nu;
mod subgroups;
mod verify;

pub use nu::{nu_codomain, nu_coset, nu_map, nu_of_ideal};
pub use subgroups::{
    ambiguous_subgroup, sigma_class, strongly_ambiguous_by_search, strongly_ambiguous_subgroup,
};
pub use verify::{
    ambiguity_data, invariant_principal_index, predicted_counts, verify_discriminant,
    AmbiguityData, CheckSet, VerificationReport, VerifyConfig,
};

use crate::abgroup::GroupError;
use crate::forms::FormError;
use crate::quadfield::FieldError;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum AmbiguityError {
    #[error("the class of {0} is not fixed by conjugation")]
    NotAmbiguous(String),
    #[error("2^({0} - 1) ambiguous classes cannot split into index {1}")]
    NonIntegralPrediction(u32, u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
