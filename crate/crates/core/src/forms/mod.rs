//! Binary quadratic forms and form class groups.
//!
//! Class groups are computed by enumerating reduced forms outright, so every
//! class number here is an exact count rather than an analytic estimate. For
//! positive discriminants the enumeration yields the narrow group; the
//! ordinary group is recovered as its quotient by the class of the principal
//! form with the sign moved onto the leading coefficient. The dictionary
//! submodule ties form classes to the ideals of [`crate::quadfield`].

mod classgroup;
mod compose;
mod dict;
mod minkowski;
mod qform;

pub use classgroup::{class_group, reduced_forms, ClassGroup};
pub use compose::compose;
pub use dict::{class_of_ideal, form_of_ideal, ideal_of_form};
pub use minkowski::{class_counts_by_enumeration, ideals_of_norm, ideals_up_to, minkowski_bound};
pub use qform::QForm;

use crate::quadfield::FieldError;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error("form ({0}, {1}, {2}) has a square discriminant")]
    Degenerate(i64, i64, i64),
    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(i64, i64, i64),
    #[error("form ({0}, {1}, {2}) is negative definite")]
    NegativeDefinite(i64, i64, i64),
    #[error("discriminant of ({0}, {1}, {2}) does not fit in 64 bits")]
    DiscOverflow(i64, i64, i64),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscMismatch(i64, i64),
    #[error("ideal does not fit in form coordinates: {0}")]
    IdealTooLarge(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
