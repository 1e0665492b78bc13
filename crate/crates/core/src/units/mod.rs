//! Unit groups, Hilbert symbols, and the norm indices of genus theory.
//!
//! Three indices of subgroups of {1, -1} control how many ambiguous classes
//! a quadratic field has: whether -1 is a norm from the field at all,
//! whether it is the norm of a unit, and how the norm-one units sit over
//! the units of the shape u / conjugate(u). Everything here is exact, and
//! the symbol formulas are cross-checked by a solvability search that
//! shares none of them.

mod hilbert;
mod indices;

pub use crate::quadfield::{fundamental_unit, torsion_units};
pub use hilbert::{hilbert_symbol, hilbert_symbol_bruteforce, Place};
pub use indices::{
    minus_one_global_norm, norm_indices, unit_cohomology_index, unit_data, verify_unit_pgt,
    UnitData, UnitPgtReport,
};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("place {0} is neither a prime nor infinity")]
    InvalidPlace(i64),
    #[error("hilbert symbol of ({0}, {1}) needs both arguments nonzero")]
    ZeroArgument(i64, i64),
}
