//! Class groups of quadratic fields and the genus-theory identities that
//! govern their ambiguous parts.
//!
//! For a fundamental discriminant D, the field Q(sqrt(D)) carries a class
//! group acted on by the nontrivial Galois automorphism. The classes fixed
//! by that action (the ambiguous classes) and the classes of invariant
//! ideals (the strongly ambiguous classes) have orders predicted exactly by
//! unit-norm indices and the count of ramified places. This crate computes
//! both sides of those predictions from scratch: binary quadratic forms for
//! the class groups, continued fractions for the units, Hilbert symbols for
//! the norm obstructions, and Smith normal forms for all the group
//! bookkeeping.

pub mod abgroup;
pub mod ambiguity;
pub mod arith;
pub mod forms;
pub mod quadfield;
pub mod units;

pub use abgroup::{FinAbGroup, GroupError};
pub use ambiguity::{
    verify_discriminant, AmbiguityError, CheckSet, VerificationReport, VerifyConfig,
};
pub use forms::{ClassGroup, FormError, QForm};
pub use quadfield::{FieldError, FundamentalDiscriminant, OIdeal, QuadInt, QuadNum};
pub use units::{Place, UnitData, UnitError};
