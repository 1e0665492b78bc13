//! Finite abelian groups: Smith normal form, presentations, subgroups,
//! homomorphism analysis, and index bookkeeping along exact diagrams.

mod diagram;
mod group;
mod hom;
mod matrix;

pub use diagram::{
    check_index_lemma, invert_automorphism, random_automorphism, random_group, random_injection,
    random_split_diagram, Diagram, IndexLemmaReport, ProductGroup,
};
pub use group::{
    group_from_relations, presentation_from_relations, subgroup_generated, Elem, FinAbGroup,
    Presentation, Subgroup,
};
pub use hom::{analyze_hom, GroupHom, HomAnalysis};
pub use matrix::{kernel_basis, snf, solve_linear, smith_normal_form, Mat, Snf};

/// Errors from group-theoretic computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    /// The presented quotient has a free part.
    #[error("quotient is infinite")]
    InfiniteQuotient,
    /// An element tuple does not match the group it was used with.
    #[error("element does not belong to the group")]
    InvalidElement,
    /// Generator images do not define a homomorphism, or endpoints mismatch.
    #[error("ill-formed homomorphism")]
    IllFormedHom,
    /// A row of a diagram fails to be short exact.
    #[error("sequence is not exact")]
    NotExact,
    /// A square of a diagram fails to commute.
    #[error("diagram does not commute")]
    NotCommutative,
}
