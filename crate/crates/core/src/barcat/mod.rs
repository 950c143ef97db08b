//! Finite categories, nerves and cyclic bar constructions.

mod bar;
pub(crate) mod category;

pub use bar::{
    check_diagonal_on_tuples, cyclic_bar, diagonal_restriction, diagonal_restriction_of, frobenius_bar, frobenius_bar_of, is_groupoid_like, nerve, project_to_nerve,
    DiagonalRestriction, TupleComplex,
};
pub use category::{FinCategory, Functor, LawViolation, Monoid, MorphismInfo, Subcategory};
