//! The index category, Grothendieck constructions, comma categories, and
//! the category-level checks behind the homotopy-limit comparison.

mod checks;
mod grothendieck;
mod index;
mod kan;
mod theta;

pub use checks::{check_product_functor, Finding, ProductFunctor};
pub use grothendieck::{
    collapsing_control, comma_over, constant_terminal, group_action_instances, grothendieck_construct, index_dictionary,
    induced_on_comma,
    naturals_on_divisibility, power_action, semidirect, semidirect_monoid, truncated_naturals, CatValuedFunctor, Comma,
    Grothendieck,
};
pub use index::{
    build_index_category, check_relations, factor_unique, twisted_index_category, IndexCategory, IndexMorphism,
    RelationReport,
};
pub use kan::{corrupt_composition, verify_kan_scaffold, KanReport};
pub use theta::{check_lemma_hypothesis, check_theta_iso, ThetaReport};
