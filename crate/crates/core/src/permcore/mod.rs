//! Permutation groups: construction, order, membership, transversals,
//! cores and subgroup classes.

mod catalog;
mod classes;
mod group;
mod perm;
mod subgroup;

pub use catalog::{alternating, cyclic, cyclic_product, dihedral, klein_four, symmetric, GroupKind};
pub use classes::subgroup_classes;
pub use group::{CayleyTable, ElementTable, PermGroup};
pub use perm::{Permutation, MAX_POINTS};
pub use subgroup::{
    are_conjugate_subgroups, conjugating_element, coset_position, core, elements_with_words, right_transversal,
    SubgroupHandle, Transversal,
};
