//! Enumerated finite groups: closure, classes, subgroups, cosets and exact
//! character tables.

pub mod carrier;
pub mod character;
pub mod classes;
pub mod concrete;
pub mod subgroup;

pub use carrier::{
    AffineCarrier, CyclicCarrier, FieldTables, GroupCarrier, HeisenbergCarrier, MatrixCarrier,
    PermutationCarrier,
};
pub use character::{character_table, fixed_space_dim, CharacterTable};
pub use classes::{conjugacy_classes, exponent, ConjugacyClassPartition};
pub use concrete::{element_order, generate_group, ConcreteGroup, GroupJson};
pub use subgroup::{
    all_subgroups, are_subgroups_conjugate, coset_table, normal_core, normalizer, subgroup_from,
    CosetTable, Subgroup, SubgroupJson,
};
