//! Explicit groups and subgroup families: Heisenberg groups with twisted
//! horizontal subgroups, affine groups with subspace subgroups, and
//! semidirect products.

pub mod affine;
pub mod heisenberg;
pub mod semidirect;

pub use affine::{affine_group, subspace_subgroup, AffineGroup};
pub use heisenberg::{
    all_twist_maps, heisenberg_group, horizontal_subgroup, twist_representatives,
    twisted_horizontal, HeisenbergGroup, TwistMap,
};
pub use semidirect::{semidirect_product, SemidirectProduct};
