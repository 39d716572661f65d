//! Finite groups given by multiplication tables, with the subgroup, conjugacy
//! and homomorphism machinery needed for biset computations.

pub mod cache;
pub mod catalog;
pub mod error;
pub mod group;
pub mod hom;
pub mod io;
pub mod perm;
pub mod product;
pub mod subgroup;
pub mod tuples;

pub use error::GroupError;
pub use group::{intern, p_part, Elem, Group, NONE};
pub use hom::{all_homs, injective_homs, Hom};
pub use product::{cyclic, cyclic_pe, direct_product, pair, power, power_coords, power_index, split};
pub use subgroup::{canonical_generators, Embedding, Subgroup, SubgroupClass};
pub use tuples::{canonical_tuple, commuting_tuples, is_commuting};
