//! Fusion systems realized by finite groups: hom-sets, conjugacy of
//! subgroups and tuples, fusion preserving maps, and the characteristic
//! idempotent `ω_F` in the `p`-local double Burnside ring of `S`.

pub mod error;
pub mod idempotent;
pub mod preserving;
pub mod system;

pub use error::FusionError;
pub use idempotent::{
    characteristic_idempotent, check_characteristic, class_pairs, stabilize, CharacteristicIdempotent,
    CharacteristicReport, TieOrder,
};
pub use preserving::{
    compose_fusion_basis, is_fusion_preserving, is_stable, preserving_by_idempotents, preserving_direct,
    project_to_fusion, BasisPair,
};
pub use system::{FusionSystem, Fusoid};
