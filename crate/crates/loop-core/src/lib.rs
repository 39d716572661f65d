//! Free and twisted loop functors on the category of fusion systems.
//!
//! `L_n F` is the formal union of the centralizer systems `C_F(a)` over the
//! `F`-classes of commuting `n`-tuples `a` in `S`; the twisted version
//! `L†_n F` uses `(Z/p^e)^n × C_F(a)`. Morphisms are matrices of virtual
//! bisets, built at group level and transported along `I_F` and `T_F`.

pub mod error;
pub mod loops;
pub mod matrix;
pub mod natural;
pub mod structure;
pub mod table;
pub mod twist;
pub mod wind;
pub mod zeta;

pub use error::LoopError;
pub use loops::{loop_of_biset, loop_row, torus_matrix, torus_times, ComponentSpace, GroupSpace, LoopFunctor, LoopSpace, Summands};
pub use matrix::{BisetMatrix, MatrixJson, Objects};
pub use natural::{
    check_naturality, extend_natural_transformation, morphism, representative_change, Endofunctor, IdentityFunctor,
};
pub use structure::{ev_matrix, iota_matrix, pev_matrix, sigma_matrix};
pub use table::{centralizer_fusion, tuple_label, ColumnClasses, GroupTable, RepPolicy, TupleClassTable};
pub use twist::Twist;
pub use wind::{ev, ev_hom, wind_data, WindData};
pub use zeta::{centralizer_group, extensions, zeta, zeta_to_rep, zeta_with, ZetaMap};
