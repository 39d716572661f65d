//! The `p`-completion functor from bisets between finite groups to stable
//! bisets between their fusion systems, and its compatibility with the
//! twisted loop functors.

pub mod commutation;
pub mod complete;
pub mod error;
pub mod injectivity;
pub mod inverse;

pub use commutation::{group_loop_at_p, shared_table, verify_commutation, CommutationReport};
pub use complete::{p_complete, p_complete_with, Completion};
pub use error::{CompletionError, Result};
pub use injectivity::{bifree_restriction_injectivity_check, InjectivityReport};
pub use inverse::{fusion_algebra_span, invert_in_fusion_algebra, restrict_to_sylows, InvertibleFusionBiset};
