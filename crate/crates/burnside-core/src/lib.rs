//! Virtual bisets between finite groups with exact rational coefficients.
//!
//! A transitive `(R, S)`-biset is written `[P, φ]_R^S` for `P ≤ R` and a
//! homomorphism `φ: P → S`; it is the set `(R × S)/~` with
//! `(rp, s) ~ (r, φ(p)s)` and has `|R|·|S|/|P|` points. Conjugation is
//! `c_g(x) = g⁻¹xg` and bisets compose diagrammatically, `X ⊙ Y = X ×_S Y`.

pub mod biset;
pub mod error;
pub mod explicit;
pub mod json;
pub mod key;
pub mod linalg;
pub mod sample;
pub mod scalar;

pub use biset::{all_pairs, compose_orbits, group_as_biset, orbit_mark, MarkVector, VirtualBiset};
pub use error::BisetError;
pub use json::{BisetJson, TermJson};
pub use key::{canonical_key, canonicalize, conjugate_pairs, least_conjugate, OrbitKey};
pub use scalar::{format_scalar, frac, int, is_p_local, is_p_unit, parse_scalar, PLocalScalar, Scalar};
