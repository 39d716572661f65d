//! Restriction of bifree `(H, S)`-bisets to a Sylow subgroup `T ≤ H`.

use std::sync::Arc;

use burnside_core::linalg::rank;
use burnside_core::{all_pairs, OrbitKey, Scalar, VirtualBiset};
use group_core::{Embedding, Group};

/// Mark vectors of the restricted basis orbits.
#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub basis: Vec<OrbitKey>,
    /// Canonical pairs `(Q ≤ T, ψ)` indexing the columns.
    pub pairs: Vec<OrbitKey>,
    pub marks: Vec<Vec<Scalar>>,
    pub rank: usize,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.rank == self.basis.len()
    }
}

/// Restricts each bifree orbit `[P, φ]_H^S` to `(T, S)` and records its
/// marks at the pairs `(Q ≤ T, ψ)`. Restriction is injective on bifree
/// virtual bisets exactly when these vectors are independent.
pub fn bifree_restriction_injectivity_check(h: &Arc<Group>, t: &Embedding, s: &Arc<Group>) -> InjectivityReport {
    let basis = all_pairs(h, s, true);
    let pairs = all_pairs(&t.sub, s, true);
    let marks: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|k| {
            let r = VirtualBiset::orbit(h, s, k.clone()).restrict_left_to(t);
            pairs.iter().map(|q| r.mark(&q.stab_subgroup(&t.sub), &q.hom(&t.sub, s))).collect()
        })
        .collect();
    let rank = rank(&marks);
    InjectivityReport { basis, pairs, marks, rank }
}
