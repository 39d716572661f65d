//! Random bisets for property tests.

use std::sync::Arc;

use group_core::{injective_homs, Group};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::biset::VirtualBiset;
use crate::scalar::{frac, int};

/// A random transitive bifree biset `[P, φ]_R^S`, or `None` when the chosen
/// `P` admits no injective map into `S` after a few attempts.
pub fn random_orbit<G: Rng>(rng: &mut G, r: &Arc<Group>, s: &Arc<Group>) -> Option<VirtualBiset> {
    let subs = r.all_subgroups().ok()?;
    for _ in 0..20 {
        let p = subs.choose(rng)?;
        let homs = injective_homs(r, p, s);
        if let Some(h) = homs.choose(rng) {
            return Some(VirtualBiset::transitive(r, s, p, h));
        }
    }
    None
}

/// Sum of up to `max_orbits` random orbits with multiplicities 1 or 2.
pub fn random_actual<G: Rng>(rng: &mut G, r: &Arc<Group>, s: &Arc<Group>, max_orbits: usize) -> VirtualBiset {
    let mut out = VirtualBiset::zero(r, s);
    let k = rng.gen_range(1..=max_orbits.max(1));
    for _ in 0..k {
        if let Some(o) = random_orbit(rng, r, s) {
            out.add_assign_scaled(&o, &int(rng.gen_range(1..=2)));
        }
    }
    out
}

/// Random combination with small coefficients whose denominators avoid `p`.
pub fn random_virtual<G: Rng>(rng: &mut G, r: &Arc<Group>, s: &Arc<Group>, max_orbits: usize, p: u64) -> VirtualBiset {
    let mut out = VirtualBiset::zero(r, s);
    let dens: Vec<i64> = (1..=7).filter(|d| d % p as i64 != 0).collect();
    let k = rng.gen_range(1..=max_orbits.max(1));
    for _ in 0..k {
        if let Some(o) = random_orbit(rng, r, s) {
            let d = *dens.choose(rng).expect("1 is always allowed");
            out.add_assign_scaled(&o, &frac(rng.gen_range(-3..=3), d));
        }
    }
    out
}
