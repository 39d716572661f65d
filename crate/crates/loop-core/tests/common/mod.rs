#![allow(dead_code)]

use std::sync::Arc;

use burnside_core::sample::random_virtual;
use burnside_core::VirtualBiset;
use fusion_core::{project_to_fusion, FusionSystem};
use group_core::catalog::lookup;
use rand::Rng;

pub fn realized(name: &str, p: u64) -> Arc<FusionSystem> {
    FusionSystem::realized(&lookup(name).unwrap(), p).unwrap()
}

pub fn trivial(name: &str) -> Arc<FusionSystem> {
    FusionSystem::trivial(&lookup(name).unwrap(), 2).unwrap()
}

/// The systems at `p = 2` used throughout.
pub fn corpus_p2() -> Vec<Arc<FusionSystem>> {
    let mut v: Vec<_> = ["C4", "V4", "D8", "Q8"].iter().map(|s| trivial(s)).collect();
    v.extend(["A4", "S4", "SL(2,3)"].iter().map(|g| realized(g, 2)));
    v
}

pub fn corpus_p3() -> Vec<Arc<FusionSystem>> {
    ["S3", "A4"].iter().map(|g| realized(g, 3)).collect()
}

/// A random stable element of `A_p(E, F)`.
pub fn random_stable<R: Rng>(rng: &mut R, e: &Arc<FusionSystem>, f: &Arc<FusionSystem>, orbits: usize) -> VirtualBiset {
    let x = random_virtual(rng, e.s(), f.s(), orbits, e.prime());
    project_to_fusion(&x, e, f).unwrap()
}
