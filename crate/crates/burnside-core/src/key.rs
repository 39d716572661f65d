//! Canonical labels for transitive bisets `[P, φ]_R^S`.
//!
//! The orbit of the pair `(P, φ)` under `(r, s)·(P, φ) = (rPr⁻¹, p ↦ s⁻¹φ(r⁻¹pr)s)`
//! is labelled by its least element: first the least conjugate of `P`, then
//! the least tuple of generator images among all maps in the orbit.

use group_core::{canonical_generators, Elem, Group, Hom, Subgroup};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitKey {
    /// Sorted members of the canonical stabilizer `P ≤ R`.
    pub stab: Vec<Elem>,
    /// Images under `φ` of the canonical generators of `P`.
    pub phi: Vec<Elem>,
}

impl OrbitKey {
    pub fn order(&self) -> usize {
        self.stab.len()
    }

    pub fn stab_subgroup(&self, r: &Group) -> Subgroup {
        Subgroup::from_members(r.order(), self.stab.clone())
    }

    pub fn gens(&self, r: &Group) -> Vec<Elem> {
        canonical_generators(r, &self.stab)
    }

    /// The homomorphism `φ: P → S`.
    pub fn hom(&self, r: &Group, s: &Group) -> Hom {
        let p = self.stab_subgroup(r);
        Hom::from_gens(r, s, &p, &self.gens(r), &self.phi).expect("orbit key carries a homomorphism")
    }

    /// Point count `|R|·|S|/|P|` of the transitive biset.
    pub fn size(&self, r: &Group, s: &Group) -> usize {
        r.order() * s.order() / self.stab.len()
    }

    pub fn identity(g: &Group) -> OrbitKey {
        let all: Vec<Elem> = g.elements().collect();
        let gens = canonical_generators(g, &all);
        OrbitKey { stab: all, phi: gens }
    }
}

/// Least `S`-conjugate `s⁻¹ t s` of a tuple.
pub fn least_conjugate(s: &Group, t: &[Elem]) -> Vec<Elem> {
    let mut best = t.to_vec();
    let mut cur = vec![0; t.len()];
    for x in s.elements().skip(1) {
        let mut less = false;
        let mut decided = false;
        for (i, &a) in t.iter().enumerate() {
            let y = s.conj(x, a);
            cur[i] = y;
            if !decided && y != best[i] {
                decided = true;
                less = y < best[i];
                if !less {
                    break;
                }
            }
        }
        if less {
            best.copy_from_slice(&cur);
        }
    }
    best
}

/// Canonical key of `(P, f)`, where `stab` lists the members of `P ≤ R` in
/// increasing order and `f` is a homomorphism `P → S` (not necessarily
/// injective).
pub fn canonical_key(r: &Group, s: &Group, stab: &[Elem], f: impl Fn(Elem) -> Elem) -> OrbitKey {
    let info = r.conj_info(stab);
    let data = r.canon_data(&info.canonical);
    let r0 = info.conjugator;
    let mut best: Option<Vec<Elem>> = None;
    for alpha in &data.autos {
        let img: Vec<Elem> = alpha.iter().map(|&x| f(r.conj(r0, x))).collect();
        let m = least_conjugate(s, &img);
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    }
    OrbitKey { stab: info.canonical.clone(), phi: best.expect("the normalizer is nonempty") }
}

/// Canonical key of `(P, φ)` for a homomorphism given as a [`Hom`].
pub fn canonicalize(r: &Group, s: &Group, p: &Subgroup, phi: &Hom) -> OrbitKey {
    canonical_key(r, s, p.members(), |x| phi.apply(x))
}

/// Whether two pairs lie in the same `(R, S)`-orbit, by exhaustive search.
/// Independent of [`canonical_key`]; meant for tests.
pub fn conjugate_pairs(r: &Group, s: &Group, a: (&Subgroup, &Hom), b: (&Subgroup, &Hom)) -> bool {
    let (p, phi) = a;
    let (q, psi) = b;
    if p.order() != q.order() {
        return false;
    }
    r.elements().any(|x| {
        let moved = p.conjugate_by(r, x);
        moved == *q
            && s.elements().any(|y| {
                // (x, y)·(P, φ) sends x p x⁻¹ to y⁻¹ φ(p) y
                p.members().iter().all(|&m| {
                    let xm = r.mul(r.mul(x, m), r.inv(x));
                    psi.apply(xm) == s.conj(y, phi.apply(m))
                })
            })
    })
}
