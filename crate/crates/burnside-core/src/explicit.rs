//! Bisets as explicit finite sets with action tables. Slow, but independent
//! of the double coset formulas; used as a test oracle.

use std::sync::Arc;

use group_core::{Elem, Group, Hom, Subgroup};
use num_traits::ToPrimitive;

use crate::biset::VirtualBiset;
use crate::key::conjugate_pairs;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct ExplicitBiset {
    pub left: Arc<Group>,
    pub right: Arc<Group>,
    pub points: usize,
    /// `left_act[r·points + x] = r·x`
    left_act: Vec<u32>,
    /// `right_act[x·|S| + s] = x·s`
    right_act: Vec<u32>,
}

impl ExplicitBiset {
    pub fn empty(left: &Arc<Group>, right: &Arc<Group>) -> ExplicitBiset {
        ExplicitBiset { left: left.clone(), right: right.clone(), points: 0, left_act: vec![], right_act: vec![] }
    }

    /// `(R × S)/~` with `(rp, s) ~ (r, φ(p)s)`.
    pub fn transitive(left: &Arc<Group>, right: &Arc<Group>, p: &Subgroup, phi: &Hom) -> ExplicitBiset {
        let (nr, ns) = (left.order(), right.order());
        let mut id = vec![u32::MAX; nr * ns];
        let mut reps: Vec<(Elem, Elem)> = Vec::new();
        for r in left.elements() {
            for s in right.elements() {
                if id[r as usize * ns + s as usize] != u32::MAX {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((r, s));
                // (r, s) ~ (rp, φ(p)⁻¹ s)
                for &m in p.members() {
                    let rp = left.mul(r, m);
                    let s2 = right.mul(right.inv(phi.apply(m)), s);
                    id[rp as usize * ns + s2 as usize] = k;
                }
            }
        }
        let n = reps.len();
        let mut left_act = vec![0; nr * n];
        let mut right_act = vec![0; n * ns];
        for (k, &(r, s)) in reps.iter().enumerate() {
            for g in left.elements() {
                left_act[g as usize * n + k] = id[left.mul(g, r) as usize * ns + s as usize];
            }
            for t in right.elements() {
                right_act[k * ns + t as usize] = id[r as usize * ns + right.mul(s, t) as usize];
            }
        }
        ExplicitBiset { left: left.clone(), right: right.clone(), points: n, left_act, right_act }
    }

    pub fn disjoint_union(&self, other: &ExplicitBiset) -> ExplicitBiset {
        assert!(self.left == other.left && self.right == other.right);
        let (n1, n2) = (self.points, other.points);
        let n = n1 + n2;
        let (nr, ns) = (self.left.order(), self.right.order());
        let mut left_act = vec![0; nr * n];
        let mut right_act = vec![0; n * ns];
        for g in 0..nr {
            for x in 0..n1 {
                left_act[g * n + x] = self.left_act[g * n1 + x];
            }
            for x in 0..n2 {
                left_act[g * n + n1 + x] = other.left_act[g * n2 + x] + n1 as u32;
            }
        }
        for t in 0..ns {
            for x in 0..n1 {
                right_act[x * ns + t] = self.right_act[x * ns + t];
            }
            for x in 0..n2 {
                right_act[(n1 + x) * ns + t] = other.right_act[x * ns + t] + n1 as u32;
            }
        }
        ExplicitBiset { left: self.left.clone(), right: self.right.clone(), points: n, left_act, right_act }
    }

    /// Realizes a biset with non-negative integer coefficients.
    pub fn from_biset(x: &VirtualBiset) -> Option<ExplicitBiset> {
        let mut out = ExplicitBiset::empty(x.left(), x.right());
        for (k, c) in x.terms() {
            if !c.is_integer() {
                return None;
            }
            let m = c.to_integer().to_i64()?;
            if m < 0 {
                return None;
            }
            let orbit = ExplicitBiset::transitive(x.left(), x.right(), &k.stab_subgroup(x.left()), &k.hom(x.left(), x.right()));
            for _ in 0..m {
                out = out.disjoint_union(&orbit);
            }
        }
        Some(out)
    }

    #[inline]
    pub fn act_left(&self, r: Elem, x: u32) -> u32 {
        self.left_act[r as usize * self.points + x as usize]
    }

    #[inline]
    pub fn act_right(&self, x: u32, s: Elem) -> u32 {
        self.right_act[x as usize * self.right.order() + s as usize]
    }

    /// `X ×_S Y`: pairs `(x, y)` modulo `(xs, y) ~ (x, sy)`.
    pub fn compose(&self, other: &ExplicitBiset) -> ExplicitBiset {
        assert!(self.right == other.left);
        let s = &self.right;
        let (nx, ny) = (self.points, other.points);
        let mut id = vec![u32::MAX; nx * ny];
        let mut reps: Vec<(u32, u32)> = Vec::new();
        for x in 0..nx as u32 {
            for y in 0..ny as u32 {
                if id[x as usize * ny + y as usize] != u32::MAX {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((x, y));
                for g in s.elements() {
                    let xg = self.act_right(x, g);
                    let gy = other.act_left(s.inv(g), y);
                    id[xg as usize * ny + gy as usize] = k;
                }
            }
        }
        let n = reps.len();
        let (nr, nt) = (self.left.order(), other.right.order());
        let mut left_act = vec![0; nr * n];
        let mut right_act = vec![0; n * nt];
        for (k, &(x, y)) in reps.iter().enumerate() {
            for r in self.left.elements() {
                left_act[r as usize * n + k] = id[self.act_left(r, x) as usize * ny + y as usize];
            }
            for t in other.right.elements() {
                right_act[k * nt + t as usize] = id[x as usize * ny + other.act_right(y, t) as usize];
            }
        }
        ExplicitBiset { left: self.left.clone(), right: other.right.clone(), points: n, left_act, right_act }
    }

    /// One stabilizer pair per orbit, read off at the first point of the
    /// orbit: `Q = {r : rz ∈ zS}` and `ψ(r)` the `s` with `rz = zs`.
    /// Requires a right-free biset.
    pub fn orbit_pairs(&self) -> Vec<(Subgroup, Hom)> {
        let (r, s) = (&self.left, &self.right);
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        let mut which = vec![u32::MAX; self.points];
        for z in 0..self.points as u32 {
            if seen[z as usize] {
                continue;
            }
            for g in r.elements() {
                for t in s.elements() {
                    seen[self.act_right(self.act_left(g, z), t) as usize] = true;
                }
            }
            let mut touched = Vec::new();
            for t in s.elements() {
                let zt = self.act_right(z, t);
                assert_eq!(which[zt as usize], u32::MAX, "biset is not right-free");
                which[zt as usize] = t;
                touched.push(zt);
            }
            let q: Vec<Elem> = r.elements().filter(|&g| which[self.act_left(g, z) as usize] != u32::MAX).collect();
            let q = Subgroup::from_members(r.order(), q);
            let psi = Hom::from_fn(r.order(), &q, |g| which[self.act_left(g, z) as usize]);
            out.push((q, psi));
            for zt in touched {
                which[zt as usize] = u32::MAX;
            }
        }
        out
    }

    /// `#{x : q·x = x·ψ(q) for all q ∈ Q}`
    pub fn fixed_points(&self, q: &Subgroup, psi: &Hom) -> usize {
        let gens = q.gens(&self.left);
        (0..self.points as u32)
            .filter(|&x| gens.iter().all(|&g| self.act_left(g, x) == self.act_right(x, psi.apply(g))))
            .count()
    }

    pub fn is_right_free(&self) -> bool {
        (0..self.points as u32).all(|x| self.right.elements().skip(1).all(|s| self.act_right(x, s) != x))
    }

    pub fn is_left_free(&self) -> bool {
        (0..self.points as u32).all(|x| self.left.elements().skip(1).all(|r| self.act_left(r, x) != x))
    }

    /// Whether the orbits of this set match the terms of an actual biset,
    /// comparing stabilizer pairs by exhaustive conjugacy search.
    pub fn agrees_with(&self, v: &VirtualBiset) -> bool {
        if self.left != *v.left() || self.right != *v.right() {
            return false;
        }
        let raw = self.orbit_pairs();
        let mut used = vec![false; raw.len()];
        for (k, c) in v.terms() {
            let Some(m) = c.to_integer().to_usize().filter(|_| c.is_integer()) else { return false };
            let p = k.stab_subgroup(&self.left);
            let phi = k.hom(&self.left, &self.right);
            let mut found = 0;
            for (i, (q, psi)) in raw.iter().enumerate() {
                if !used[i] && conjugate_pairs(&self.left, &self.right, (&p, &phi), (q, psi)) {
                    used[i] = true;
                    found += 1;
                }
            }
            if found != m {
                return false;
            }
        }
        used.iter().all(|&u| u)
    }

    /// `[H, φ]_R^S ⊙ X ⊙ [K, ψ]_{S'}^T` by the double coset formula
    /// `Σ_{x ∈ φH\X/K} [φ⁻¹(S_x ∩ c_x⁻¹K), ψ∘c_x∘φ]`, where
    /// `S_x = {s : sx ∈ xS'}` and `sx = x·c_x(s)`. Requires `X` right-free.
    pub fn sandwich(&self, r: &Arc<Group>, h: &Subgroup, phi: &Hom, t: &Arc<Group>, k: &Subgroup, psi: &Hom) -> VirtualBiset {
        let mut out = VirtualBiset::zero(r, t);
        let img: Vec<Elem> = {
            let mut v: Vec<Elem> = h.members().iter().map(|&x| phi.apply(x)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut seen = vec![false; self.points];
        let mut which = vec![group_core::NONE; self.points];
        let mut image = vec![group_core::NONE; r.order()];
        for x in 0..self.points as u32 {
            if seen[x as usize] {
                continue;
            }
            for &a in &img {
                let ax = self.act_left(a, x);
                for &b in k.members() {
                    seen[self.act_right(ax, b) as usize] = true;
                }
            }
            for s in self.right.elements() {
                which[self.act_right(x, s) as usize] = s;
            }
            let mut stab = Vec::new();
            for &m in h.members() {
                let c = which[self.act_left(phi.apply(m), x) as usize];
                if c != group_core::NONE && k.contains(c) {
                    stab.push(m);
                    image[m as usize] = psi.apply(c);
                }
            }
            out.add_pair(&stab, |m| image[m as usize], Scalar::from_integer(1.into()));
            for s in self.right.elements() {
                which[self.act_right(x, s) as usize] = group_core::NONE;
            }
        }
        out
    }
}
