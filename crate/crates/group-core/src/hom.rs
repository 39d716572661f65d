use crate::group::{Elem, Group, NONE};
use crate::subgroup::Subgroup;

/// A homomorphism from a subgroup of one group into another group, stored as
/// a full lookup table over the source group (`NONE` outside the domain).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    domain: Subgroup,
    img: Vec<Elem>,
}

impl Hom {
    /// Extends an assignment on generators. Returns `None` when the assignment
    /// does not define a homomorphism.
    pub fn from_gens(src: &Group, dst: &Group, domain: &Subgroup, gens: &[Elem], images: &[Elem]) -> Option<Hom> {
        debug_assert_eq!(gens.len(), images.len());
        let mut img = vec![NONE; src.order()];
        img[0] = 0;
        let mut queue = vec![0 as Elem];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let fx = img[x as usize];
            for (&g, &h) in gens.iter().zip(images) {
                let y = src.mul(x, g);
                let fy = dst.mul(fx, h);
                match img[y as usize] {
                    NONE => {
                        img[y as usize] = fy;
                        queue.push(y);
                    }
                    v if v != fy => return None,
                    _ => {}
                }
            }
            i += 1;
        }
        if queue.len() != domain.order() {
            return None;
        }
        Some(Hom { domain: domain.clone(), img })
    }

    /// Builds a homomorphism from a function known to be multiplicative.
    pub fn from_fn(src_order: usize, domain: &Subgroup, f: impl Fn(Elem) -> Elem) -> Hom {
        let mut img = vec![NONE; src_order];
        for &x in domain.members() {
            img[x as usize] = f(x);
        }
        Hom { domain: domain.clone(), img }
    }

    /// The inclusion of `domain` (same element indices on both sides).
    pub fn inclusion(src_order: usize, domain: &Subgroup) -> Hom {
        Hom::from_fn(src_order, domain, |x| x)
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        let y = self.img[x as usize];
        debug_assert!(y != NONE, "element {x} outside the domain");
        y
    }

    /// Value at `x`, or `None` outside the domain.
    pub fn get(&self, x: Elem) -> Option<Elem> {
        self.img.get(x as usize).copied().filter(|&y| y != NONE)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn src_order(&self) -> usize {
        self.img.len()
    }

    pub fn images_of(&self, xs: &[Elem]) -> Vec<Elem> {
        xs.iter().map(|&x| self.apply(x)).collect()
    }

    pub fn image(&self, dst_order: usize) -> Subgroup {
        Subgroup::from_members(dst_order, self.domain.members().iter().map(|&x| self.apply(x)).collect())
    }

    pub fn is_injective(&self) -> bool {
        self.domain.members().iter().filter(|&&x| self.apply(x) == 0).count() == 1
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Hom) -> Hom {
        let mut img = vec![NONE; self.img.len()];
        for &x in self.domain.members() {
            img[x as usize] = other.apply(self.apply(x));
        }
        Hom { domain: self.domain.clone(), img }
    }

    pub fn restrict(&self, sub: &Subgroup) -> Hom {
        debug_assert!(sub.is_subgroup_of(&self.domain));
        let mut img = vec![NONE; self.img.len()];
        for &x in sub.members() {
            img[x as usize] = self.apply(x);
        }
        Hom { domain: sub.clone(), img }
    }

    /// Checks `f(ab) = f(a) f(b)` on all pairs of the domain.
    pub fn is_multiplicative(&self, src: &Group, dst: &Group) -> bool {
        let m = self.domain.members();
        m.iter().all(|&a| m.iter().all(|&b| self.apply(src.mul(a, b)) == dst.mul(self.apply(a), self.apply(b))))
    }
}

impl std::fmt::Debug for Hom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(Elem, Elem)> = self.domain.members().iter().map(|&x| (x, self.apply(x))).collect();
        write!(f, "Hom{pairs:?}")
    }
}

fn homs_with(src: &Group, domain: &Subgroup, dst: &Group, injective: bool) -> Vec<Hom> {
    let gens = domain.gens(src);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let o = src.elem_order(g);
            dst.elements()
                .filter(|&h| {
                    let oh = dst.elem_order(h);
                    if injective {
                        oh == o
                    } else {
                        o % oh == 0
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(h) = Hom::from_gens(src, dst, domain, &gens, &images) {
            if !injective || h.is_injective() {
                out.push(h);
            }
        }
        // odometer
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Every injective homomorphism from `domain ≤ src` into `dst`.
pub fn injective_homs(src: &Group, domain: &Subgroup, dst: &Group) -> Vec<Hom> {
    homs_with(src, domain, dst, true)
}

/// Every homomorphism from `domain ≤ src` into `dst`.
pub fn all_homs(src: &Group, domain: &Subgroup, dst: &Group) -> Vec<Hom> {
    homs_with(src, domain, dst, false)
}
