//! The evaluation maps `ev_a(t, z) = a_1^{t_1}⋯a_n^{t_n}·z` and the winding
//! data `k(a, P)`, `wind(a, P)` of a tuple against a subgroup.

use group_core::{pair, split, Elem, Group, Hom, Subgroup};

use crate::twist::Twist;

/// `∏ a_i^{m_i t_i} · z`
fn twisted_product(c: &Group, a: &[Elem], mult: &[i64], t: &[Elem], z: Elem) -> Elem {
    let mut x = 0;
    for ((&ai, &m), &ti) in a.iter().zip(mult).zip(t) {
        x = c.mul(x, c.pow(ai, m * ti as i64));
    }
    c.mul(x, z)
}

/// `ev_a` on an element of `A × C`.
pub fn ev(twist: &Twist, c: &Group, a: &[Elem], x: Elem) -> Elem {
    let (t, z) = split(c.order(), x);
    twisted_product(c, a, &vec![1; a.len()], &twist.coords(t), z)
}

/// `ev_a: A × C → C` as a homomorphism (the entries of `a` are central in `C`).
pub fn ev_hom(twist: &Twist, c: &Group, ac: &Group, a: &[Elem]) -> Hom {
    Hom::from_fn(ac.order(), &Subgroup::whole(ac), |x| ev(twist, c, a, x))
}

#[derive(Clone, Debug)]
pub struct WindData {
    pub tuple: Vec<Elem>,
    pub sub: Subgroup,
    /// Least `k_i ≥ 1` with `a_i^{k_i} ∈ P`.
    pub k: Vec<u64>,
    /// `ev_a⁻¹(P) ≤ A × C`
    pub preimage: Subgroup,
    /// `(t, z) ↦ (t, ∏ a_i^{(1−k_i)t_i}·z)`, landing in `A × P`.
    pub wind: Hom,
}

impl WindData {
    pub fn is_unwound(&self) -> bool {
        self.k.iter().all(|&k| k == 1)
    }

    /// `a^k`
    pub fn powered(&self, c: &Group) -> Vec<Elem> {
        self.tuple.iter().zip(&self.k).map(|(&x, &k)| c.pow(x, k as i64)).collect()
    }
}

/// Winding data of the tuple `a` (central in `C`) against `P ≤ C`; `ac` is
/// `A × C` for the torus of `twist`.
pub fn wind_data(twist: &Twist, c: &Group, ac: &Group, a: &[Elem], p: &Subgroup) -> WindData {
    let k: Vec<u64> = a
        .iter()
        .map(|&x| (1..=c.elem_order(x) as u64).find(|&k| p.contains(c.pow(x, k as i64))).expect("a^ord(a) = 1 ∈ P"))
        .collect();
    let members: Vec<Elem> = ac.elements().filter(|&x| p.contains(ev(twist, c, a, x))).collect();
    let preimage = Subgroup::from_members(ac.order(), members);
    let mult: Vec<i64> = k.iter().map(|&k| 1 - k as i64).collect();
    let nc = c.order();
    let wind = Hom::from_fn(ac.order(), &preimage, |x| {
        let (t, z) = split(nc, x);
        pair(nc, t, twisted_product(c, a, &mult, &twist.coords(t), z))
    });
    WindData { tuple: a.to_vec(), sub: p.clone(), k, preimage, wind }
}
