//! Commuting tuples of elements up to conjugacy.

use std::collections::BTreeSet;

use crate::group::{p_part, Elem, Group};
use crate::subgroup::Subgroup;

/// Whether all entries commute pairwise.
pub fn is_commuting(g: &Group, t: &[Elem]) -> bool {
    t.iter().enumerate().all(|(i, &a)| t[i + 1..].iter().all(|&b| g.commute(a, b)))
}

/// `C_G(a_1, …, a_n)`
pub fn tuple_centralizer(g: &Group, t: &[Elem]) -> Subgroup {
    g.centralizer(t)
}

/// Entrywise `x⁻¹ a_i x`.
pub fn conj_tuple(g: &Group, x: Elem, t: &[Elem]) -> Vec<Elem> {
    t.iter().map(|&a| g.conj(x, a)).collect()
}

/// Lexicographically least conjugate of the tuple.
pub fn canonical_tuple(g: &Group, t: &[Elem]) -> Vec<Elem> {
    g.elements().map(|x| conj_tuple(g, x, t)).min().unwrap_or_default()
}

pub fn is_p_element(g: &Group, x: Elem, p: u64) -> bool {
    let o = g.elem_order(x) as u64;
    p_part(o, p) == o
}

/// One representative per conjugacy class of commuting `n`-tuples, each the
/// least member of its class, in increasing order. With `p = Some(p)` only
/// tuples of `p`-elements are listed.
pub fn commuting_tuples(g: &Group, n: usize, p: Option<u64>) -> Vec<Vec<Elem>> {
    let mut reps: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for t in &reps {
            let c = g.centralizer(t);
            // classes of C_G(t) on itself give all extensions up to conjugacy
            let mut seen = vec![false; g.order()];
            for &y in c.members() {
                if seen[y as usize] {
                    continue;
                }
                for &x in c.members() {
                    seen[g.conj(x, y) as usize] = true;
                }
                if p.is_some_and(|p| !is_p_element(g, y, p)) {
                    continue;
                }
                let mut ext = t.clone();
                ext.push(y);
                next.insert(canonical_tuple(g, &ext));
            }
        }
        reps = next.into_iter().collect();
    }
    reps
}
