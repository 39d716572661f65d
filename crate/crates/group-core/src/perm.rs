use std::collections::HashMap;
use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{intern, Elem, Group, MAX_TABLE_ORDER};

/// A permutation of `0..degree`, as its list of images.
pub type Perm = Vec<usize>;

/// Builds a permutation of the given degree from disjoint cycles.
pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm, GroupError> {
    let mut p: Perm = (0..degree).collect();
    let mut seen = vec![false; degree];
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            if x >= degree {
                return Err(GroupError::InvalidPermutation(format!("point {x} exceeds degree {degree}")));
            }
            if seen[x] {
                return Err(GroupError::InvalidPermutation(format!("point {x} appears twice")));
            }
            seen[x] = true;
            p[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

/// Product `a` then `b` (right action: `x^(ab) = (x^a)^b`).
fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

/// Closure of a set of permutations under composition.
pub fn closure(degree: usize, gens: &[Perm], bound: usize) -> Result<Vec<Perm>, GroupError> {
    let id: Perm = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = compose(&elems[i], g);
            if !index.contains_key(&y) {
                if elems.len() >= bound {
                    return Err(GroupError::BoundExceeded {
                        name: "permutation group".into(),
                        order: elems.len() + 1,
                        bound,
                    });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// Group whose elements are exactly `elems` (which must be closed). Elements
/// are sorted lexicographically, so the identity comes first.
pub fn group_from_perms(name: impl Into<String>, mut elems: Vec<Perm>) -> Result<Arc<Group>, GroupError> {
    elems.sort();
    elems.dedup();
    let n = elems.len();
    if n > MAX_TABLE_ORDER {
        return Err(GroupError::BoundExceeded { name: name.into(), order: n, bound: MAX_TABLE_ORDER });
    }
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = vec![0 as Elem; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let c = compose(a, b);
            let k = *index
                .get(&c)
                .ok_or_else(|| GroupError::InvalidPermutation("element list is not closed".into()))?;
            table[i * n + j] = k as Elem;
        }
    }
    Ok(intern(Group::from_trusted_table(name, n, table)))
}

/// Group generated by permutations.
pub fn perm_group(name: impl Into<String>, degree: usize, gens: &[Perm]) -> Result<Arc<Group>, GroupError> {
    let elems = closure(degree, gens, MAX_TABLE_ORDER)?;
    group_from_perms(name, elems)
}

pub fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}
