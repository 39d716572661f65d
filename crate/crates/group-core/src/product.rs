use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{intern, Elem, Group, MAX_TABLE_ORDER};

/// `A × B` with element `(a, b)` at index `a·|B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Arc<Group>, GroupError> {
    let n = a.order() * b.order();
    let name = format!("{}x{}", a.name(), b.name());
    if n > MAX_TABLE_ORDER {
        return Err(GroupError::BoundExceeded { name, order: n, bound: MAX_TABLE_ORDER });
    }
    let nb = b.order();
    let mut table = vec![0 as Elem; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            let za = a.mul(xa as Elem, ya as Elem) as usize;
            let zb = b.mul(xb as Elem, yb as Elem) as usize;
            table[x * n + y] = (za * nb + zb) as Elem;
        }
    }
    Ok(intern(Group::from_trusted_table(name, n, table)))
}

/// Index of `(a, b)` in `A × B`.
#[inline]
pub fn pair(b_order: usize, a: Elem, b: Elem) -> Elem {
    a * b_order as Elem + b
}

/// Components of an element of `A × B`.
#[inline]
pub fn split(b_order: usize, x: Elem) -> (Elem, Elem) {
    (x / b_order as Elem, x % b_order as Elem)
}

/// The cyclic group of order `n`, generated by element `1`.
pub fn cyclic(n: usize) -> Arc<Group> {
    let mut table = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as Elem;
        }
    }
    intern(Group::from_trusted_table(format!("C{n}"), n, table))
}

/// `Z/p^e`
pub fn cyclic_pe(p: u64, e: u32) -> Arc<Group> {
    cyclic(p.pow(e) as usize)
}

/// `A^n`, with coordinates in big-endian order: `(t_1, …, t_n)` sits at
/// `t_1·|A|^{n-1} + … + t_n`. `A^0` is the trivial group.
pub fn power(a: &Group, n: usize) -> Result<Arc<Group>, GroupError> {
    let mut g = cyclic(1);
    for i in 0..n {
        g = if i == 0 { intern(a.renamed(a.name())) } else { direct_product(&g, a)? };
    }
    Ok(g)
}

/// Coordinates of an element of `A^n` in the big-endian encoding.
pub fn power_coords(a_order: usize, n: usize, x: Elem) -> Vec<Elem> {
    let mut out = vec![0; n];
    let mut x = x as usize;
    for i in (0..n).rev() {
        out[i] = (x % a_order) as Elem;
        x /= a_order;
    }
    out
}

/// Inverse of [`power_coords`].
pub fn power_index(a_order: usize, coords: &[Elem]) -> Elem {
    coords.iter().fold(0usize, |acc, &c| acc * a_order + c as usize) as Elem
}
