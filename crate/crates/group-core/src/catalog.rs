//! Named groups: `C<n>`, `V4`, `D<2n>`, `Q8`, `S<n>`, `A<n>`, `SL(2,3)` and
//! direct products written `AxB`.

use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{intern, Elem, Group};
use crate::perm::{group_from_perms, is_even, perm_group, Perm};
use crate::product::{cyclic, direct_product};

/// Names accepted by [`lookup`] (products of these are accepted too).
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = (1..=16).map(|n| format!("C{n}")).collect();
    out.push("V4".into());
    out.extend((1..=8).map(|n| format!("D{}", 2 * n)));
    out.push("Q8".into());
    out.extend((1..=5).map(|n| format!("S{n}")));
    out.extend((1..=5).map(|n| format!("A{n}")));
    out.push("SL(2,3)".into());
    out
}

/// Resolves a catalog name such as `A4`, `D8` or `C4xV4`.
pub fn lookup(name: &str) -> Result<Arc<Group>, GroupError> {
    let name = name.trim();
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = parts.next().ok_or_else(|| GroupError::UnknownGroup(name.into()))?;
        let mut g = lookup(first)?;
        for part in parts {
            g = direct_product(&g, &*lookup(part)?)?;
        }
        return Ok(g);
    }
    let unknown = || GroupError::UnknownGroup(name.into());
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match name {
        "V4" => return Ok(named(dihedral(2), "V4")),
        "Q8" => return Ok(quaternion()),
        "SL(2,3)" | "SL23" => return Ok(sl23()),
        _ => {}
    }
    if let Some(n) = number("C") {
        if (1..=1024).contains(&n) {
            return Ok(cyclic(n));
        }
    } else if let Some(n) = number("D") {
        if n >= 2 && n % 2 == 0 && n <= 64 {
            return Ok(dihedral(n / 2));
        }
    } else if let Some(n) = number("S") {
        if (1..=5).contains(&n) {
            return symmetric(n);
        }
    } else if let Some(n) = number("A") {
        if (1..=5).contains(&n) {
            return alternating(n);
        }
    }
    Err(unknown())
}

fn named(g: Arc<Group>, name: &str) -> Arc<Group> {
    if g.name() == name {
        g
    } else {
        intern(g.renamed(name))
    }
}

/// Dihedral group of order `2n`; `r^i s^j` sits at index `i + n·j`.
pub fn dihedral(n: usize) -> Arc<Group> {
    let order = 2 * n;
    let mut table = vec![0 as Elem; order * order];
    for x in 0..order {
        let (i, a) = (x % n, x / n);
        for y in 0..order {
            let (j, b) = (y % n, y / n);
            let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
            table[x * order + y] = (k + n * ((a + b) % 2)) as Elem;
        }
    }
    intern(Group::from_trusted_table(format!("D{order}"), order, table))
}

/// Quaternion group; `±u` for `u ∈ {1, i, j, k}` sits at `2u + sign`.
pub fn quaternion() -> Arc<Group> {
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![0 as Elem; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = UNIT[x / 2][y / 2];
            let sign = (x % 2 + y % 2 + s) % 2;
            table[x * 8 + y] = (2 * u + sign) as Elem;
        }
    }
    intern(Group::from_trusted_table("Q8", 8, table))
}

pub fn symmetric(n: usize) -> Result<Arc<Group>, GroupError> {
    perm_group(format!("S{n}"), n, &symmetric_gens(n))
}

pub fn alternating(n: usize) -> Result<Arc<Group>, GroupError> {
    let s = crate::perm::closure(n, &symmetric_gens(n), 200)?;
    group_from_perms(format!("A{n}"), s.into_iter().filter(is_even).collect())
}

fn symmetric_gens(n: usize) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    if n >= 2 {
        let mut t: Perm = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    gens
}

/// `SL(2,3)`: identity first, then the other matrices in lexicographic order
/// of their entries `(a, b, c, d)`.
pub fn sl23() -> Arc<Group> {
    let mut mats: Vec<[u8; 4]> = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    if (a * d + 3 * 3 - b * c) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = [1, 0, 0, 1];
    mats.retain(|m| *m != id);
    mats.sort();
    mats.insert(0, id);
    let n = mats.len();
    let mul = |x: [u8; 4], y: [u8; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let mut table = vec![0 as Elem; n * n];
    for i in 0..n {
        for j in 0..n {
            let z = mul(mats[i], mats[j]);
            table[i * n + j] = mats.iter().position(|m| *m == z).expect("closed") as Elem;
        }
    }
    intern(Group::from_trusted_table("SL(2,3)", n, table))
}
