use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use sha2::{Digest, Sha256};

use crate::error::GroupError;
use crate::subgroup::{ConjInfo, Subgroup};

/// Index of a group element. The identity is always `0`.
pub type Elem = u32;

/// Marker for "undefined" in partial maps.
pub const NONE: Elem = Elem::MAX;

/// Largest order for which a multiplication table is built.
pub const MAX_TABLE_ORDER: usize = 4096;

/// A finite group stored as an explicit multiplication table.
///
/// Two groups compare equal when their tables are identical, independent of
/// their names.
pub struct Group {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    digest: [u8; 32],
    pub(crate) subgroup_info: Mutex<HashMap<Vec<Elem>, Arc<ConjInfo>>>,
    pub(crate) all_subgroups: OnceLock<Arc<Vec<Subgroup>>>,
}

impl Group {
    /// Builds a group from a table that is already known to satisfy the axioms,
    /// with the identity at index 0.
    pub(crate) fn from_trusted_table(name: impl Into<String>, order: usize, table: Vec<Elem>) -> Group {
        debug_assert_eq!(table.len(), order * order);
        let mut inv = vec![NONE; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).expect("every element has an inverse");
            inv[a] = b as Elem;
        }
        let mut orders = vec![0u32; order];
        for a in 0..order {
            let mut k = 1u32;
            let mut x = a as Elem;
            while x != 0 {
                x = table[x as usize * order + a];
                k += 1;
            }
            orders[a] = k;
        }
        let mut hasher = Sha256::new();
        hasher.update((order as u64).to_le_bytes());
        for &x in &table {
            hasher.update(x.to_le_bytes());
        }
        let out = hasher.finalize();
        let mut digest = [0u8; 32];
        digest.copy_from_slice(&out);
        Group {
            name: name.into(),
            order,
            table,
            inv,
            orders,
            digest,
            subgroup_info: Mutex::new(HashMap::new()),
            all_subgroups: OnceLock::new(),
        }
    }

    /// Validates a user supplied multiplication table. The identity is moved
    /// to index 0 if it sits elsewhere.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Group, GroupError> {
        let name = name.into();
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::BoundExceeded { name, order: n, bound: MAX_TABLE_ORDER });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {} instead of {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::InvalidTable(format!("row {i} contains {bad}, out of range")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        // relabel so that the identity is 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0 as Elem; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as Elem;
            }
        }
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if seen[x as usize] {
                    return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
                }
                seen[x as usize] = true;
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            let ab = table[a * n + b] as usize;
            let bc = table[b * n + c] as usize;
            table[ab * n + c] == table[a * n + bc]
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic sample of triples
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        Ok(Group::from_trusted_table(name, n, table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn digest(&self) -> &[u8; 32] {
        &self.digest
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let m = self.elem_order(a) as i64;
        let k = k.rem_euclid(m);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.order as Elem
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// Rows of the multiplication table, as used by the JSON format.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// A copy of this group under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Group {
        Group::from_trusted_table(name, self.order, self.table.clone())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The `p`-part of `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut q = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

type Registry = HashMap<([u8; 32], String), Arc<Group>>;

static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();

/// Returns the shared instance of a group with this table and name, so that
/// caches attached to groups are reused across the process.
pub fn intern(g: Group) -> Arc<Group> {
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().expect("group registry poisoned");
    map.entry((g.digest, g.name.clone())).or_insert_with(|| Arc::new(g)).clone()
}
