use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{intern, Elem, Group};

/// Default bound on the group order for full subgroup enumeration.
pub const SUBGROUP_BOUND: usize = 1024;

/// A subgroup, stored as the sorted list of its element indices together with
/// a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<u64>,
}

impl Subgroup {
    /// Wraps a member list that is known to be a subgroup.
    pub fn from_members(group_order: usize, mut members: Vec<Elem>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![0u64; group_order.div_ceil(64)];
        for &m in &members {
            mask[m as usize / 64] |= 1 << (m % 64);
        }
        Subgroup { members, mask }
    }

    pub fn trivial(g: &Group) -> Subgroup {
        Subgroup::from_members(g.order(), vec![0])
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::from_members(g.order(), g.elements().collect())
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &Group, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_members(g.order(), members)
    }

    /// The subgroup generated by this one and `x`.
    pub fn join_elem(&self, g: &Group, x: Elem) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = canonical_generators(g, &self.members);
        gens.push(x);
        Subgroup::generated(g, &gens)
    }

    /// Checks closure under multiplication; used to validate external input.
    pub fn is_closed(g: &Group, members: &[Elem]) -> bool {
        let set: HashSet<Elem> = members.iter().copied().collect();
        set.contains(&0) && members.iter().all(|&a| members.iter().all(|&b| set.contains(&g.mul(a, b))))
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let i = x as usize / 64;
        i < self.mask.len() && self.mask[i] & (1 << (x % 64)) != 0
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted member list.
    pub fn index_of(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn intersect(&self, other: &Subgroup, group_order: usize) -> Subgroup {
        Subgroup::from_members(group_order, self.members.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// `g P g⁻¹`
    pub fn conjugate_by(&self, g: &Group, x: Elem) -> Subgroup {
        let xi = g.inv(x);
        Subgroup::from_members(g.order(), self.members.iter().map(|&m| g.mul(g.mul(x, m), xi)).collect())
    }

    pub fn gens(&self, g: &Group) -> Vec<Elem> {
        canonical_generators(g, &self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

/// Greedy generators: scan members in increasing order and keep every element
/// not yet in the span of the previous ones. Depends only on the member set.
pub fn canonical_generators(g: &Group, members: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for &m in members {
        if !span.contains(m) {
            gens.push(m);
            span = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Conjugacy data for one subgroup `P ≤ G`.
#[derive(Debug)]
pub struct ConjInfo {
    /// Least member set among the conjugates `x P x⁻¹`.
    pub canonical: Vec<Elem>,
    /// Some `x` with `x P x⁻¹ = canonical`.
    pub conjugator: Elem,
    /// Filled only when `P` is itself canonical.
    pub canon: Option<Arc<CanonData>>,
}

/// Data attached to a canonical subgroup.
#[derive(Debug)]
pub struct CanonData {
    pub gens: Vec<Elem>,
    pub normalizer: Vec<Elem>,
    /// Distinct tuples `(n⁻¹ g n)` over the generators, for `n` in the normalizer.
    pub autos: Vec<Vec<Elem>>,
}

impl Group {
    /// Conjugacy information for the subgroup with these (sorted) members.
    pub fn conj_info(&self, members: &[Elem]) -> Arc<ConjInfo> {
        if let Some(info) = self.subgroup_info.lock().expect("poisoned").get(members) {
            return info.clone();
        }
        let info = Arc::new(self.compute_conj_info(members));
        self.subgroup_info.lock().expect("poisoned").insert(members.to_vec(), info.clone());
        info
    }

    fn compute_conj_info(&self, members: &[Elem]) -> ConjInfo {
        let sub = Subgroup::from_members(self.order(), members.to_vec());
        let gens = canonical_generators(self, members);
        let normalizes = |x: Elem| {
            let xi = self.inv(x);
            gens.iter().all(|&g| sub.contains(self.mul(self.mul(x, g), xi)))
        };
        let normalizer: Vec<Elem> = self.elements().filter(|&x| normalizes(x)).collect();
        let nsub = Subgroup::from_members(self.order(), normalizer.clone());
        // one x per left coset x N
        let mut covered = vec![false; self.order()];
        let mut best: Option<(Vec<Elem>, Elem)> = None;
        for x in self.elements() {
            if covered[x as usize] {
                continue;
            }
            for &n in nsub.members() {
                covered[self.mul(x, n) as usize] = true;
            }
            let xi = self.inv(x);
            let mut conj: Vec<Elem> = members.iter().map(|&m| self.mul(self.mul(x, m), xi)).collect();
            conj.sort_unstable();
            if best.as_ref().is_none_or(|(b, _)| conj < *b) {
                best = Some((conj, x));
            }
        }
        let (canonical, conjugator) = best.expect("group is nonempty");
        let canon = if canonical.as_slice() == members {
            let mut autos = BTreeSet::new();
            for &n in &normalizer {
                autos.insert(gens.iter().map(|&g| self.conj(n, g)).collect::<Vec<_>>());
            }
            Some(Arc::new(CanonData { gens, normalizer, autos: autos.into_iter().collect() }))
        } else {
            None
        };
        ConjInfo { canonical, conjugator, canon }
    }

    /// Canonical data of the canonical subgroup with these members.
    pub fn canon_data(&self, canonical_members: &[Elem]) -> Arc<CanonData> {
        self.conj_info(canonical_members).canon.clone().expect("subgroup is not canonical")
    }

    /// `N_G(P)`
    pub fn normalizer(&self, p: &Subgroup) -> Subgroup {
        let gens = p.gens(self);
        let members = self
            .elements()
            .filter(|&x| {
                let xi = self.inv(x);
                gens.iter().all(|&g| p.contains(self.mul(self.mul(x, g), xi)))
            })
            .collect();
        Subgroup::from_members(self.order(), members)
    }

    /// Centralizer of a list of elements. The empty list gives the whole group.
    pub fn centralizer(&self, elems: &[Elem]) -> Subgroup {
        let members = self.elements().filter(|&g| elems.iter().all(|&a| self.commute(g, a))).collect();
        Subgroup::from_members(self.order(), members)
    }

    /// Centralizer of a subgroup.
    pub fn centralizer_of(&self, p: &Subgroup) -> Subgroup {
        self.centralizer(&p.gens(self))
    }

    /// Every subgroup of the group, in no particular order.
    pub fn all_subgroups(&self) -> Result<Arc<Vec<Subgroup>>, GroupError> {
        self.all_subgroups_bounded(SUBGROUP_BOUND)
    }

    pub fn all_subgroups_bounded(&self, bound: usize) -> Result<Arc<Vec<Subgroup>>, GroupError> {
        if let Some(s) = self.all_subgroups.get() {
            return Ok(s.clone());
        }
        if self.order() > bound {
            return Err(GroupError::BoundExceeded { name: self.name().to_string(), order: self.order(), bound });
        }
        let subs = match crate::cache::load_subgroups(self) {
            Some(s) => s,
            None => {
                let s = self.enumerate_subgroups();
                crate::cache::store_subgroups(self, &s);
                s
            }
        };
        let _ = self.all_subgroups.set(Arc::new(subs));
        Ok(self.all_subgroups.get().expect("just set").clone())
    }

    fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        // cyclic subgroups first, then joins layer by layer
        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut cyclic_gens: Vec<Elem> = Vec::new();
        let mut seen: HashSet<Subgroup> = HashSet::new();
        for x in self.elements() {
            let c = Subgroup::generated(self, &[x]);
            if seen.insert(c.clone()) {
                cyclic.push(c);
                cyclic_gens.push(x);
            }
        }
        let mut all: Vec<Subgroup> = cyclic.clone();
        let mut frontier = cyclic;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for &c in &cyclic_gens {
                    if h.contains(c) {
                        continue;
                    }
                    let j = h.join_elem(self, c);
                    if seen.insert(j.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        all
    }

    /// Subgroups grouped into conjugacy classes, sorted by decreasing order and
    /// then by the canonical member set.
    pub fn subgroup_classes(&self) -> Result<Vec<SubgroupClass>, GroupError> {
        let subs = self.all_subgroups()?;
        let mut classes: std::collections::BTreeMap<(std::cmp::Reverse<usize>, Vec<Elem>), Vec<Subgroup>> =
            Default::default();
        for s in subs.iter() {
            let info = self.conj_info(s.members());
            classes.entry((std::cmp::Reverse(s.order()), info.canonical.clone())).or_default().push(s.clone());
        }
        Ok(classes
            .into_iter()
            .map(|((_, canon), mut members)| {
                members.sort();
                SubgroupClass { representative: Subgroup::from_members(self.order(), canon), members }
            })
            .collect())
    }

    /// A Sylow `p`-subgroup, grown one element at a time inside normalizers.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = crate::group::p_part(self.order() as u64, p) as usize;
        let mut s = Subgroup::trivial(self);
        while s.order() < target {
            let n = self.normalizer(&s);
            let x = n
                .members()
                .iter()
                .copied()
                .find(|&x| !s.contains(x) && crate::group::p_part(self.elem_order(x) as u64, p) == self.elem_order(x) as u64)
                .expect("a p-subgroup smaller than a Sylow subgroup has p-elements in its normalizer");
            s = s.join_elem(self, x);
        }
        s
    }

    /// The subgroup as a group in its own right: element `i` of the result is
    /// the `i`-th smallest member. Returns the group and the embedding.
    pub fn subgroup_group(&self, sub: &Subgroup, name: impl Into<String>) -> (Arc<Group>, Vec<Elem>) {
        let m = sub.members();
        let k = m.len();
        let mut table = vec![0 as Elem; k * k];
        for i in 0..k {
            for j in 0..k {
                let x = self.mul(m[i], m[j]);
                table[i * k + j] = sub.index_of(x).expect("subgroup is closed") as Elem;
            }
        }
        (intern(Group::from_trusted_table(name, k, table)), m.to_vec())
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// A subgroup viewed as a group of its own, with the maps between indices.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: Arc<Group>,
    /// `into[i]` is the ambient element for element `i` of `sub`.
    pub into: Vec<Elem>,
    /// Inverse of `into`, `NONE` off the subgroup.
    pub back: Vec<Elem>,
}

impl Embedding {
    pub fn new(ambient: &Group, s: &Subgroup, name: impl Into<String>) -> Embedding {
        let (sub, into) = ambient.subgroup_group(s, name);
        let mut back = vec![crate::group::NONE; ambient.order()];
        for (i, &x) in into.iter().enumerate() {
            back[x as usize] = i as Elem;
        }
        Embedding { sub, into, back }
    }

    #[inline]
    pub fn to_ambient(&self, x: Elem) -> Elem {
        self.into[x as usize]
    }

    /// Index in `sub` of an ambient element, if it lies in the subgroup.
    #[inline]
    pub fn to_sub(&self, x: Elem) -> Option<Elem> {
        let y = self.back[x as usize];
        (y != crate::group::NONE).then_some(y)
    }

    /// Image of a subgroup of `sub` in the ambient group.
    pub fn push(&self, ambient_order: usize, p: &Subgroup) -> Subgroup {
        Subgroup::from_members(ambient_order, p.members().iter().map(|&x| self.to_ambient(x)).collect())
    }

    /// Preimage in `sub` of an ambient subgroup.
    pub fn pull(&self, p: &Subgroup) -> Subgroup {
        Subgroup::from_members(self.sub.order(), p.members().iter().filter_map(|&x| self.to_sub(x)).collect())
    }
}
