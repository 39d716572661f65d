use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use group_core::{
    all_homs, direct_product, injective_homs, Elem, Embedding, Group, Hom, Subgroup,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::BisetError;
use crate::key::{canonical_key, least_conjugate, OrbitKey};
use crate::scalar::{format_scalar, is_p_local, PLocalScalar, Scalar};

/// A virtual `(R, S)`-biset: a finite rational combination of transitive
/// bisets `[P, φ]_R^S`, stored by canonical key. Zero coefficients are never
/// stored.
#[derive(Clone)]
pub struct VirtualBiset {
    left: Arc<Group>,
    right: Arc<Group>,
    terms: BTreeMap<OrbitKey, Scalar>,
}

impl PartialEq for VirtualBiset {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right && self.terms == other.terms
    }
}

impl Eq for VirtualBiset {}

impl fmt::Debug for VirtualBiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.left.name(), self.right.name())?;
        if self.terms.is_empty() {
            return f.write_str(" 0");
        }
        for (k, c) in &self.terms {
            write!(f, " + {}·[{:?}, {:?}]", format_scalar(c), k.stab, k.phi)?;
        }
        Ok(())
    }
}

impl VirtualBiset {
    pub fn zero(left: &Arc<Group>, right: &Arc<Group>) -> VirtualBiset {
        VirtualBiset { left: left.clone(), right: right.clone(), terms: BTreeMap::new() }
    }

    /// The transitive biset with the given canonical key.
    pub fn orbit(left: &Arc<Group>, right: &Arc<Group>, key: OrbitKey) -> VirtualBiset {
        let mut x = VirtualBiset::zero(left, right);
        x.terms.insert(key, Scalar::one());
        x
    }

    /// `[P, φ]_R^S` for any pair, canonicalized.
    pub fn transitive(left: &Arc<Group>, right: &Arc<Group>, p: &Subgroup, phi: &Hom) -> VirtualBiset {
        let key = canonical_key(left, right, p.members(), |x| phi.apply(x));
        VirtualBiset::orbit(left, right, key)
    }

    /// `[G, id]_G^G`
    pub fn identity(g: &Arc<Group>) -> VirtualBiset {
        VirtualBiset::orbit(g, g, OrbitKey::identity(g))
    }

    /// `[R, f]_R^S` for a homomorphism defined on all of `R`.
    pub fn from_hom(left: &Arc<Group>, right: &Arc<Group>, f: &Hom) -> VirtualBiset {
        VirtualBiset::transitive(left, right, &Subgroup::whole(left), f)
    }

    pub fn left(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn terms(&self) -> &BTreeMap<OrbitKey, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, key: &OrbitKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·key`, which must already be canonical.
    pub fn add_term(&mut self, key: OrbitKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c·[P, φ]` for an arbitrary pair.
    pub fn add_pair(&mut self, p: &[Elem], f: impl Fn(Elem) -> Elem, c: Scalar) {
        let key = canonical_key(&self.left, &self.right, p, f);
        self.add_term(key, c);
    }

    fn same_groups(&self, other: &VirtualBiset) -> bool {
        self.left == other.left && self.right == other.right
    }

    pub fn add_assign_scaled(&mut self, other: &VirtualBiset, c: &Scalar) {
        assert!(self.same_groups(other), "adding bisets between different groups");
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> VirtualBiset {
        let mut out = VirtualBiset::zero(&self.left, &self.right);
        out.add_assign_scaled(self, c);
        out
    }

    /// Coefficients with denominators prime to `p`.
    pub fn is_p_local(&self, p: u64) -> bool {
        self.terms.values().all(|c| is_p_local(c, p))
    }

    /// Errors on the first coefficient that is not `p`-local.
    pub fn check_p_local(&self, p: u64) -> Result<(), BisetError> {
        for c in self.terms.values() {
            PLocalScalar::new(c.clone(), p)?;
        }
        Ok(())
    }

    /// Whether every coefficient is a non-negative integer.
    pub fn is_actual(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && *c >= Scalar::zero())
    }

    /// Whether every stored orbit has an injective `φ`.
    pub fn is_bifree(&self) -> bool {
        self.terms.keys().all(|k| k.hom(&self.left, &self.right).is_injective())
    }

    /// `Σ c · |R|·|S|/|P|`
    pub fn augmentation(&self) -> Scalar {
        let mut total = Scalar::zero();
        for (k, c) in &self.terms {
            total += c * BigRational::from_integer(BigInt::from(k.size(&self.left, &self.right)));
        }
        total
    }

    /// `X ⊙ Y = X ×_S Y`, extended bilinearly.
    pub fn compose(&self, other: &VirtualBiset) -> Result<VirtualBiset, BisetError> {
        if self.right != other.left {
            return Err(BisetError::GroupMismatch(format!(
                "cannot compose ({} -> {}) with ({} -> {})",
                self.left.name(),
                self.right.name(),
                other.left.name(),
                other.right.name()
            )));
        }
        let mut acc: BTreeMap<OrbitKey, Scalar> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let c = c1 * c2;
                for (k, m) in compose_orbits(&self.left, &self.right, &other.right, k1, k2).iter() {
                    let v = &c * BigRational::from_integer(BigInt::from(*m));
                    *acc.entry(k.clone()).or_insert_with(Scalar::zero) += v;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(VirtualBiset { left: self.left.clone(), right: other.right.clone(), terms: acc })
    }

    /// [`compose`](Self::compose) for operands known to be composable.
    pub fn odot(&self, other: &VirtualBiset) -> VirtualBiset {
        self.compose(other).expect("composable bisets")
    }

    /// Restriction of the left action along `j: P → R`, that is `[P, j]_P^R ⊙ X`.
    pub fn restrict_left(&self, p: &Arc<Group>, j: &Hom) -> VirtualBiset {
        VirtualBiset::from_hom(p, &self.left, j).odot(self)
    }

    /// Restriction of the right action along an injective `j: T → S`, that is
    /// `X ⊙ [j(T), j⁻¹]_S^T`.
    pub fn restrict_right(&self, t: &Arc<Group>, j: &Hom) -> VirtualBiset {
        self.odot(&inverse_orbit(&self.right, t, j))
    }

    /// Restriction of the left action to a subgroup of `R`.
    pub fn restrict_left_to(&self, emb: &Embedding) -> VirtualBiset {
        let j = Hom::from_fn(emb.sub.order(), &Subgroup::whole(&emb.sub), |x| emb.to_ambient(x));
        self.restrict_left(&emb.sub, &j)
    }

    /// Restriction of the right action to a subgroup of `S`.
    pub fn restrict_right_to(&self, emb: &Embedding) -> VirtualBiset {
        let j = Hom::from_fn(emb.sub.order(), &Subgroup::whole(&emb.sub), |x| emb.to_ambient(x));
        self.restrict_right(&emb.sub, &j)
    }

    /// `X × Y` as an `(R₁×R₂, S₁×S₂)`-biset.
    pub fn product(&self, other: &VirtualBiset) -> VirtualBiset {
        let l = direct_product(&self.left, &other.left).expect("product within bounds");
        let r = direct_product(&self.right, &other.right).expect("product within bounds");
        self.product_into(other, &l, &r)
    }

    /// [`product`](Self::product) with the product groups supplied, which must
    /// carry the tables of `R₁×R₂` and `S₁×S₂`.
    pub fn product_into(&self, other: &VirtualBiset, l: &Arc<Group>, r: &Arc<Group>) -> VirtualBiset {
        debug_assert_eq!(l.order(), self.left.order() * other.left.order());
        debug_assert_eq!(r.order(), self.right.order() * other.right.order());
        let (nl, nr) = (other.left.order() as Elem, other.right.order() as Elem);
        let mut out = VirtualBiset::zero(l, r);
        for (k1, c1) in &self.terms {
            let f1 = k1.hom(&self.left, &self.right);
            for (k2, c2) in &other.terms {
                let f2 = k2.hom(&other.left, &other.right);
                let mut stab: Vec<Elem> = Vec::with_capacity(k1.order() * k2.order());
                for &a in &k1.stab {
                    for &b in &k2.stab {
                        stab.push(a * nl + b);
                    }
                }
                out.add_pair(&stab, |x| f1.apply(x / nl) * nr + f2.apply(x % nl), c1 * c2);
            }
        }
        out
    }

    /// Re-labels the groups. Both replacements must carry the same tables.
    pub fn with_groups(&self, left: &Arc<Group>, right: &Arc<Group>) -> VirtualBiset {
        assert!(**left == *self.left && **right == *self.right, "relabelling must keep the tables");
        VirtualBiset { left: left.clone(), right: right.clone(), terms: self.terms.clone() }
    }

    /// The fixed-point count `|X^{(Q,ψ)}|` for `Q ≤ R` and `ψ: Q → S`.
    pub fn mark(&self, q: &Subgroup, psi: &Hom) -> Scalar {
        let mut total = Scalar::zero();
        for (k, c) in &self.terms {
            let m = orbit_mark(&self.left, &self.right, k, q, psi);
            if m != 0 {
                total += c * BigRational::from_integer(BigInt::from(m));
            }
        }
        total
    }

    /// Marks at every class of pairs `(Q, ψ)` with `ψ` injective.
    pub fn marks(&self) -> MarkVector {
        let pairs = all_pairs(&self.left, &self.right, true);
        let entries = pairs
            .into_iter()
            .map(|k| {
                let q = k.stab_subgroup(&self.left);
                let psi = k.hom(&self.left, &self.right);
                let m = self.mark(&q, &psi);
                (k, m)
            })
            .collect();
        MarkVector { entries }
    }
}

impl std::ops::Add for &VirtualBiset {
    type Output = VirtualBiset;
    fn add(self, rhs: &VirtualBiset) -> VirtualBiset {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub for &VirtualBiset {
    type Output = VirtualBiset;
    fn sub(self, rhs: &VirtualBiset) -> VirtualBiset {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &VirtualBiset {
    type Output = VirtualBiset;
    fn neg(self) -> VirtualBiset {
        self.scale(&-Scalar::one())
    }
}

/// Marks indexed by canonical pairs `(Q, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkVector {
    pub entries: BTreeMap<OrbitKey, Scalar>,
}

impl MarkVector {
    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }
}

/// `[j(T), j⁻¹]_S^T` for injective `j: T → S`.
fn inverse_orbit(s: &Arc<Group>, t: &Arc<Group>, j: &Hom) -> VirtualBiset {
    let mut back = vec![group_core::NONE; s.order()];
    for x in t.elements() {
        back[j.apply(x) as usize] = x;
    }
    let img = j.image(s.order());
    let mut out = VirtualBiset::zero(s, t);
    out.add_pair(img.members(), |x| back[x as usize], Scalar::one());
    out
}

type ComposeKey = ([u8; 32], [u8; 32], [u8; 32], OrbitKey, OrbitKey);
type OrbitList = Arc<Vec<(OrbitKey, u32)>>;

static COMPOSE_CACHE: OnceLock<Mutex<HashMap<ComposeKey, OrbitList>>> = OnceLock::new();

/// `[P, φ]_R^S ⊙ [Q, ψ]_S^T = Σ_{s ∈ φ(P)\S/Q} [{r ∈ P : φ(r) ∈ sQs⁻¹}, r ↦ ψ(s⁻¹φ(r)s)]`,
/// as a list of canonical keys with multiplicities.
pub fn compose_orbits(r: &Group, s: &Group, t: &Group, k1: &OrbitKey, k2: &OrbitKey) -> OrbitList {
    let cache = COMPOSE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let ck = (*r.digest(), *s.digest(), *t.digest(), k1.clone(), k2.clone());
    if let Some(v) = cache.lock().expect("poisoned").get(&ck) {
        return v.clone();
    }
    let phi = k1.hom(r, s);
    let psi = k2.hom(s, t);
    let q = k2.stab_subgroup(s);
    let mut in_img = vec![false; s.order()];
    let mut img = Vec::new();
    for &x in &k1.stab {
        let y = phi.apply(x);
        if !in_img[y as usize] {
            in_img[y as usize] = true;
            img.push(y);
        }
    }
    let mut seen = vec![false; s.order()];
    let mut out: BTreeMap<OrbitKey, u32> = BTreeMap::new();
    for s0 in s.elements() {
        if seen[s0 as usize] {
            continue;
        }
        for &a in &img {
            let as0 = s.mul(a, s0);
            for &b in q.members() {
                seen[s.mul(as0, b) as usize] = true;
            }
        }
        let stab: Vec<Elem> = k1.stab.iter().copied().filter(|&x| q.contains(s.conj(s0, phi.apply(x)))).collect();
        let key = canonical_key(r, t, &stab, |x| psi.apply(s.conj(s0, phi.apply(x))));
        *out.entry(key).or_insert(0) += 1;
    }
    let v: OrbitList = Arc::new(out.into_iter().collect());
    cache.lock().expect("poisoned").insert(ck, v.clone());
    v
}

/// Mark of `[P, φ]_R^S` at `(Q, ψ)`:
/// `(1/|P|)·#{(r, s) : r⁻¹Qr ≤ P, ψ(q) = s⁻¹φ(r⁻¹qr)s}`.
pub fn orbit_mark(r: &Group, s: &Group, k: &OrbitKey, q: &Subgroup, psi: &Hom) -> u64 {
    if q.order() > k.order() || k.order() % q.order() != 0 {
        return 0;
    }
    let p = k.stab_subgroup(r);
    let phi = k.hom(r, s);
    let gens = q.gens(r);
    let target: Vec<Elem> = gens.iter().map(|&g| psi.apply(g)).collect();
    let target_min = least_conjugate(s, &target);
    let cent = s.centralizer(&target).order() as u64;
    let mut count = 0u64;
    let mut tup = vec![0; gens.len()];
    for x in r.elements() {
        let mut inside = true;
        for (i, &g) in gens.iter().enumerate() {
            let y = r.conj(x, g);
            if !p.contains(y) {
                inside = false;
                break;
            }
            tup[i] = phi.apply(y);
        }
        if inside && least_conjugate(s, &tup) == target_min {
            count += cent;
        }
    }
    debug_assert_eq!(count % k.order() as u64, 0);
    count / k.order() as u64
}

/// Canonical keys of all pairs `(Q, ψ)` with `Q ≤ R` and `ψ: Q → S`, up to
/// `(R, S)`-conjugacy; only injective `ψ` when asked.
pub fn all_pairs(r: &Group, s: &Group, injective: bool) -> Vec<OrbitKey> {
    let mut keys = std::collections::BTreeSet::new();
    let classes = r.subgroup_classes().expect("subgroup enumeration within bounds");
    for c in classes {
        let q = &c.representative;
        let homs = if injective { injective_homs(r, q, s) } else { all_homs(r, q, s) };
        for h in homs {
            keys.insert(canonical_key(r, s, q.members(), |x| h.apply(x)));
        }
    }
    keys.into_iter().collect()
}

/// `G` as an `(S, T)`-biset by multiplication, for subgroups `S, T ≤ G`
/// given with their embeddings.
pub fn group_as_biset(g: &Group, s: &Embedding, t: &Embedding) -> VirtualBiset {
    let mut out = VirtualBiset::zero(&s.sub, &t.sub);
    let mut seen = vec![false; g.order()];
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        for &a in &s.into {
            let ax = g.mul(a, x);
            for &b in &t.into {
                seen[g.mul(ax, b) as usize] = true;
            }
        }
        // s·x = x·t with t = x⁻¹ s x
        let stab: Vec<Elem> =
            s.sub.elements().filter(|&a| t.to_sub(g.conj(x, s.to_ambient(a))).is_some()).collect();
        let f = |a: Elem| t.to_sub(g.conj(x, s.to_ambient(a))).expect("inside T");
        out.add_pair(&stab, f, Scalar::one());
    }
    out
}
