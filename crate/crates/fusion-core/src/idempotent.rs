//! The characteristic idempotent `ω_F`.
//!
//! Marks of a stable biset are constant on `(F,F)`-classes of pairs
//! `(Q, ψ)` with `ψ ∈ F(Q, S)`, and every such class is the class of
//! `(P, id)` for an `F`-class of subgroups `P`. Walking those classes from
//! the top down, adding a multiple of an orbit `[P_k, φ_k]` only moves the
//! mark at its own `(S,S)`-class among pairs of order `|P|`, so each class
//! gives a square system: equal marks across the class, and coefficients
//! summing to `1` for `P = S` and `0` otherwise.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use burnside_core::{canonicalize, orbit_mark, OrbitKey, Scalar, VirtualBiset};
use group_core::{Elem, Embedding, Hom, Subgroup};
use num_traits::{One, Zero};

use crate::error::FusionError;
use crate::system::FusionSystem;

/// `ω_F` together with the system it belongs to.
#[derive(Clone, Debug)]
pub struct CharacteristicIdempotent {
    pub omega: Arc<VirtualBiset>,
    pub fusion: Arc<FusionSystem>,
}

/// Outcome of each defining property of a characteristic idempotent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub p_local: bool,
    pub f_generated: bool,
    pub left_stable: bool,
    pub right_stable: bool,
    pub marks_constant: bool,
    pub unit_augmentation: bool,
    pub idempotent: bool,
    pub class_sums: bool,
}

impl CharacteristicReport {
    pub fn all(&self) -> bool {
        self.p_local
            && self.f_generated
            && self.left_stable
            && self.right_stable
            && self.marks_constant
            && self.unit_augmentation
            && self.idempotent
            && self.class_sums
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.p_local, "p-local"),
            (self.f_generated, "F-generated"),
            (self.left_stable, "left stable"),
            (self.right_stable, "right stable"),
            (self.marks_constant, "marks constant"),
            (self.unit_augmentation, "augmentation"),
            (self.idempotent, "idempotent"),
            (self.class_sums, "class sums"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|(_, n)| *n).collect()
    }
}

/// One representative `(Q, ψ)` for each `(S,S)`-class of pairs with `Q` in
/// the given `F`-class and `ψ ∈ F(Q, S)`.
pub fn class_pairs(f: &FusionSystem, class: &[Subgroup]) -> BTreeMap<OrbitKey, (Subgroup, Hom)> {
    let s = f.s();
    let whole = Subgroup::whole(s);
    let mut out = BTreeMap::new();
    for q in class {
        for psi in f.hom_set(q, &whole).iter() {
            out.entry(canonicalize(s, s, q, psi)).or_insert_with(|| (q.clone(), psi.clone()));
        }
    }
    out
}

/// Order in which classes of equal size are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieOrder {
    Forward,
    Reverse,
}

/// Runs the stabilization from `[S, id]`. Fails if a class's constant mark
/// differs from `|S|/|F(P,S)|`.
pub fn stabilize(f: &FusionSystem, ties: TieOrder) -> Result<VirtualBiset, FusionError> {
    let s = f.s();
    let mut x = VirtualBiset::identity(s);
    let mut classes: Vec<Vec<Subgroup>> = f.subgroup_classes().to_vec();
    if ties == TieOrder::Reverse {
        classes.reverse();
        classes.sort_by(|a, b| b[0].order().cmp(&a[0].order()));
    }
    let whole = Subgroup::whole(s);
    for class in &classes {
        let pairs = class_pairs(f, class);
        let target = if class[0].order() == s.order() { Scalar::one() } else { Scalar::zero() };
        let mut rows = Vec::with_capacity(pairs.len());
        let (mut cur, mut inv_w, mut m_over_w) = (Scalar::zero(), Scalar::zero(), Scalar::zero());
        for (k, (q, psi)) in &pairs {
            let w = Scalar::from_integer(orbit_mark(s, s, k, q, psi).into());
            let m = x.mark(q, psi);
            cur += x.coeff(k);
            inv_w += Scalar::one() / &w;
            m_over_w += &m / &w;
            rows.push((k.clone(), m, w));
        }
        let v = (target - cur + m_over_w) / inv_w;
        let expected = Scalar::new(s.order().into(), f.hom_set(&class[0], &whole).len().into());
        if v != expected {
            return Err(FusionError::Consistency(format!(
                "{}: constant mark {v} on the class of {:?}, expected {expected}",
                f.name(),
                class[0]
            )));
        }
        for (k, m, w) in rows {
            x.add_term(k, (&v - m) / w);
        }
    }
    x.check_p_local(f.prime())?;
    Ok(x)
}

fn subgroup_group(s: &group_core::Group, p: &Subgroup) -> Embedding {
    Embedding::new(s, p, format!("{}<{}>", s.name(), p.order()))
}

/// `[P, φ]_P^S ⊙ X = [P, id]_P^S ⊙ X` for all `φ ∈ F(P, S)`.
pub fn is_left_stable(f: &FusionSystem, x: &VirtualBiset) -> bool {
    stable_on_side(f, x, true)
}

/// `X ⊙ [φP, φ⁻¹]_S^P = X ⊙ [P, id]_S^P` for all `φ ∈ F(P, S)`.
pub fn is_right_stable(f: &FusionSystem, x: &VirtualBiset) -> bool {
    stable_on_side(f, x, false)
}

fn stable_on_side(f: &FusionSystem, x: &VirtualBiset, left: bool) -> bool {
    let s = f.s();
    let side = if left { x.left() } else { x.right() };
    assert!(**side == **s, "biset does not act through S on this side");
    let whole = Subgroup::whole(s);
    let classes = s.subgroup_classes().expect("subgroups of S within bounds");
    classes.iter().all(|c| {
        let p = &c.representative;
        let emb = subgroup_group(s, p);
        let pw = Subgroup::whole(&emb.sub);
        let incl = Hom::from_fn(emb.sub.order(), &pw, |y| emb.to_ambient(y));
        let restrict = |j: &Hom| if left { x.restrict_left(&emb.sub, j) } else { x.restrict_right(&emb.sub, j) };
        let base = restrict(&incl);
        let mut seen = std::collections::BTreeSet::new();
        f.hom_set(p, &whole).iter().all(|phi| {
            let j = Hom::from_fn(emb.sub.order(), &pw, |y| phi.apply(emb.to_ambient(y)));
            // maps differing by an inner automorphism of S restrict alike
            let key = canonicalize(&emb.sub, s, &pw, &j);
            !seen.insert(key) || restrict(&j) == base
        })
    })
}

/// Marks of `X` agree across each `(F,F)`-class of pairs.
pub fn marks_constant(f: &FusionSystem, x: &VirtualBiset) -> bool {
    f.subgroup_classes().iter().all(|class| {
        let pairs = class_pairs(f, class);
        let mut it = pairs.values().map(|(q, psi)| x.mark(q, psi));
        let first = it.next().expect("every class has the identity pair");
        it.all(|m| m == first)
    })
}

pub fn is_f_generated(f: &FusionSystem, x: &VirtualBiset) -> bool {
    let s = f.s();
    x.terms().keys().all(|k| f.contains_hom(&k.hom(s, s)))
}

/// The sum of the coefficients over the orbits whose pair is `(F,F)`-conjugate
/// to `(P, id)` is `1` for `P = S` and `0` otherwise.
pub fn class_sums_hold(f: &FusionSystem, x: &VirtualBiset) -> bool {
    let classes = f.subgroup_classes();
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for q in c {
            index.insert(q.members().to_vec(), i);
        }
    }
    let mut sums = vec![Scalar::zero(); classes.len()];
    for (k, c) in x.terms() {
        match index.get(&k.stab) {
            Some(&i) => sums[i] += c,
            None => return false,
        }
    }
    let n = f.s().order();
    classes.iter().zip(&sums).all(|(c, v)| *v == if c[0].order() == n { Scalar::one() } else { Scalar::zero() })
}

/// Checks every defining property of `ω_F` on `x`.
pub fn check_characteristic(f: &FusionSystem, x: &VirtualBiset) -> CharacteristicReport {
    let s = f.s();
    let f_generated = is_f_generated(f, x);
    CharacteristicReport {
        p_local: x.is_p_local(f.prime()),
        f_generated,
        left_stable: is_left_stable(f, x),
        right_stable: is_right_stable(f, x),
        marks_constant: marks_constant(f, x),
        unit_augmentation: x.augmentation() == Scalar::from_integer(s.order().into()),
        idempotent: x.odot(x) == *x,
        class_sums: f_generated && class_sums_hold(f, x),
    }
}

fn build(f: &Arc<FusionSystem>) -> Result<VirtualBiset, FusionError> {
    if f.ambient().order() == f.s().order() {
        return Ok(VirtualBiset::identity(f.s()));
    }
    if let Some((a, inner)) = f.factors() {
        let w = inner.omega()?;
        let x = VirtualBiset::identity(a).product_into(&w, f.s(), f.s());
        if check_characteristic(f, &x).all() {
            return Ok(x);
        }
    }
    let x = stabilize(f, TieOrder::Forward)?;
    let y = stabilize(f, TieOrder::Reverse)?;
    if x != y {
        return Err(FusionError::Consistency(format!("{}: stabilization depends on the class order", f.name())));
    }
    let report = check_characteristic(f, &x);
    if !report.all() {
        return Err(FusionError::Consistency(format!("{}: ω fails {}", f.name(), report.failures().join(", "))));
    }
    Ok(x)
}

impl FusionSystem {
    /// `ω_F`, computed once and verified.
    pub fn omega(self: &Arc<Self>) -> Result<Arc<VirtualBiset>, FusionError> {
        if let Some(w) = self.omega.get() {
            return Ok(w.clone());
        }
        let w = Arc::new(build(self)?);
        Ok(self.omega.get_or_init(|| w).clone())
    }
}

pub fn characteristic_idempotent(f: &Arc<FusionSystem>) -> Result<CharacteristicIdempotent, FusionError> {
    Ok(CharacteristicIdempotent { omega: f.omega()?, fusion: f.clone() })
}
