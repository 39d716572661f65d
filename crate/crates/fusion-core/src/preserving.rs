//! Fusion preserving homomorphisms and stable elements.

use std::sync::Arc;

use burnside_core::explicit::ExplicitBiset;
use burnside_core::VirtualBiset;
use group_core::{Elem, Group, Hom, Subgroup};

use crate::error::FusionError;
use crate::system::FusionSystem;

fn check_source(f: &Hom, e: &FusionSystem, fs: &FusionSystem) -> Result<(), FusionError> {
    if f.src_order() != e.s().order() || f.domain().order() != e.s().order() {
        return Err(FusionError::Input("map must be defined on all of R".into()));
    }
    if !f.is_multiplicative(e.s(), fs.s()) {
        return Err(FusionError::Input("map is not a homomorphism".into()));
    }
    Ok(())
}

/// Direct check: every `φ ∈ E(P, R)` has some `ρ ∈ F(f(P), S)` with
/// `f∘φ = ρ∘f` on `P`. Subgroups are taken up to `R`-conjugacy, since
/// `f∘c_r = c_{f(r)}∘f`.
pub fn preserving_direct(f: &Hom, e: &FusionSystem, fs: &FusionSystem) -> bool {
    let (r, s) = (e.s(), fs.s());
    let rw = Subgroup::whole(r);
    let sw = Subgroup::whole(s);
    let classes = r.subgroup_classes().expect("subgroups of R within bounds");
    classes.iter().all(|c| {
        let p = &c.representative;
        let gens = p.gens(r);
        let fp = Subgroup::generated(s, &gens.iter().map(|&x| f.apply(x)).collect::<Vec<_>>());
        let rhos = fs.hom_set(&fp, &sw);
        e.hom_set(p, &rw).iter().all(|phi| {
            let want: Vec<(Elem, Elem)> = gens.iter().map(|&x| (f.apply(x), f.apply(phi.apply(x)))).collect();
            rhos.iter().any(|rho| want.iter().all(|&(a, b)| rho.apply(a) == b))
        })
    })
}

/// `ω_E ⊙ [R, f]_R^S ⊙ ω_F = [R, f]_R^S ⊙ ω_F`
pub fn preserving_by_idempotents(
    f: &Hom,
    e: &Arc<FusionSystem>,
    fs: &Arc<FusionSystem>,
) -> Result<bool, FusionError> {
    let x = VirtualBiset::from_hom(e.s(), fs.s(), f).odot(&*fs.omega()?);
    Ok(e.omega()?.odot(&x) == x)
}

/// Whether `f: R → S` is fusion preserving from `E` to `F`. Both criteria
/// are evaluated and must agree.
pub fn is_fusion_preserving(f: &Hom, e: &Arc<FusionSystem>, fs: &Arc<FusionSystem>) -> Result<bool, FusionError> {
    check_source(f, e, fs)?;
    let a = preserving_direct(f, e, fs);
    let b = preserving_by_idempotents(f, e, fs)?;
    if a != b {
        return Err(FusionError::Consistency(format!(
            "fusion preservation of a map {} -> {}: direct check says {a}, idempotents say {b}",
            e.name(),
            fs.name()
        )));
    }
    Ok(a)
}

/// `ω_E ⊙ X ⊙ ω_F`
pub fn project_to_fusion(x: &VirtualBiset, e: &Arc<FusionSystem>, fs: &Arc<FusionSystem>) -> Result<VirtualBiset, FusionError> {
    check_sides(x, e, fs)?;
    Ok(e.omega()?.odot(x).odot(&*fs.omega()?))
}

/// Whether `X` is left `E`-stable and right `F`-stable.
pub fn is_stable(x: &VirtualBiset, e: &Arc<FusionSystem>, fs: &Arc<FusionSystem>) -> Result<bool, FusionError> {
    Ok(project_to_fusion(x, e, fs)? == *x)
}

fn check_sides(x: &VirtualBiset, e: &FusionSystem, fs: &FusionSystem) -> Result<(), FusionError> {
    if **x.left() != **e.s() || **x.right() != **fs.s() {
        return Err(FusionError::Input(format!(
            "biset ({} -> {}) does not match ({} -> {})",
            x.left().name(),
            x.right().name(),
            e.s().name(),
            fs.s().name()
        )));
    }
    Ok(())
}

/// A basis element `[H, φ]` with `H ≤ R` and `φ: H → S`.
#[derive(Clone, Debug)]
pub struct BasisPair {
    pub sub: Subgroup,
    pub map: Hom,
}

impl BasisPair {
    pub fn new(sub: Subgroup, map: Hom) -> BasisPair {
        BasisPair { sub, map }
    }

    fn raw(&self, r: &Arc<Group>, s: &Arc<Group>) -> VirtualBiset {
        VirtualBiset::transitive(r, s, &self.sub, &self.map)
    }
}

/// `[H, φ]_E^F ⊙ [K, ψ]_F^G` by the weighted double coset formula over the
/// orbits of `ω_F`, cross-checked against composing and projecting.
pub fn compose_fusion_basis(
    e: &Arc<FusionSystem>,
    b1: &BasisPair,
    fs: &Arc<FusionSystem>,
    b2: &BasisPair,
    g: &Arc<FusionSystem>,
) -> Result<VirtualBiset, FusionError> {
    let (r, s, t) = (e.s(), fs.s(), g.s());
    let w = fs.omega()?;
    let mut sum = VirtualBiset::zero(r, t);
    for (k, c) in w.terms() {
        let orbit = ExplicitBiset::transitive(s, s, &k.stab_subgroup(s), &k.hom(s, s));
        let term = orbit.sandwich(r, &b1.sub, &b1.map, t, &b2.sub, &b2.map);
        sum.add_assign_scaled(&term, c);
    }
    let formula = e.omega()?.odot(&sum).odot(&*g.omega()?);
    let raw = b1.raw(r, s).odot(&w).odot(&b2.raw(s, t));
    let direct = project_to_fusion(&raw, e, g)?;
    if formula != direct {
        return Err(FusionError::Consistency("double coset formula disagrees with composition".into()));
    }
    Ok(formula)
}
