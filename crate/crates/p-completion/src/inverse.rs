//! Inverses in the algebra `A_p(F, F) = ω_F ⊙ A_p(S, S) ⊙ ω_F`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use burnside_core::linalg::solve;
use burnside_core::{all_pairs, OrbitKey, Scalar, VirtualBiset};
use fusion_core::{is_stable, FusionSystem};
use num_traits::Zero;

use crate::error::{CompletionError, Result};

/// The restriction of an ambient group `H` to `(T, T)`, projected to
/// `(F_H, F_H)`, together with its inverse.
#[derive(Clone, Debug)]
pub struct InvertibleFusionBiset {
    pub fusion: Arc<FusionSystem>,
    pub base: VirtualBiset,
    pub inverse: VirtualBiset,
}

impl InvertibleFusionBiset {
    /// `H_{F_H}^{F_H}` and its inverse, for `F_H` realized by `H`.
    pub fn of_ambient(f: &Arc<FusionSystem>) -> Result<InvertibleFusionBiset> {
        let s = f.s();
        let w = f.omega()?;
        let out = if f.ambient().order() == s.order() {
            InvertibleFusionBiset { fusion: f.clone(), base: (*w).clone(), inverse: (*w).clone() }
        } else if let Some((a, inner)) = f.factors() {
            // (A × H')^{F}_{F} = id_A × H'^{F'}_{F'}
            let h = InvertibleFusionBiset::of_ambient(inner)?;
            let id = VirtualBiset::identity(a);
            InvertibleFusionBiset {
                fusion: f.clone(),
                base: id.product_into(&h.base, s, s),
                inverse: id.product_into(&h.inverse, s, s),
            }
        } else {
            let base = restrict_to_sylows(&VirtualBiset::identity(f.ambient()), f, f)?;
            let inverse = invert_in_fusion_algebra(&base, f)?;
            InvertibleFusionBiset { fusion: f.clone(), base, inverse }
        };
        out.check()?;
        Ok(out)
    }

    /// Both products equal `ω_F` and both factors are stable.
    pub fn check(&self) -> Result<()> {
        let f = &self.fusion;
        let w = f.omega()?;
        if !is_stable(&self.base, f, f)? || !is_stable(&self.inverse, f, f)? {
            return Err(CompletionError::Consistency(format!("{}: inverse pair is not stable", f.name())));
        }
        if self.base.odot(&self.inverse) != *w || self.inverse.odot(&self.base) != *w {
            return Err(CompletionError::Consistency(format!("{}: inverse is not two-sided", f.name())));
        }
        Ok(())
    }
}

/// `ω_E ⊙ [S, incl]_S^G ⊙ X ⊙ [T, incl⁻¹]_H^T ⊙ ω_F` for a `(G, H)`-biset `X`,
/// where `E` and `F` are realized by `G` and `H`.
pub fn restrict_to_sylows(x: &VirtualBiset, e: &Arc<FusionSystem>, f: &Arc<FusionSystem>) -> Result<VirtualBiset> {
    if **x.left() != **e.ambient() || **x.right() != **f.ambient() {
        return Err(CompletionError::Input(format!(
            "biset ({} -> {}) does not act through ({} -> {})",
            x.left().name(),
            x.right().name(),
            e.ambient().name(),
            f.ambient().name()
        )));
    }
    let x = x.with_groups(e.ambient(), f.ambient());
    let r = x.restrict_left_to(e.embedding()).restrict_right_to(f.embedding());
    Ok(e.omega()?.odot(&r).odot(&*f.omega()?))
}

/// The spanning set `ω_F ⊙ [P, φ] ⊙ ω_F` of `A_p(F, F)`, one element per
/// distinct projection of a bifree orbit.
pub fn fusion_algebra_span(f: &Arc<FusionSystem>) -> Result<Vec<VirtualBiset>> {
    let s = f.s();
    let w = f.omega()?;
    let mut seen: BTreeSet<BTreeMap<OrbitKey, Scalar>> = BTreeSet::new();
    let mut out = Vec::new();
    for k in all_pairs(s, s, true) {
        let v = w.odot(&VirtualBiset::orbit(s, s, k)).odot(&w);
        if !v.is_zero() && seen.insert(v.terms().clone()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Solves `B ⊙ Y = ω_F` for `Y` in the span of the projected orbits and
/// checks that `Y` is a two-sided inverse.
pub fn invert_in_fusion_algebra(b: &VirtualBiset, f: &Arc<FusionSystem>) -> Result<VirtualBiset> {
    if !is_stable(b, f, f)? {
        return Err(CompletionError::Input(format!("biset is not ({0}, {0})-stable", f.name())));
    }
    let w = f.omega()?;
    let span = fusion_algebra_span(f)?;
    let images: Vec<VirtualBiset> = span.iter().map(|y| b.odot(y)).collect();
    let mut rows: BTreeSet<&OrbitKey> = w.terms().keys().collect();
    for v in &images {
        rows.extend(v.terms().keys());
    }
    let a: Vec<Vec<Scalar>> = rows.iter().map(|&k| images.iter().map(|v| v.coeff(k)).collect()).collect();
    let rhs: Vec<Scalar> = rows.iter().map(|&k| w.coeff(k)).collect();
    let c = solve(&a, &rhs).ok_or_else(|| CompletionError::NotInvertible(f.name().to_string()))?;
    let mut y = VirtualBiset::zero(f.s(), f.s());
    for (v, ci) in span.iter().zip(&c) {
        if !ci.is_zero() {
            y.add_assign_scaled(v, ci);
        }
    }
    if b.odot(&y) != *w || y.odot(b) != *w {
        return Err(CompletionError::NotInvertible(f.name().to_string()));
    }
    y.check_p_local(f.prime())?;
    Ok(y)
}
