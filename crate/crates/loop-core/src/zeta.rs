//! The isomorphisms `ζ_a^b = [C_S(a), φ̃] ⊙ ω_{C_F(b)}` between centralizer
//! systems of conjugate tuples.

use std::collections::BTreeSet;
use std::sync::Arc;

use burnside_core::VirtualBiset;
use fusion_core::FusionSystem;
use group_core::{Elem, Embedding, Group, Hom, Subgroup};

use crate::error::{LoopError, Result};
use crate::table::{tuple_label, TupleClassTable};

/// `C_S(a)` as a group of its own, labelled by sorted members.
pub fn centralizer_group(s: &Arc<Group>, a: &[Elem]) -> Embedding {
    Embedding::new(s, &s.centralizer(a), format!("C_{}{}", s.name(), tuple_label(a)))
}

#[derive(Clone, Debug)]
pub struct ZetaMap {
    pub source: Vec<Elem>,
    pub target: Vec<Elem>,
    /// `φ̃: C_S(a) → C_S(b)`
    pub extension: Hom,
    pub biset: VirtualBiset,
}

/// Maps `C_S(a) → C_S(b)` in `F` that send `a` to `b` entrywise, one per
/// distinct restriction, at most `limit` of them.
pub fn extensions(f: &FusionSystem, a: &[Elem], b: &[Elem], src: &Embedding, dst: &Embedding, limit: usize) -> Vec<Hom> {
    let amb = f.ambient();
    let syl = f.embedding();
    let a_amb: Vec<Elem> = a.iter().map(|&x| syl.to_ambient(x)).collect();
    let b_amb: Vec<Elem> = b.iter().map(|&x| syl.to_ambient(x)).collect();
    let whole = Subgroup::whole(&src.sub);
    let gens = whole.gens(&src.sub);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in amb.elements() {
        if out.len() >= limit {
            break;
        }
        if a_amb.iter().zip(&b_amb).any(|(&x, &y)| amb.conj(g, x) != y) {
            continue;
        }
        let img = |x: Elem| syl.to_sub(amb.conj(g, syl.to_ambient(src.to_ambient(x)))).and_then(|y| dst.to_sub(y));
        let Some(key) = gens.iter().map(|&x| img(x)).collect::<Option<Vec<Elem>>>() else {
            continue;
        };
        if seen.insert(key) {
            out.push(Hom::from_fn(src.sub.order(), &whole, |x| img(x).expect("generators land in C_S(b)")));
        }
    }
    out
}

/// `ζ_a^b` built from a given extension.
pub fn zeta_with(a: &[Elem], b: &[Elem], src: &Embedding, cb: &Arc<FusionSystem>, ext: &Hom) -> Result<ZetaMap> {
    let raw = VirtualBiset::from_hom(&src.sub, cb.s(), ext);
    Ok(ZetaMap { source: a.to_vec(), target: b.to_vec(), extension: ext.clone(), biset: raw.odot(&*cb.omega()?) })
}

/// `ζ_a^b` for `b` fully centralized with `C_F(b) = cb` and `C_S(b) ≤ S`
/// given by `dst`.
pub fn zeta(f: &FusionSystem, a: &[Elem], b: &[Elem], cb: &Arc<FusionSystem>, dst: &Embedding) -> Result<ZetaMap> {
    let src = centralizer_group(f.s(), a);
    let ext = extensions(f, a, b, &src, dst, 1).pop().ok_or_else(|| {
        LoopError::Input(format!("{} and {} are not conjugate in {}", tuple_label(a), tuple_label(b), f.name()))
    })?;
    zeta_with(a, b, &src, cb, &ext)
}

/// `ζ` from `a` to the representative of its class.
pub fn zeta_to_rep(table: &TupleClassTable, a: &[Elem]) -> Result<(usize, ZetaMap)> {
    let j = table
        .index_of(a)
        .ok_or_else(|| LoopError::Input(format!("{} is not a commuting {}-tuple of S", tuple_label(a), table.n())))?;
    let z = zeta(table.fusion(), a, table.rep(j), table.centralizer(j), table.embedding(j))?;
    Ok((j, z))
}
