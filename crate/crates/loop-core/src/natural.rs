//! Endofunctors of the fusion category and natural transformations between
//! them, extended from `p`-groups to fusion systems through `ω_F`.

use std::fmt::Debug;
use std::sync::Arc;

use fusion_core::{FusionSystem, Fusoid};

use crate::error::{LoopError, Result};
use crate::loops::{torus_times, LoopFunctor};
use crate::matrix::{BisetMatrix, Objects};
use crate::zeta::zeta;

pub trait Endofunctor: Debug {
    fn objects(&self, d: &Fusoid) -> Result<Objects>;
    fn on_morphism(&self, x: &BisetMatrix) -> Result<BisetMatrix>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityFunctor;

impl Endofunctor for IdentityFunctor {
    fn objects(&self, d: &Fusoid) -> Result<Objects> {
        Ok(Objects::single(d))
    }

    fn on_morphism(&self, x: &BisetMatrix) -> Result<BisetMatrix> {
        Ok(x.clone())
    }
}

impl Endofunctor for LoopFunctor {
    fn objects(&self, d: &Fusoid) -> Result<Objects> {
        LoopFunctor::objects(self, d)
    }

    fn on_morphism(&self, x: &BisetMatrix) -> Result<BisetMatrix> {
        self.apply(x)
    }
}

/// A single biset as a morphism between single fusion systems.
pub fn morphism(x: &burnside_core::VirtualBiset, e: &Arc<FusionSystem>, f: &Arc<FusionSystem>) -> BisetMatrix {
    BisetMatrix::from_biset(x, &Objects::single(&Fusoid::single(e)), &Objects::single(&Fusoid::single(f)))
}

/// Checks `F(X) ⊙ η_F = η_E ⊙ G(X)` for `X: E → F`; on failure names the
/// first differing entry.
pub fn check_naturality(
    ff: &dyn Endofunctor,
    gg: &dyn Endofunctor,
    eta_e: &BisetMatrix,
    eta_f: &BisetMatrix,
    x: &BisetMatrix,
) -> Result<()> {
    let lhs = ff.on_morphism(x)?.compose(eta_f)?;
    let rhs = eta_e.compose(&gg.on_morphism(x)?)?;
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((i, j)) => Err(LoopError::Consistency(format!(
            "naturality of {ff:?} => {gg:?} fails at ({}, {})",
            lhs.domain.labels[i], lhs.codomain.labels[j]
        ))),
    }
}

/// `η_F = F((ω_F)_F^S) ⊙ η_S ⊙ G((ω_F)_S^F)` for `η_S` given on the trivial
/// system `s` on the group of `f`. Naturality of `η_S` against `ω_F` as a
/// map `S → S` is checked first.
pub fn extend_natural_transformation(
    ff: &dyn Endofunctor,
    gg: &dyn Endofunctor,
    eta_s: &BisetMatrix,
    f: &Arc<FusionSystem>,
    s: &Arc<FusionSystem>,
) -> Result<BisetMatrix> {
    if **s.s() != **f.s() || s.ambient().order() != s.s().order() {
        return Err(LoopError::Input(format!("{} is not the trivial system on the group of {}", s.name(), f.name())));
    }
    let ds = Fusoid::single(s);
    if !eta_s.domain.matches(&ff.objects(&ds)?) || !eta_s.codomain.matches(&gg.objects(&ds)?) {
        return Err(LoopError::Input("η_S does not connect F(S) and G(S)".into()));
    }
    let w = f.omega()?.with_groups(s.s(), s.s());
    check_naturality(ff, gg, eta_s, eta_s, &morphism(&w, s, s))?;
    let down = morphism(&f.omega()?.with_groups(f.s(), s.s()), f, s);
    let up = morphism(&f.omega()?.with_groups(s.s(), f.s()), s, f);
    Ok(ff.on_morphism(&down)?.compose(eta_s)?.compose(&gg.on_morphism(&up)?)?)
}

/// The isomorphism between the loop spaces of `f` built with two choices
/// of representatives: entry `(A ×) ζ_a^{a'}` from each representative to
/// the other table's representative of its class.
pub fn representative_change(from: &LoopFunctor, to: &LoopFunctor, f: &Arc<FusionSystem>) -> Result<BisetMatrix> {
    if from.n() != to.n() || from.twist().map(|t| (t.p, t.e)) != to.twist().map(|t| (t.p, t.e)) {
        return Err(LoopError::Input("representative change needs the same functor".into()));
    }
    let (a, b) = (from.space(f)?, to.space(f)?);
    let mut m = BisetMatrix::zero(&a.objects(), &b.objects());
    for (i, t) in a.table.reps().iter().enumerate() {
        let j = b.table.index_of(t).expect("both tables cover every tuple");
        let z = zeta(f, t, b.table.rep(j), b.table.centralizer(j), b.table.embedding(j))?;
        let zb = z.biset.with_groups(&a.table.embedding(i).sub, z.biset.right());
        m.set(i, j, torus_times(from.twist(), &zb)?);
    }
    Ok(m)
}
