//! Comparing `(L†_{n,p} X)^∧_p` with `L†_n(X^∧_p)`.
//!
//! Components on both sides are indexed by the same tuples: the group-level
//! classes of commuting `p`-element tuples of `G` take as representatives
//! the fully centralized tuples chosen for `F_G`, read inside `G`. The
//! component `A × C_G(a)` then completes to `A × C_F(a)`.

use std::sync::Arc;

use burnside_core::VirtualBiset;
use fusion_core::FusionSystem;
use loop_core::{loop_row, tuple_label, BisetMatrix, ColumnClasses, GroupTable, LoopFunctor, Objects, Summands};

use crate::complete::Completion;
use crate::error::{CompletionError, Result};

/// Classes of commuting `p`-element tuples of the ambient group, with the
/// representatives of the loop table of `f`.
pub fn shared_table(l: &LoopFunctor, f: &Arc<FusionSystem>) -> Result<GroupTable> {
    let sp = l.space(f)?;
    let syl = f.embedding();
    let reps = sp.table.reps().iter().map(|r| r.iter().map(|&x| syl.to_ambient(x)).collect()).collect();
    Ok(GroupTable::with_reps(f.ambient(), l.n(), reps)?)
}

/// The group-level `L†_{n,p}(X)` for a `(G, H)`-biset, between the ambient
/// groups of the loop components of `F_G` and `F_H`.
pub fn group_loop_at_p(l: &LoopFunctor, x: &VirtualBiset, g: &Arc<FusionSystem>, h: &Arc<FusionSystem>) -> Result<BisetMatrix> {
    let (sg, sh) = (l.space(g)?, l.space(h)?);
    let (tg, th) = (shared_table(l, g)?, shared_table(l, h)?);
    let ambient_objects = |sp: &loop_core::ComponentSpace| {
        let groups = sp.systems.iter().map(|k| k.ambient().clone()).collect();
        Objects::of_groups(groups, sp.table.reps().iter().map(|r| tuple_label(r)).collect())
    };
    let (dom, cod) = (ambient_objects(&sg), ambient_objects(&sh));
    let mut m = BisetMatrix::zero(&dom, &cod);
    for (i, a) in tg.reps().iter().enumerate() {
        for (j, v) in loop_row(x, a, tg.cent(i), &th, l.twist(), Summands::All)? {
            let (left, right) = (&dom.groups[i], &cod.groups[j]);
            if **v.left() != **left || **v.right() != **right {
                return Err(CompletionError::Consistency(format!(
                    "component ({}, {}) is not {} -> {}",
                    dom.labels[i],
                    cod.labels[j],
                    left.name(),
                    right.name()
                )));
            }
            m.set(i, j, v.with_groups(left, right));
        }
    }
    Ok(m)
}

/// Outcome of [`verify_commutation`].
#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub n: usize,
    pub e: Option<u32>,
    /// `(L†_{n,p} X)^∧_p`
    pub lhs: BisetMatrix,
    /// `L†_n(X^∧_p)`
    pub rhs: BisetMatrix,
    /// Labels of the first entry where the sides differ.
    pub first_difference: Option<(String, String)>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Computes both composites for a `(G, H)`-biset `X` and compares them
/// entrywise.
pub fn verify_commutation(
    l: &LoopFunctor,
    c: &Completion,
    x: &VirtualBiset,
    g: &Arc<FusionSystem>,
    h: &Arc<FusionSystem>,
) -> Result<CommutationReport> {
    let (sg, sh) = (l.space(g)?, l.space(h)?);
    let (dom, cod) = (sg.objects(), sh.objects());
    let group_level = group_loop_at_p(l, x, g, h)?;
    let mut lhs = BisetMatrix::zero(&dom, &cod);
    for (&(i, j), v) in group_level.entries() {
        let y = c.complete(v, &sg.systems[i], &sh.systems[j])?;
        lhs.set(i, j, y.with_groups(&dom.groups[i], &cod.groups[j]));
    }
    let rhs = l.apply_biset(&c.complete(x, g, h)?, g, h)?;
    let first_difference = lhs.first_difference(&rhs).map(|(i, j)| (dom.labels[i].clone(), cod.labels[j].clone()));
    Ok(CommutationReport { n: l.n(), e: l.twist().map(|t| t.e), lhs, rhs, first_difference })
}
