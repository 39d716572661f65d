//! Structure maps of the twisted loop functors: evaluation `ev`, partial
//! evaluation `pev`, the coordinate permutations `σ` and the inclusion `ι`.

use std::sync::Arc;

use burnside_core::VirtualBiset;
use fusion_core::{FusionSystem, Fusoid};
use group_core::{pair, split, Elem, Group, Hom, Subgroup};

use crate::error::{LoopError, Result};
use crate::loops::{torus_times, LoopFunctor};
use crate::matrix::{BisetMatrix, Objects};
use crate::table::tuple_label;
use crate::twist::Twist;
use crate::wind::ev;
use crate::zeta::{centralizer_group, zeta};

fn twist_of(l: &LoopFunctor) -> Result<&Twist> {
    l.twist().ok_or_else(|| LoopError::Input(format!("{l:?} is not twisted")))
}

fn same_torus(a: &Twist, b: &Twist) -> Result<()> {
    if a.p != b.p || a.e != b.e {
        return Err(LoopError::Input(format!("tori (Z/{}^{}) and (Z/{}^{}) differ", a.p, a.e, b.p, b.e)));
    }
    Ok(())
}

fn hom_biset(src: &Arc<Group>, dst: &Arc<Group>, f: impl Fn(Elem) -> Elem) -> VirtualBiset {
    VirtualBiset::from_hom(src, dst, &Hom::from_fn(src.order(), &Subgroup::whole(src), f))
}

/// `ev_F: L†_n F → F`, with entry `[A × C_S(a), ev_a] ⊙ ω_F` at `a`.
pub fn ev_matrix(l: &LoopFunctor, d: &Fusoid) -> Result<BisetMatrix> {
    let tw = twist_of(l)?;
    let ls = l.loop_space(d)?;
    let mut m = BisetMatrix::zero(&ls.objects, &Objects::single(d));
    for (ci, f) in d.components().iter().enumerate() {
        let sp = &ls.spaces[ci];
        let w = f.omega()?;
        for (i, a) in sp.table.reps().iter().enumerate() {
            let emb = sp.table.embedding(i);
            let c = &emb.sub;
            let a_c: Vec<Elem> = a.iter().map(|&x| emb.to_sub(x).expect("a ≤ C_S(a)")).collect();
            tw.check_tuple(c, &a_c)?;
            let src = sp.systems[i].s();
            let x = hom_biset(src, f.s(), |v| emb.to_ambient(ev(tw, c, &a_c, v)));
            m.set(ls.offsets[ci] + i, ci, x.odot(&w));
        }
    }
    Ok(m)
}

/// `A^n × pev: L†_{n+1} F → L†_n F`, sending the component of
/// `(a_1, …, a_{n+1})` to that of its prefix by `(s, t, z) ↦ (s, a_{n+1}^t z)`.
pub fn pev_matrix(lower: &LoopFunctor, upper: &LoopFunctor, d: &Fusoid) -> Result<BisetMatrix> {
    let (lt, ut) = (twist_of(lower)?, twist_of(upper)?);
    same_torus(lt, ut)?;
    let n = lower.n();
    if upper.n() != n + 1 {
        return Err(LoopError::Input("pev goes from L†_{n+1} to L†_n".into()));
    }
    let (lu, ll) = (upper.loop_space(d)?, lower.loop_space(d)?);
    let mut m = BisetMatrix::zero(&lu.objects, &ll.objects);
    for ci in 0..d.len() {
        let s = d.components()[ci].s();
        let (up, lo) = (&lu.spaces[ci], &ll.spaces[ci]);
        for (i, a) in up.table.reps().iter().enumerate() {
            let j = lo.table.index_of(&a[..n]).filter(|&j| lo.table.rep(j) == &a[..n]).ok_or_else(|| {
                LoopError::Consistency(format!("prefix of {} is not a representative", tuple_label(a)))
            })?;
            let (ea, ep) = (up.table.embedding(i), lo.table.embedding(j));
            let (nc, np) = (ea.sub.order(), ep.sub.order());
            let last = a[n];
            let x = hom_biset(up.systems[i].s(), lo.systems[j].s(), |v| {
                let (u, z) = split(nc, v);
                let coords = ut.coords(u);
                let w = s.mul(s.pow(last, coords[n] as i64), ea.to_ambient(z));
                pair(np, lt.index(&coords[..n]), ep.to_sub(w).expect("a_{n+1}^t z centralizes the prefix"))
            });
            m.set(lu.offsets[ci] + i, ll.offsets[ci] + j, x.odot(&*lo.systems[j].omega()?));
        }
    }
    Ok(m)
}

/// The action of a permutation on `L_n F` or `L†_n F`: `(σa)_i = a_{σ(i)}`
/// and, twisted, `(σt)_i = t_{σ(i)}`.
pub fn sigma_matrix(l: &LoopFunctor, d: &Fusoid, perm: &[usize]) -> Result<BisetMatrix> {
    let n = l.n();
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(LoopError::Input(format!("{perm:?} is not a permutation of {n} coordinates")));
    }
    let ls = l.loop_space(d)?;
    let mut m = BisetMatrix::zero(&ls.objects, &ls.objects);
    for (ci, f) in d.components().iter().enumerate() {
        let sp = &ls.spaces[ci];
        for (i, a) in sp.table.reps().iter().enumerate() {
            let sa: Vec<Elem> = perm.iter().map(|&k| a[k]).collect();
            let j = sp.table.index_of(&sa).expect("permuted tuples commute");
            let z = zeta(f, &sa, sp.table.rep(j), sp.table.centralizer(j), sp.table.embedding(j))?;
            let ca = &sp.table.embedding(i).sub;
            let zb = z.biset.with_groups(ca, z.biset.right());
            let entry = match l.twist() {
                Some(tw) if !tw.is_trivial() => {
                    let src = sp.systems[i].s();
                    let nc = ca.order();
                    let x = hom_biset(src, src, |v| {
                        let (u, w) = split(nc, v);
                        let t = tw.coords(u);
                        let st: Vec<Elem> = perm.iter().map(|&k| t[k]).collect();
                        pair(nc, tw.index(&st), w)
                    });
                    x.odot(&torus_times(Some(tw), &zb)?)
                }
                _ => zb,
            };
            m.set(ls.offsets[ci] + i, ls.offsets[ci] + j, entry);
        }
    }
    Ok(m)
}

/// `ι: L†_{n+m} F → L†_m(L†_n F)`, sending `(x, y)` to the component of
/// `(0, y)` over `A^n × C_F(x)` by `((s, r), z) ↦ (r, (s, z))`.
pub fn iota_matrix(inner: &LoopFunctor, outer: &LoopFunctor, total: &LoopFunctor, d: &Fusoid) -> Result<BisetMatrix> {
    let (it, ot, tt) = (twist_of(inner)?, twist_of(outer)?, twist_of(total)?);
    same_torus(it, ot)?;
    same_torus(it, tt)?;
    let (n, k) = (inner.n(), outer.n());
    if total.n() != n + k {
        return Err(LoopError::Input("ι goes from L†_{n+m} to L†_m L†_n".into()));
    }
    let li = inner.loop_space(d)?;
    let lo = outer.loop_space(li.fusoid())?;
    let lt = total.loop_space(d)?;
    let mut m = BisetMatrix::zero(&lt.objects, &lo.objects);
    for ci in 0..d.len() {
        let (tsp, isp) = (&lt.spaces[ci], &li.spaces[ci]);
        for (i, a) in tsp.table.reps().iter().enumerate() {
            let (x, y) = a.split_at(n);
            let jx = isp.table.index_of(x).filter(|&j| isp.table.rep(j) == x).ok_or_else(|| {
                LoopError::Consistency(format!("prefix of {} is not a representative", tuple_label(a)))
            })?;
            let kf: &Arc<FusionSystem> = &isp.systems[jx];
            let kc = isp.table.embedding(jx);
            let nx = kc.sub.order();
            let lifted: Vec<Elem> = y.iter().map(|&v| pair(nx, 0, kc.to_sub(v).expect("y centralizes x"))).collect();
            let flat = li.offsets[ci] + jx;
            let osp = &lo.spaces[flat];
            let r = osp.table.index_of(&lifted).expect("lifted tuple commutes");
            let z = zeta(kf, &lifted, osp.table.rep(r), osp.table.centralizer(r), osp.table.embedding(r))?;
            let ck = centralizer_group(kf.s(), &lifted);
            let mid = ot.over(&ck.sub)?;
            let ca = tsp.table.embedding(i);
            let na = ca.sub.order();
            let nk = ck.sub.order();
            let shuffle = hom_biset(tsp.systems[i].s(), &mid, |v| {
                let (u, z) = split(na, v);
                let coords = tt.coords(u);
                let zx = kc.to_sub(ca.to_ambient(z)).expect("C_S(x, y) ≤ C_S(x)");
                let kel = pair(nx, it.index(&coords[..n]), zx);
                pair(nk, ot.index(&coords[n..]), ck.to_sub(kel).expect("(s, z) centralizes (0, y)"))
            });
            let entry = shuffle.odot(&torus_times(Some(ot), &z.biset)?);
            m.set(lt.offsets[ci] + i, lo.offsets[flat] + r, entry);
        }
    }
    Ok(m)
}
