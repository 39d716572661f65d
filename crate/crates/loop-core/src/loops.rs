//! The free loop functor `L_n` and the twisted loop functor `L†_n`, on
//! groups and on fusion systems.
//!
//! At group level the `(a, b)` entry restricts `X` to `C_R(a)` on the left
//! and keeps, for each orbit `[P, φ]`, the part over the class of `b`:
//! untwisted, `[P, c_s∘φ]` when `a ∈ P` and `s⁻¹φ(a)s = b`; twisted,
//! `[ev_a⁻¹(P), (id × c_s∘φ)∘wind(a, P)]` when `s⁻¹φ(a^k)s = b`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use burnside_core::VirtualBiset;
use fusion_core::{project_to_fusion, FusionSystem, Fusoid};
use group_core::{pair, split, Elem, Embedding, Group};

use crate::error::{LoopError, Result};
use crate::matrix::{BisetMatrix, Objects};
use crate::table::{tuple_label, ColumnClasses, GroupTable, RepPolicy, TupleClassTable};
use crate::twist::Twist;
use crate::wind::wind_data;
use crate::zeta::{centralizer_group, zeta};

/// Which orbits contribute to a twisted entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summands {
    All,
    /// Only orbits with `a ∈ P`; gives `A × L_n`.
    Unwound,
}

/// Group-level entries of row `a`, keyed by column. `cr` embeds `C_R(a)` in
/// `R`; the entries go from `C_R(a)` (or `A × C_R(a)`) to the column groups.
pub fn loop_row(
    x: &VirtualBiset,
    a: &[Elem],
    cr: &Embedding,
    cols: &dyn ColumnClasses,
    twist: Option<&Twist>,
    summands: Summands,
) -> Result<BTreeMap<usize, VirtualBiset>> {
    let s = cols.group().clone();
    if **x.right() != *s {
        return Err(LoopError::Input(format!("biset lands in {}, columns live in {}", x.right().name(), s.name())));
    }
    let c = &cr.sub;
    let a_c: Vec<Elem> = a
        .iter()
        .map(|&v| cr.to_sub(v))
        .collect::<Option<_>>()
        .ok_or_else(|| LoopError::Input(format!("{} does not lie in its centralizer", tuple_label(a))))?;
    let row_group = match twist {
        Some(tw) => {
            tw.check_tuple(c, &a_c)?;
            tw.over(c)?
        }
        None => c.clone(),
    };
    let y = x.restrict_left_to(cr);
    let mut out: BTreeMap<usize, VirtualBiset> = BTreeMap::new();
    let mut col_groups: HashMap<usize, Arc<Group>> = HashMap::new();
    for (k, coeff) in y.terms() {
        let p = k.stab_subgroup(c);
        let phi = k.hom(c, &s);
        let (stab, wind, t) = match twist {
            None => {
                if !a_c.iter().all(|&v| p.contains(v)) {
                    continue;
                }
                (p.members().to_vec(), None, a_c.iter().map(|&v| phi.apply(v)).collect::<Vec<_>>())
            }
            Some(tw) => {
                let wd = wind_data(tw, c, &row_group, &a_c, &p);
                if summands == Summands::Unwound && !wd.is_unwound() {
                    continue;
                }
                let t = wd.powered(c).iter().map(|&v| phi.apply(v)).collect();
                (wd.preimage.members().to_vec(), Some(wd.wind), t)
            }
        };
        let (j, g) = match cols.conjugate_to_rep(&t) {
            Some(v) => v,
            None if !cols.is_complete() => continue,
            None => {
                return Err(LoopError::Consistency(format!("{} has no representative in {}", tuple_label(&t), s.name())))
            }
        };
        let emb = cols.cent(j);
        let cg = match col_groups.get(&j) {
            Some(g) => g.clone(),
            None => {
                let g = match twist {
                    Some(tw) => tw.over(&emb.sub)?,
                    None => emb.sub.clone(),
                };
                col_groups.insert(j, g.clone());
                g
            }
        };
        let to_col = |z: Elem| emb.to_sub(s.conj(g, phi.apply(z))).expect("conjugated image centralizes the column tuple");
        let entry = out.entry(j).or_insert_with(|| VirtualBiset::zero(&row_group, &cg));
        match &wind {
            None => entry.add_pair(&stab, to_col, coeff.clone()),
            Some(w) => {
                let (nc, nb) = (c.order(), emb.sub.order());
                entry.add_pair(
                    &stab,
                    |v| {
                        let (tt, z) = split(nc, w.apply(v));
                        pair(nb, tt, to_col(z))
                    },
                    coeff.clone(),
                );
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// A single column `b` of a group.
struct SingleColumn {
    group: Arc<Group>,
    b: Vec<Elem>,
    emb: Embedding,
}

impl ColumnClasses for SingleColumn {
    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn len(&self) -> usize {
        1
    }

    fn rep(&self, _: usize) -> &[Elem] {
        &self.b
    }

    fn cent(&self, _: usize) -> &Embedding {
        &self.emb
    }

    fn conjugate_to_rep(&self, t: &[Elem]) -> Option<(usize, Elem)> {
        let g = &self.group;
        g.elements().find(|&x| t.iter().zip(&self.b).all(|(&u, &v)| g.conj(x, u) == v)).map(|x| (0, x))
    }

    fn is_complete(&self) -> bool {
        false
    }
}

/// The component `_aX^b` of `L_n(X)` (or of `L†_n(X)` with a twist) for
/// commuting tuples `a` in `R` and `b` in `S`.
pub fn loop_of_biset(x: &VirtualBiset, a: &[Elem], b: &[Elem], twist: Option<&Twist>) -> Result<VirtualBiset> {
    let cr = centralizer_group(x.left(), a);
    let col = SingleColumn { group: x.right().clone(), b: b.to_vec(), emb: centralizer_group(x.right(), b) };
    let mut row = loop_row(x, a, &cr, &col, twist, Summands::All)?;
    match row.remove(&0) {
        Some(v) => Ok(v),
        None => {
            let (l, r) = match twist {
                Some(tw) => (tw.over(&cr.sub)?, tw.over(&col.emb.sub)?),
                None => (cr.sub.clone(), col.emb.sub.clone()),
            };
            Ok(VirtualBiset::zero(&l, &r))
        }
    }
}

/// `A × Y` for a biset `Y: C → D`.
pub fn torus_times(twist: Option<&Twist>, y: &VirtualBiset) -> Result<VirtualBiset> {
    match twist {
        Some(tw) if !tw.is_trivial() => {
            Ok(VirtualBiset::identity(&tw.torus).product_into(y, &tw.over(y.left())?, &tw.over(y.right())?))
        }
        _ => Ok(y.clone()),
    }
}

/// `A × M` entrywise, placed between the given (twisted) components.
pub fn torus_matrix(twist: Option<&Twist>, m: &BisetMatrix, domain: &Objects, codomain: &Objects) -> Result<BisetMatrix> {
    if domain.len() != m.rows() || codomain.len() != m.cols() {
        return Err(LoopError::Input("component counts differ".into()));
    }
    let mut out = BisetMatrix::zero(domain, codomain);
    for (&(i, j), v) in m.entries() {
        out.set(i, j, torus_times(twist, v)?);
    }
    Ok(out)
}

/// Loop components of one fusion system: the tuple table and the systems
/// `C_F(a)` or `A × C_F(a)`.
pub struct ComponentSpace {
    pub table: Arc<TupleClassTable>,
    pub systems: Vec<Arc<FusionSystem>>,
    i: OnceLock<BisetMatrix>,
    t: OnceLock<BisetMatrix>,
}

impl ComponentSpace {
    pub fn objects(&self) -> Objects {
        let d = Fusoid::new(self.systems.clone()).expect("a table has at least one class");
        Objects::of_fusoid(&d, self.table.reps().iter().map(|r| tuple_label(r)).collect())
    }
}

/// Loop components of a `p`-group with trivial fusion, classified by
/// conjugation in the group.
pub struct GroupSpace {
    pub table: Arc<GroupTable>,
    pub systems: Vec<Arc<FusionSystem>>,
}

impl GroupSpace {
    pub fn objects(&self) -> Objects {
        let d = Fusoid::new(self.systems.clone()).expect("a table has at least one class");
        Objects::of_fusoid(&d, self.table.reps().iter().map(|r| tuple_label(r)).collect())
    }
}

/// Loop components of a fusoid, in the order of its components.
pub struct LoopSpace {
    pub base: Fusoid,
    pub spaces: Vec<Arc<ComponentSpace>>,
    pub offsets: Vec<usize>,
    pub objects: Objects,
}

impl LoopSpace {
    pub fn fusoid(&self) -> &Fusoid {
        self.objects.fusoid.as_ref().expect("loop spaces of fusoids are fusoids")
    }

    /// `(component, representative)` of a flat index.
    pub fn locate(&self, flat: usize) -> (usize, usize) {
        let c = self.offsets.partition_point(|&o| o <= flat) - 1;
        (c, flat - self.offsets[c])
    }
}

/// `L_n` or, with a twist, `L†_n`. Tables and component systems are cached
/// per fusion system, so repeated use shares the computed idempotents.
pub struct LoopFunctor {
    n: usize,
    twist: Option<Twist>,
    policy: RepPolicy,
    spaces: Mutex<HashMap<usize, Arc<ComponentSpace>>>,
    group_spaces: Mutex<HashMap<(Vec<u8>, u64), Arc<GroupSpace>>>,
    underlying: Mutex<HashMap<usize, (Arc<FusionSystem>, Arc<FusionSystem>)>>,
}

impl std::fmt::Debug for LoopFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.twist {
            Some(t) => write!(f, "L†_{} (p = {}, e = {})", self.n, t.p, t.e),
            None => write!(f, "L_{}", self.n),
        }
    }
}

fn key(f: &Arc<FusionSystem>) -> usize {
    Arc::as_ptr(f) as usize
}

impl LoopFunctor {
    fn with(n: usize, twist: Option<Twist>) -> LoopFunctor {
        LoopFunctor {
            n,
            twist,
            policy: RepPolicy::Least,
            spaces: Mutex::new(HashMap::new()),
            group_spaces: Mutex::new(HashMap::new()),
            underlying: Mutex::new(HashMap::new()),
        }
    }

    pub fn free(n: usize) -> LoopFunctor {
        LoopFunctor::with(n, None)
    }

    pub fn twisted(p: u64, e: u32, n: usize) -> Result<LoopFunctor> {
        Ok(LoopFunctor::with(n, Some(Twist::new(p, e, n)?)))
    }

    pub fn with_policy(mut self, policy: RepPolicy) -> LoopFunctor {
        self.policy = policy;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> Option<&Twist> {
        self.twist.as_ref()
    }

    pub fn policy(&self) -> RepPolicy {
        self.policy
    }

    fn over(&self, c: &Arc<Group>) -> Result<Arc<Group>> {
        match &self.twist {
            Some(t) => t.over(c),
            None => Ok(c.clone()),
        }
    }

    fn check_prime(&self, p: u64) -> Result<()> {
        match &self.twist {
            Some(t) if t.p != p => Err(LoopError::Input(format!("twist at p = {} applied at p = {p}", t.p))),
            _ => Ok(()),
        }
    }

    /// `F_S(S)` on the group of `f`, shared across calls.
    pub fn underlying(&self, f: &Arc<FusionSystem>) -> Result<Arc<FusionSystem>> {
        let mut m = self.underlying.lock().expect("poisoned");
        if let Some((_, u)) = m.get(&key(f)) {
            return Ok(u.clone());
        }
        let u = FusionSystem::trivial(f.s(), f.prime())?;
        // holding `f` keeps its address from being reused
        m.insert(key(f), (f.clone(), u.clone()));
        Ok(u)
    }

    pub fn space(&self, f: &Arc<FusionSystem>) -> Result<Arc<ComponentSpace>> {
        if let Some(s) = self.spaces.lock().expect("poisoned").get(&key(f)) {
            return Ok(s.clone());
        }
        self.check_prime(f.prime())?;
        let table = Arc::new(TupleClassTable::build(f, self.n, self.policy)?);
        let systems = (0..table.len())
            .map(|i| {
                let c = table.centralizer(i);
                match &self.twist {
                    Some(t) if !t.is_trivial() => Ok(FusionSystem::product(&t.torus, c)?),
                    _ => Ok(c.clone()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sp = Arc::new(ComponentSpace { table, systems, i: OnceLock::new(), t: OnceLock::new() });
        Ok(self.spaces.lock().expect("poisoned").entry(key(f)).or_insert(sp).clone())
    }

    pub fn group_space(&self, s: &Arc<Group>, p: u64) -> Result<Arc<GroupSpace>> {
        let k = (s.digest().to_vec(), p);
        if let Some(g) = self.group_spaces.lock().expect("poisoned").get(&k) {
            return Ok(g.clone());
        }
        self.check_prime(p)?;
        let table = Arc::new(GroupTable::new(s, self.n, None));
        let systems = (0..table.len())
            .map(|j| Ok(FusionSystem::trivial(&self.over(&table.cent(j).sub)?, p)?))
            .collect::<Result<Vec<_>>>()?;
        let g = Arc::new(GroupSpace { table, systems });
        Ok(self.group_spaces.lock().expect("poisoned").entry(k).or_insert(g).clone())
    }

    pub fn loop_space(&self, d: &Fusoid) -> Result<LoopSpace> {
        let spaces = d.components().iter().map(|f| self.space(f)).collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(spaces.len());
        let (mut systems, mut labels) = (Vec::new(), Vec::new());
        for (ci, sp) in spaces.iter().enumerate() {
            offsets.push(systems.len());
            systems.extend(sp.systems.iter().cloned());
            for r in sp.table.reps() {
                labels.push(if d.len() > 1 { format!("{ci}:{}", tuple_label(r)) } else { tuple_label(r) });
            }
        }
        let objects = Objects::of_fusoid(&Fusoid::new(systems)?, labels);
        Ok(LoopSpace { base: d.clone(), spaces, offsets, objects })
    }

    pub fn objects(&self, d: &Fusoid) -> Result<Objects> {
        Ok(self.loop_space(d)?.objects)
    }

    /// `L(X_R^S)` between the group-level loop spaces of two `p`-groups.
    pub fn group_matrix(&self, x: &VirtualBiset, p: u64) -> Result<BisetMatrix> {
        self.group_matrix_with(x, p, Summands::All)
    }

    pub fn group_matrix_with(&self, x: &VirtualBiset, p: u64, summands: Summands) -> Result<BisetMatrix> {
        let gr = self.group_space(x.left(), p)?;
        let gs = self.group_space(x.right(), p)?;
        let mut m = BisetMatrix::zero(&gr.objects(), &gs.objects());
        for (i, a) in gr.table.reps().iter().enumerate() {
            for (j, v) in loop_row(x, a, gr.table.cent(i), &*gs.table, self.twist.as_ref(), summands)? {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// `I_F` (or `A × I_F`): the `ζ` from each group-level class to its
    /// `F`-representative.
    pub fn matrix_i(&self, f: &Arc<FusionSystem>) -> Result<BisetMatrix> {
        let sp = self.space(f)?;
        if let Some(m) = sp.i.get() {
            return Ok(m.clone());
        }
        let gs = self.group_space(f.s(), f.prime())?;
        let mut m = BisetMatrix::zero(&gs.objects(), &sp.objects());
        for (c, t) in gs.table.reps().iter().enumerate() {
            let b = sp.table.index_of(t).ok_or_else(|| LoopError::Consistency(format!("{} unclassified", tuple_label(t))))?;
            let z = zeta(f, t, sp.table.rep(b), sp.table.centralizer(b), sp.table.embedding(b))?;
            m.set(c, b, torus_times(self.twist.as_ref(), &z.biset)?);
        }
        Ok(sp.i.get_or_init(|| m).clone())
    }

    /// `T_F` (or `T†_F`): the loop components of `ω_F`, rows at the
    /// `F`-representatives. Each row is checked left stable.
    pub fn matrix_t(&self, f: &Arc<FusionSystem>) -> Result<BisetMatrix> {
        let sp = self.space(f)?;
        if let Some(m) = sp.t.get() {
            return Ok(m.clone());
        }
        let gs = self.group_space(f.s(), f.prime())?;
        let w = f.omega()?;
        let mut m = BisetMatrix::zero(&sp.objects(), &gs.objects());
        for (i, a) in sp.table.reps().iter().enumerate() {
            let wc = sp.systems[i].omega()?;
            for (j, v) in loop_row(&w, a, sp.table.embedding(i), &*gs.table, self.twist.as_ref(), Summands::All)? {
                if wc.odot(&v) != v {
                    return Err(LoopError::Consistency(format!(
                        "T entry ({}, {}) of {} is not left stable",
                        tuple_label(a),
                        tuple_label(gs.table.rep(j)),
                        f.name()
                    )));
                }
                m.set(i, j, v);
            }
        }
        Ok(sp.t.get_or_init(|| m).clone())
    }

    /// The functor on one stable biset `X ∈ A_p(E, F)`. Computed as
    /// `Σ_{b'} L(X_R^S)_{a,b'} ⊙ ζ_{b'}^b` and as `T_E ⊙ L(X_R^S) ⊙ I_F`;
    /// the two must agree.
    pub fn apply_biset(&self, x: &VirtualBiset, e: &Arc<FusionSystem>, f: &Arc<FusionSystem>) -> Result<BisetMatrix> {
        if project_to_fusion(x, e, f)? != *x {
            return Err(LoopError::Input(format!(
                "biset is not ({}, {})-stable; project it with ω_E ⊙ X ⊙ ω_F first",
                e.name(),
                f.name()
            )));
        }
        let se = self.space(e)?;
        let gs = self.group_space(f.s(), f.prime())?;
        let i_f = self.matrix_i(f)?;
        let mut rows = BisetMatrix::zero(&se.objects(), &gs.objects());
        for (i, a) in se.table.reps().iter().enumerate() {
            for (j, v) in loop_row(x, a, se.table.embedding(i), &*gs.table, self.twist.as_ref(), Summands::All)? {
                rows.set(i, j, v);
            }
        }
        let direct = rows.compose(&i_f)?;
        let via = self.matrix_t(e)?.compose(&self.group_matrix(x, e.prime())?)?.compose(&i_f)?;
        if let Some((i, j)) = direct.first_difference(&via) {
            return Err(LoopError::Consistency(format!(
                "{self:?} of a biset {} -> {}: entry ({}, {}) differs between the entry formula and T ⊙ L ⊙ I",
                e.name(),
                f.name(),
                direct.domain.labels[i],
                direct.codomain.labels[j]
            )));
        }
        Ok(direct)
    }

    /// The functor on a morphism of fusoids, block by block.
    pub fn apply(&self, x: &BisetMatrix) -> Result<BisetMatrix> {
        let (Some(d), Some(c)) = (&x.domain.fusoid, &x.codomain.fusoid) else {
            return Err(LoopError::Input("the loop functor acts on matrices between fusoids".into()));
        };
        let ld = self.loop_space(d)?;
        let lc = self.loop_space(c)?;
        let mut out = BisetMatrix::zero(&ld.objects, &lc.objects);
        for (&(i, j), v) in x.entries() {
            let block = self.apply_biset(v, &d.components()[i], &c.components()[j])?;
            for (&(a, b), w) in block.entries() {
                out.set(ld.offsets[i] + a, lc.offsets[j] + b, w.with_groups(&ld.objects.groups[ld.offsets[i] + a], &lc.objects.groups[lc.offsets[j] + b]));
            }
        }
        Ok(out)
    }

    /// The identity of `L(F)`: `diag(ω_{C_F(a)})`.
    pub fn identity(&self, f: &Arc<FusionSystem>) -> Result<BisetMatrix> {
        self.space(f)?.objects().identity()
    }
}
