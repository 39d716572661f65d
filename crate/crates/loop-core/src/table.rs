//! Classes of commuting tuples with chosen representatives.

use std::collections::HashMap;
use std::sync::Arc;

use fusion_core::FusionSystem;
use group_core::{commuting_tuples, is_commuting, Elem, Embedding, Group};

use crate::error::{LoopError, Result};

pub fn tuple_label(t: &[Elem]) -> String {
    format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Which member of a class becomes its representative, among the fully
/// centralized candidates allowed by prefix compatibility.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RepPolicy {
    #[default]
    Least,
    Greatest,
}

/// `F`-classes of commuting `n`-tuples in `S`. Each representative is fully
/// centralized, its prefix is a representative of the `(n−1)`-table and its
/// last entry is fully centralized in the centralizer system of the prefix.
pub struct TupleClassTable {
    fusion: Arc<FusionSystem>,
    n: usize,
    reps: Vec<Vec<Elem>>,
    class_index: HashMap<Vec<Elem>, usize>,
    cents: Vec<Arc<FusionSystem>>,
    embs: Vec<Embedding>,
}

impl std::fmt::Debug for TupleClassTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TupleClassTable({}, n = {}, {} reps)", self.fusion.name(), self.n, self.reps.len())
    }
}

fn identity_embedding(s: &Arc<Group>) -> Embedding {
    let id: Vec<Elem> = s.elements().collect();
    Embedding { sub: s.clone(), into: id.clone(), back: id }
}

fn choose(policy: RepPolicy, it: impl Iterator<Item = Vec<Elem>>) -> Option<Vec<Elem>> {
    match policy {
        RepPolicy::Least => it.min(),
        RepPolicy::Greatest => it.max(),
    }
}

impl TupleClassTable {
    fn assemble(f: &Arc<FusionSystem>, n: usize, reps: Vec<Vec<Elem>>) -> Result<TupleClassTable> {
        let mut class_index = HashMap::new();
        let (mut cents, mut embs) = (Vec::with_capacity(reps.len()), Vec::with_capacity(reps.len()));
        for (i, r) in reps.iter().enumerate() {
            for t in f.tuple_class(r) {
                if let Some(j) = class_index.insert(t, i) {
                    return Err(LoopError::Input(format!(
                        "representatives {} and {} are conjugate",
                        tuple_label(&reps[j]),
                        tuple_label(r)
                    )));
                }
            }
            if n == 0 {
                cents.push(f.clone());
                embs.push(identity_embedding(f.s()));
            } else {
                let (c, e) = f.centralizer(r)?;
                cents.push(c);
                embs.push(e);
            }
        }
        Ok(TupleClassTable { fusion: f.clone(), n, reps, class_index, cents, embs })
    }

    /// Builds the table inductively from the `(n−1)`-table.
    pub fn build(f: &Arc<FusionSystem>, n: usize, policy: RepPolicy) -> Result<TupleClassTable> {
        if n == 0 {
            return TupleClassTable::assemble(f, 0, vec![vec![]]);
        }
        let prev = TupleClassTable::build(f, n - 1, policy)?;
        let mut reps = Vec::new();
        for (i, a) in prev.reps.iter().enumerate() {
            let (c, emb) = (&prev.cents[i], &prev.embs[i]);
            let mut seen = vec![false; c.s().order()];
            for y in c.s().elements() {
                if seen[y as usize] {
                    continue;
                }
                let class = c.tuple_class(&[y]);
                for m in &class {
                    seen[m[0] as usize] = true;
                }
                let pick = choose(
                    policy,
                    class.iter().filter(|m| c.is_fully_centralized(m)).map(|m| {
                        let mut t = a.clone();
                        t.push(emb.to_ambient(m[0]));
                        t
                    }),
                )
                .ok_or_else(|| LoopError::Consistency(format!("no fully centralized member in a class of {}", c.name())))?;
                reps.push(pick);
            }
        }
        TupleClassTable::assemble(f, n, reps)
    }

    /// A table with prescribed representatives, validated against every
    /// table invariant.
    pub fn with_reps(f: &Arc<FusionSystem>, n: usize, reps: Vec<Vec<Elem>>) -> Result<TupleClassTable> {
        if reps.iter().any(|r| r.len() != n) {
            return Err(LoopError::Input(format!("representatives must have length {n}")));
        }
        for r in &reps {
            if !is_commuting(f.s(), r) || r.iter().any(|&x| x as usize >= f.s().order()) {
                return Err(LoopError::Input(format!("{} is not a commuting tuple", tuple_label(r))));
            }
            if !f.is_fully_centralized(r) {
                return Err(LoopError::Input(format!("{} is not fully centralized", tuple_label(r))));
            }
        }
        let table = TupleClassTable::assemble(f, n, reps)?;
        let s = f.s();
        let total: usize = commuting_tuples(s, n, None).iter().map(|t| s.order() / s.centralizer(t).order()).sum();
        if table.class_index.len() != total {
            return Err(LoopError::Input("representatives miss some classes".into()));
        }
        if n > 0 {
            let mut prefixes: Vec<Vec<Elem>> = table.reps.iter().map(|r| r[..n - 1].to_vec()).collect();
            prefixes.sort();
            prefixes.dedup();
            let prev = TupleClassTable::with_reps(f, n - 1, prefixes)?;
            for r in &table.reps {
                let i = prev.index_of(&r[..n - 1]).expect("prefix is a representative");
                let y = prev.embs[i].to_sub(r[n - 1]).expect("last entry centralizes the prefix");
                if !prev.cents[i].is_fully_centralized(&[y]) {
                    return Err(LoopError::Input(format!(
                        "last entry of {} is not fully centralized over its prefix",
                        tuple_label(r)
                    )));
                }
            }
        }
        Ok(table)
    }

    pub fn fusion(&self) -> &Arc<FusionSystem> {
        &self.fusion
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reps(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &[Elem] {
        &self.reps[i]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the representative of the class of `t`.
    pub fn index_of(&self, t: &[Elem]) -> Option<usize> {
        self.class_index.get(t).copied()
    }

    /// Number of commuting tuples covered by the table.
    pub fn tuple_count(&self) -> usize {
        self.class_index.len()
    }

    /// `C_F(a_i)`
    pub fn centralizer(&self, i: usize) -> &Arc<FusionSystem> {
        &self.cents[i]
    }

    /// `C_S(a_i) ≤ S`
    pub fn embedding(&self, i: usize) -> &Embedding {
        &self.embs[i]
    }
}

/// `C_F(a)` for a representative of the table.
pub fn centralizer_fusion(t: &TupleClassTable, a: &[Elem]) -> Result<Arc<FusionSystem>> {
    match t.index_of(a) {
        Some(i) if t.rep(i) == a => Ok(t.centralizer(i).clone()),
        _ => Err(LoopError::Input(format!("{} is not a representative", tuple_label(a)))),
    }
}

/// Conjugacy classes of commuting tuples in a group, with the group-level
/// conjugator to the chosen representative.
pub trait ColumnClasses {
    fn group(&self) -> &Arc<Group>;
    fn len(&self) -> usize;
    fn rep(&self, j: usize) -> &[Elem];
    fn cent(&self, j: usize) -> &Embedding;
    /// `(j, x)` with `x⁻¹ t x = rep_j`.
    fn conjugate_to_rep(&self, t: &[Elem]) -> Option<(usize, Elem)>;
    /// Whether every tuple that can occur has a representative.
    fn is_complete(&self) -> bool {
        true
    }
}

/// Classes of commuting tuples under conjugation in a group.
#[derive(Debug)]
pub struct GroupTable {
    group: Arc<Group>,
    n: usize,
    reps: Vec<Vec<Elem>>,
    cents: Vec<Embedding>,
    index: HashMap<Vec<Elem>, usize>,
}

impl GroupTable {
    /// Least representatives; with `p` only tuples of `p`-elements.
    pub fn new(g: &Arc<Group>, n: usize, p: Option<u64>) -> GroupTable {
        GroupTable::assemble(g, n, commuting_tuples(g, n, p)).expect("least representatives are distinct")
    }

    /// Given representatives, which must lie in distinct classes.
    pub fn with_reps(g: &Arc<Group>, n: usize, reps: Vec<Vec<Elem>>) -> Result<GroupTable> {
        for r in &reps {
            if r.len() != n || !is_commuting(g, r) {
                return Err(LoopError::Input(format!("{} is not a commuting {n}-tuple", tuple_label(r))));
            }
        }
        GroupTable::assemble(g, n, reps)
    }

    fn assemble(g: &Arc<Group>, n: usize, reps: Vec<Vec<Elem>>) -> Result<GroupTable> {
        let mut index = HashMap::new();
        let mut cents = Vec::with_capacity(reps.len());
        for (i, r) in reps.iter().enumerate() {
            for x in g.elements() {
                let t = group_core::tuples::conj_tuple(g, x, r);
                if let Some(j) = index.insert(t, i) {
                    if j != i {
                        return Err(LoopError::Input(format!(
                            "{} and {} are conjugate in {}",
                            tuple_label(&reps[j]),
                            tuple_label(r),
                            g.name()
                        )));
                    }
                }
            }
            cents.push(Embedding::new(g, &g.centralizer(r), format!("C_{}{}", g.name(), tuple_label(r))));
        }
        Ok(GroupTable { group: g.clone(), n, reps, cents, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reps(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    pub fn index_of(&self, t: &[Elem]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

impl ColumnClasses for GroupTable {
    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn rep(&self, j: usize) -> &[Elem] {
        &self.reps[j]
    }

    fn cent(&self, j: usize) -> &Embedding {
        &self.cents[j]
    }

    fn conjugate_to_rep(&self, t: &[Elem]) -> Option<(usize, Elem)> {
        let j = self.index_of(t)?;
        let g = &self.group;
        let x = g.elements().find(|&x| t.iter().zip(&self.reps[j]).all(|(&a, &b)| g.conj(x, a) == b))?;
        Some((j, x))
    }
}
