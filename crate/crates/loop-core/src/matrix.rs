//! Sparse matrices of virtual bisets between formal unions of groups.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use burnside_core::{BisetJson, VirtualBiset};
use fusion_core::{project_to_fusion, Fusoid};
use group_core::Group;
use serde::{Deserialize, Serialize};

use crate::error::{LoopError, Result};

/// The components of a source or target: their groups, display labels and,
/// for formal unions of fusion systems, the systems themselves.
#[derive(Clone, Debug)]
pub struct Objects {
    pub groups: Vec<Arc<Group>>,
    pub labels: Vec<String>,
    pub fusoid: Option<Fusoid>,
}

impl Objects {
    pub fn of_fusoid(d: &Fusoid, labels: Vec<String>) -> Objects {
        assert_eq!(labels.len(), d.len());
        Objects { groups: d.components().iter().map(|c| c.s().clone()).collect(), labels, fusoid: Some(d.clone()) }
    }

    pub fn single(d: &Fusoid) -> Objects {
        Objects::of_fusoid(d, d.components().iter().map(|c| c.name().to_string()).collect())
    }

    pub fn of_groups(groups: Vec<Arc<Group>>, labels: Vec<String>) -> Objects {
        assert_eq!(labels.len(), groups.len());
        Objects { groups, labels, fusoid: None }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Same groups in the same order.
    pub fn matches(&self, other: &Objects) -> bool {
        self.len() == other.len() && self.groups.iter().zip(&other.groups).all(|(a, b)| **a == **b)
    }

    /// `diag(ω)` for fusoids, the diagonal of identity bisets otherwise.
    pub fn identity(&self) -> Result<BisetMatrix> {
        let mut m = BisetMatrix::zero(self, self);
        for i in 0..self.len() {
            let v = match &self.fusoid {
                Some(d) => (*d.components()[i].omega()?).clone(),
                None => VirtualBiset::identity(&self.groups[i]),
            };
            m.set(i, i, v);
        }
        Ok(m)
    }
}

#[derive(Clone)]
pub struct BisetMatrix {
    pub domain: Objects,
    pub codomain: Objects,
    entries: BTreeMap<(usize, usize), VirtualBiset>,
}

impl fmt::Debug for BisetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BisetMatrix {} x {}", self.domain.len(), self.codomain.len())?;
        for (&(i, j), v) in &self.entries {
            writeln!(f, "  [{} -> {}] {} terms", self.domain.labels[i], self.codomain.labels[j], v.len())?;
        }
        Ok(())
    }
}

impl PartialEq for BisetMatrix {
    fn eq(&self, other: &BisetMatrix) -> bool {
        self.domain.matches(&other.domain) && self.codomain.matches(&other.codomain) && self.entries == other.entries
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub biset: BisetJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<EntryJson>,
}

impl BisetMatrix {
    pub fn zero(domain: &Objects, codomain: &Objects) -> BisetMatrix {
        BisetMatrix { domain: domain.clone(), codomain: codomain.clone(), entries: BTreeMap::new() }
    }

    /// A single biset as a `1 × 1` matrix.
    pub fn from_biset(x: &VirtualBiset, domain: &Objects, codomain: &Objects) -> BisetMatrix {
        let mut m = BisetMatrix::zero(domain, codomain);
        m.set(0, 0, x.clone());
        m
    }

    pub fn rows(&self) -> usize {
        self.domain.len()
    }

    pub fn cols(&self) -> usize {
        self.codomain.len()
    }

    /// Replaces an entry; zero entries are dropped. Panics if the biset does
    /// not connect the component groups.
    pub fn set(&mut self, i: usize, j: usize, v: VirtualBiset) {
        assert!(
            **v.left() == *self.domain.groups[i] && **v.right() == *self.codomain.groups[j],
            "entry ({i}, {j}) connects {} -> {}, expected {} -> {}",
            v.left().name(),
            v.right().name(),
            self.domain.groups[i].name(),
            self.codomain.groups[j].name()
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &VirtualBiset) {
        let sum = match self.entries.get(&(i, j)) {
            Some(cur) => cur + v,
            None => v.clone(),
        };
        self.set(i, j, sum);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&VirtualBiset> {
        self.entries.get(&(i, j))
    }

    pub fn entry(&self, i: usize, j: usize) -> VirtualBiset {
        self.get(i, j).cloned().unwrap_or_else(|| VirtualBiset::zero(&self.domain.groups[i], &self.codomain.groups[j]))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &VirtualBiset)> {
        self.entries.iter()
    }

    pub fn nonzero(&self) -> usize {
        self.entries.len()
    }

    /// `self ⊙ other`
    pub fn compose(&self, other: &BisetMatrix) -> Result<BisetMatrix> {
        if !self.codomain.matches(&other.domain) {
            return Err(LoopError::Input(format!(
                "cannot compose: {} target components against {} source components",
                self.cols(),
                other.rows()
            )));
        }
        let mut by_row: Vec<Vec<(usize, &VirtualBiset)>> = vec![Vec::new(); other.rows()];
        for (&(j, k), v) in &other.entries {
            by_row[j].push((k, v));
        }
        let mut acc: BTreeMap<(usize, usize), VirtualBiset> = BTreeMap::new();
        for (&(i, j), x) in &self.entries {
            for &(k, y) in &by_row[j] {
                let z = x.compose(y)?;
                match acc.get_mut(&(i, k)) {
                    Some(cur) => *cur = &*cur + &z,
                    None => {
                        acc.insert((i, k), z);
                    }
                }
            }
        }
        let mut out = BisetMatrix::zero(&self.domain, &other.codomain);
        for ((i, k), v) in acc {
            out.set(i, k, v);
        }
        Ok(out)
    }

    pub fn odot(&self, other: &BisetMatrix) -> BisetMatrix {
        self.compose(other).expect("composable matrices")
    }

    /// First position where the entries differ.
    pub fn first_difference(&self, other: &BisetMatrix) -> Option<(usize, usize)> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find(|k| self.entries.get(k) != other.entries.get(k)).copied()
    }

    /// Whether every entry is stable for its row and column systems.
    pub fn is_stable(&self) -> Result<bool> {
        let (Some(d), Some(c)) = (&self.domain.fusoid, &self.codomain.fusoid) else {
            return Err(LoopError::Input("stability needs fusion systems on both sides".into()));
        };
        for (&(i, j), v) in &self.entries {
            if project_to_fusion(v, &d.components()[i], &c.components()[j])? != *v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ω_E ⊙ self ⊙ ω_F` entrywise.
    pub fn project(&self) -> Result<BisetMatrix> {
        let (Some(d), Some(c)) = (&self.domain.fusoid, &self.codomain.fusoid) else {
            return Err(LoopError::Input("projection needs fusion systems on both sides".into()));
        };
        let mut out = BisetMatrix::zero(&self.domain, &self.codomain);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, project_to_fusion(v, &d.components()[i], &c.components()[j])?);
        }
        Ok(out)
    }

    /// Entrywise map, keeping the shape.
    pub fn map(&self, f: impl Fn(usize, usize, &VirtualBiset) -> VirtualBiset) -> BisetMatrix {
        let mut out = BisetMatrix::zero(&self.domain, &self.codomain);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, f(i, j, v));
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.domain.labels.clone(),
            cols: self.codomain.labels.clone(),
            entries: self.entries.iter().map(|(&(row, col), v)| EntryJson { row, col, biset: v.to_json() }).collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json()).expect("serializable")
    }

    /// Reads entries back against known components.
    pub fn from_json(j: &MatrixJson, domain: &Objects, codomain: &Objects) -> Result<BisetMatrix> {
        if j.rows.len() != domain.len() || j.cols.len() != codomain.len() {
            return Err(LoopError::Input("matrix shape does not match the components".into()));
        }
        let mut out = BisetMatrix::zero(domain, codomain);
        for e in &j.entries {
            if e.row >= domain.len() || e.col >= codomain.len() {
                return Err(LoopError::Input(format!("entry ({}, {}) out of range", e.row, e.col)));
            }
            let v = VirtualBiset::from_json(&e.biset)?;
            if **v.left() != *domain.groups[e.row] || **v.right() != *codomain.groups[e.col] {
                return Err(LoopError::Input(format!("entry ({}, {}) has the wrong groups", e.row, e.col)));
            }
            out.add_to(e.row, e.col, &v.with_groups(&domain.groups[e.row], &codomain.groups[e.col]));
        }
        Ok(out)
    }
}
