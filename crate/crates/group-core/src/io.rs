//! Group input files:
//! `{ "name": str, "kind": "table" | "perm", "table": [[int]] | "generators": [[cycle]] }`.
//! Permutation points are 0-based; each generator is a list of cycles.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::GroupError;
use crate::group::{intern, Group};
use crate::perm::{from_cycles, perm_group};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupFile {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<usize>>>>,
}

impl GroupFile {
    pub fn from_group(g: &Group) -> GroupFile {
        GroupFile { name: g.name().to_string(), kind: "table".into(), table: Some(g.table_rows()), generators: None }
    }

    pub fn build(&self) -> Result<Arc<Group>, GroupError> {
        match self.kind.as_str() {
            "table" => {
                let rows = self.table.as_ref().ok_or_else(|| GroupError::Malformed("missing \"table\"".into()))?;
                Ok(intern(Group::from_table(&self.name, rows)?))
            }
            "perm" => {
                let gens =
                    self.generators.as_ref().ok_or_else(|| GroupError::Malformed("missing \"generators\"".into()))?;
                let degree = gens.iter().flatten().flatten().map(|&x| x + 1).max().unwrap_or(1);
                let perms = gens.iter().map(|cycles| from_cycles(degree, cycles)).collect::<Result<Vec<_>, _>>()?;
                perm_group(&self.name, degree, &perms)
            }
            other => Err(GroupError::Malformed(format!("unknown kind {other:?}"))),
        }
    }
}

/// Resolves a catalog name, or reads a group file when the argument is a path.
pub fn resolve(spec: &str) -> Result<Arc<Group>, GroupError> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        return file.build();
    }
    catalog::lookup(spec)
}

/// Reference to a group inside other JSON documents: the catalog name when it
/// resolves to the same table, otherwise the full table.
pub fn group_ref(g: &Group) -> serde_json::Value {
    match catalog::lookup(g.name()) {
        Ok(c) if *c == *g => serde_json::Value::String(g.name().to_string()),
        _ => serde_json::to_value(GroupFile::from_group(g)).expect("serializable"),
    }
}

pub fn parse_group_ref(v: &serde_json::Value) -> Result<Arc<Group>, GroupError> {
    match v {
        serde_json::Value::String(s) => catalog::lookup(s),
        other => {
            let file: GroupFile = serde_json::from_value(other.clone())?;
            file.build()
        }
    }
}
