//! On-disk cache of subgroup lists, one file per group, named by the digest
//! of the multiplication table.
//!
//! The cache directory is taken from `FUSOID_CACHE_DIR` unless set
//! explicitly with [`set_cache_dir`]. Without either, nothing is cached.

use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;

pub const CACHE_ENV: &str = "FUSOID_CACHE_DIR";

static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();

fn dir_cell() -> &'static Mutex<Option<PathBuf>> {
    DIR.get_or_init(|| Mutex::new(std::env::var_os(CACHE_ENV).map(PathBuf::from)))
}

/// Overrides the cache directory for this process (`None` disables caching).
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *dir_cell().lock().expect("poisoned") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    dir_cell().lock().expect("poisoned").clone()
}

fn artifact_path(dir: &Path, g: &Group, kind: &str) -> PathBuf {
    dir.join(format!("{}.{kind}.json", g.digest_hex()))
}

pub(crate) fn load_subgroups(g: &Group) -> Option<Vec<Subgroup>> {
    let dir = cache_dir()?;
    let text = std::fs::read_to_string(artifact_path(&dir, g, "subgroups")).ok()?;
    let lists: Vec<Vec<Elem>> = serde_json::from_str(&text).ok()?;
    // a corrupt or foreign file is ignored rather than trusted
    if lists.iter().any(|m| m.iter().any(|&x| x as usize >= g.order()) || !Subgroup::is_closed(g, m)) {
        return None;
    }
    Some(lists.into_iter().map(|m| Subgroup::from_members(g.order(), m)).collect())
}

pub(crate) fn store_subgroups(g: &Group, subs: &[Subgroup]) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let lists: Vec<&[Elem]> = subs.iter().map(|s| s.members()).collect();
    let Ok(text) = serde_json::to_string(&lists) else { return };
    let path = artifact_path(&dir, g, "subgroups");
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if std::fs::write(&tmp, text).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}
