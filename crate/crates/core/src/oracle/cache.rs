//! On-disk memo of oracle counts, enabled by setting `SATAKE_CACHE_DIR`.
//!
//! One JSON file per query. Entries written under another `CACHE_VERSION` are ignored.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "SATAKE_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    cache_version: u32,
    key: String,
    value: u64,
}

pub fn key(kind: &str, group: &str, q: u32, parts: &[&[i64]]) -> String {
    let mut k = format!("{kind}_{group}_q{q}");
    for p in parts {
        k.push('_');
        k.push_str(&p.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    }
    k
}

fn path_for(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let name: String = key.chars().map(|c| if c.is_ascii_alphanumeric() || "_,+-".contains(c) { c } else { '~' }).collect();
    Some(PathBuf::from(dir).join(format!("{name}.json")))
}

pub fn lookup(key: &str) -> Option<u64> {
    let text = std::fs::read_to_string(path_for(key)?).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    (entry.cache_version == CACHE_VERSION && entry.key == key).then_some(entry.value)
}

/// Best effort: an unwritable cache directory only costs recomputation.
pub fn store(key: &str, value: u64) {
    let Some(path) = path_for(key) else { return };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let entry = Entry { cache_version: CACHE_VERSION, key: key.to_string(), value };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if let Ok(text) = serde_json::to_string(&entry) {
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

pub fn cached(key: &str, compute: impl FnOnce() -> Result<u64>) -> Result<u64> {
    if let Some(v) = lookup(key) {
        return Ok(v);
    }
    let v = compute()?;
    store(key, v);
    Ok(v)
}
