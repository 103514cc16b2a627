//! Optional on-disk memo of symbolic determinants.
//!
//! Enabled only when `ASMDET_CACHE_DIR` names a directory. Entries are loaded
//! into the library memo table before a command runs and written back after,
//! so large `d_{n,k}` are computed once across invocations. Cached values are
//! trusted; delete the file to force recomputation.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use asmdet_core::detkernel::{cached, preload};
use asmdet_core::{DetInstance, QLaurent};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "ASMDET_CACHE_DIR";
const CACHE_FILE: &str = "determinants.json";
const CACHE_SCHEMA: &str = "asmdet-cache/1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    n: usize,
    k: i64,
    value: QLaurent,
}

pub fn directory() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn load(dir: &Path) -> io::Result<()> {
    let path = dir.join(CACHE_FILE);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(()),
        Err(e) => return Err(e),
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    if file.schema != CACHE_SCHEMA {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("unknown cache schema {:?}", file.schema)));
    }
    for e in file.entries {
        if e.n > 0 {
            preload(DetInstance { n: e.n, k: e.k }, e.value);
        }
    }
    Ok(())
}

pub fn store(dir: &Path) -> io::Result<()> {
    let entries: Vec<Entry> = cached().into_iter().map(|(inst, value)| Entry { n: inst.n, k: inst.k, value }).collect();
    if entries.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(dir)?;
    let file = CacheFile { schema: CACHE_SCHEMA.to_string(), entries };
    let text = serde_json::to_string(&file).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    // write-then-rename so a concurrent reader never sees a torn file
    let tmp = dir.join(format!("{CACHE_FILE}.{}.tmp", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(tmp, dir.join(CACHE_FILE))
}
