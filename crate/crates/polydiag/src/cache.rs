//! Keyed JSON store for expensive enumerations.
//!
//! Entries are keyed by `(kind, polytope, n, schema_version)` and carry a
//! SHA-256 checksum of the payload; entries with a stale schema version or
//! a bad checksum are ignored, so a cache hit always reproduces exactly
//! what a fresh computation would serialize.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::SCHEMA_VERSION;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "POLYDIAG_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    schema_version: u32,
    kind: String,
    polytope: String,
    n: u8,
    checksum: String,
    payload: String,
}

pub struct CacheStore {
    dir: PathBuf,
}

impl CacheStore {
    pub fn new(dir: &Path) -> std::io::Result<CacheStore> {
        fs::create_dir_all(dir)?;
        Ok(CacheStore {
            dir: dir.to_path_buf(),
        })
    }

    /// The store named by `POLYDIAG_CACHE_DIR`, if set.
    pub fn from_env() -> Option<CacheStore> {
        let dir = std::env::var_os(CACHE_DIR_ENV)?;
        CacheStore::new(Path::new(&dir)).ok()
    }

    fn path(&self, kind: &str, polytope: &str, n: u8) -> PathBuf {
        self.dir
            .join(format!("{kind}-{polytope}{n}-v{SCHEMA_VERSION}.json"))
    }

    fn checksum(payload: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(payload.as_bytes());
        format!("{:x}", hasher.finalize())
    }

    /// Fetch a payload; `None` on miss, stale version, or corruption.
    pub fn get(&self, kind: &str, polytope: &str, n: u8) -> Option<String> {
        let text = fs::read_to_string(self.path(kind, polytope, n)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.schema_version != SCHEMA_VERSION
            || entry.kind != kind
            || entry.polytope != polytope
            || entry.n != n
            || Self::checksum(&entry.payload) != entry.checksum
        {
            return None;
        }
        Some(entry.payload)
    }

    pub fn put(&self, kind: &str, polytope: &str, n: u8, payload: &str) -> std::io::Result<()> {
        let entry = CacheEntry {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            polytope: polytope.to_string(),
            n,
            checksum: Self::checksum(payload),
            payload: payload.to_string(),
        };
        let mut text = serde_json::to_string(&entry).expect("cache entry serializes");
        text.push('\n');
        fs::write(self.path(kind, polytope, n), text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::new(dir.path()).unwrap();
        assert!(store.get("delta", "P", 3).is_none());
        store.put("delta", "P", 3, "[1,2,3]").unwrap();
        assert_eq!(store.get("delta", "P", 3).unwrap(), "[1,2,3]");

        // corrupt the file; the entry must be ignored
        let path = dir.path().join(format!("delta-P3-v{SCHEMA_VERSION}.json"));
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("[1,2,3]", "[1,2,4]")).unwrap();
        assert!(store.get("delta", "P", 3).is_none());
    }
}
