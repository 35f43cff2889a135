//! Fingerprint memoization in the directory named by `CURVEGRAPH_CACHE`.
//!
//! One JSON map per directory, keyed by crate version, disk size and the
//! class expression. A missing or unreadable cache is treated as empty.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::PathBuf;

use curvegraph::planar::Fingerprint;

pub const CACHE_ENV: &str = "CURVEGRAPH_CACHE";
const FILE: &str = "fingerprints.json";

pub struct FingerprintCache {
    dir: Option<PathBuf>,
    map: BTreeMap<String, Fingerprint>,
    dirty: bool,
}

impl FingerprintCache {
    pub fn open() -> Self {
        let dir = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()).map(PathBuf::from);
        let map = dir
            .as_ref()
            .and_then(|d| fs::read_to_string(d.join(FILE)).ok())
            .and_then(|t| serde_json::from_str(&t).ok())
            .unwrap_or_default();
        FingerprintCache { dir, map, dirty: false }
    }

    pub fn key(n: usize, expr: &str) -> String {
        let expr: Vec<&str> = expr.split_whitespace().collect();
        format!("{} n={n} {}", env!("CARGO_PKG_VERSION"), expr.join(" "))
    }

    pub fn get_or_insert<E>(
        &mut self,
        key: String,
        compute: impl FnOnce() -> Result<Fingerprint, E>,
    ) -> Result<Fingerprint, E> {
        if let Some(f) = self.map.get(&key) {
            return Ok(f.clone());
        }
        let f = compute()?;
        if self.dir.is_some() {
            self.map.insert(key, f.clone());
            self.dirty = true;
        }
        Ok(f)
    }

    pub fn save(&self) -> io::Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{FILE}.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&self.map)?)?;
        fs::rename(tmp, dir.join(FILE))
    }
}
