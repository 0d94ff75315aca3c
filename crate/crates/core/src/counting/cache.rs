//! On-disk cache of point counts, keyed by surface fingerprint and degree.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CountError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub fingerprint: String,
    pub p: u32,
    pub n: usize,
    #[serde(rename = "N")]
    pub count: u64,
    pub wall_seconds: f64,
}

#[derive(Debug, Default)]
pub struct CountCache {
    path: Option<PathBuf>,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    entries: Vec<CacheEntry>,
}

impl CountCache {
    pub fn in_memory() -> Self {
        CountCache::default()
    }

    /// Opens the cache at `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Self, CountError> {
        let entries = match fs::read_to_string(path) {
            Ok(text) => {
                let file: CacheFile =
                    serde_json::from_str(&text).map_err(|e| CountError::Cache(format!("{}: {e}", path.display())))?;
                file.entries
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(CountError::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(CountCache { path: Some(path.to_path_buf()), entries })
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    pub fn get(&self, fingerprint: &str, n: usize) -> Option<u64> {
        self.entries.iter().find(|e| e.fingerprint == fingerprint && e.n == n).map(|e| e.count)
    }

    /// Adds an entry and persists. A conflicting value for the same key is an error.
    pub fn insert(&mut self, entry: CacheEntry) -> Result<(), CountError> {
        if let Some(old) = self.get(&entry.fingerprint, entry.n) {
            if old != entry.count {
                return Err(CountError::Inconsistent(format!(
                    "cache holds N_{} = {old}, new count is {}",
                    entry.n, entry.count
                )));
            }
            return Ok(());
        }
        self.entries.push(entry);
        self.save()
    }

    /// Write to a sibling temp file, then rename over the target.
    pub fn save(&self) -> Result<(), CountError> {
        let Some(path) = &self.path else { return Ok(()) };
        let err = |e: std::io::Error| CountError::Cache(format!("{}: {e}", path.display()));
        let text = serde_json::to_string_pretty(&CacheFile { entries: self.entries.clone() })
            .map_err(|e| CountError::Cache(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp).map_err(err)?;
            f.write_all(text.as_bytes()).map_err(err)?;
            f.sync_all().map_err(err)?;
        }
        fs::rename(&tmp, path).map_err(err)
    }
}
