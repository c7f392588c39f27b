//! On-disk result cache. Purely an optimization: a missing, stale or
//! corrupted entry is recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::table::{Table, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub n: usize,
    pub mode: String,
    pub kind: String,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let kind: String = self
            .kind
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        format!("v{SCHEMA_VERSION}-n{}-{}-{kind}.json", self.n, self.mode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub n: usize,
    pub mode: String,
    pub kind: String,
    /// SHA-256 of `payload`, hex.
    pub checksum: String,
    /// The table, JSON-encoded.
    pub payload: String,
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

impl CacheEntry {
    pub fn new(key: &CacheKey, table: &Table) -> Self {
        let payload = serde_json::to_string(table).expect("table serializes");
        Self {
            schema_version: SCHEMA_VERSION,
            n: key.n,
            mode: key.mode.clone(),
            kind: key.kind.clone(),
            checksum: checksum(&payload),
            payload,
        }
    }
}

#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(Table),
    Miss,
    /// Entry present but unreadable or failing its checksum.
    Corrupted(String),
    /// Entry from another schema version or key.
    Stale,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> CliResult<Self> {
        if dir.exists() && !dir.is_dir() {
            return Err(CliError::Cache(format!(
                "{} is not a directory",
                dir.display()
            )));
        }
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Cache(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn lookup(&self, key: &CacheKey) -> Lookup {
        let path = self.path_for(key);
        let Ok(text) = fs::read_to_string(&path) else {
            return Lookup::Miss;
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupted(format!("unparseable entry: {e}")),
        };
        if entry.schema_version != SCHEMA_VERSION
            || entry.n != key.n
            || entry.mode != key.mode
            || entry.kind != key.kind
        {
            return Lookup::Stale;
        }
        if checksum(&entry.payload) != entry.checksum {
            return Lookup::Corrupted("checksum mismatch".into());
        }
        match serde_json::from_str(&entry.payload) {
            Ok(table) => Lookup::Hit(table),
            Err(e) => Lookup::Corrupted(format!("unparseable payload: {e}")),
        }
    }

    pub fn store(&self, key: &CacheKey, table: &Table) -> CliResult<()> {
        let entry = CacheEntry::new(key, table);
        let text = serde_json::to_string(&entry).expect("entry serializes");
        let path = self.path_for(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| CliError::Cache(format!("cannot write {}: {e}", path.display())))
    }

    /// Returns the cached table or computes and stores it.
    pub fn get_or_compute(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> CliResult<Table>,
    ) -> CliResult<Table> {
        match self.lookup(key) {
            Lookup::Hit(table) => return Ok(table),
            Lookup::Corrupted(reason) => {
                eprintln!(
                    "warning: cache entry {} is corrupted ({reason}); recomputing",
                    self.path_for(key).display()
                );
            }
            Lookup::Miss | Lookup::Stale => {}
        }
        let table = compute()?;
        self.store(key, &table)?;
        Ok(table)
    }
}
