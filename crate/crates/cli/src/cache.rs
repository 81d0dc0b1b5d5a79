use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bump the suffix whenever a cached payload type changes shape or meaning.
pub const ENGINE_VERSION: &str = concat!("zhu-lab ", env!("CARGO_PKG_VERSION"), " cache-1");

/// On-disk form of one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub kind: String,
    /// Canonical JSON of the inputs that determine the payload.
    pub material: String,
    /// SHA-256 of `payload`, lowercase hex.
    pub checksum: String,
    pub payload: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(String),
    Miss,
    Stale { found: String },
    Corrupt(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Computed,
    Disabled,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache::with_version(dir, ENGINE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache {
            dir: dir.into(),
            version: version.to_string(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Entries are addressed by the hash of kind and inputs; the version is checked on load.
    pub fn key(kind: &str, material: &str) -> String {
        sha256_hex(format!("{kind}\0{material}").as_bytes())
    }

    pub fn path(&self, kind: &str, material: &str) -> PathBuf {
        self.dir.join(format!("{}.json", Cache::key(kind, material)))
    }

    pub fn load(&self, kind: &str, material: &str) -> Lookup {
        let bytes = match fs::read(self.path(kind, material)) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let entry: CacheEntry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupt(format!("unreadable entry: {e}")),
        };
        if entry.version != self.version {
            return Lookup::Stale { found: entry.version };
        }
        if entry.kind != kind || entry.material != material {
            return Lookup::Corrupt("key collision or edited entry".into());
        }
        if sha256_hex(entry.payload.as_bytes()) != entry.checksum {
            return Lookup::Corrupt("checksum mismatch".into());
        }
        Lookup::Hit(entry.payload)
    }

    /// Writes a temp file next to the target and renames it over; the last writer wins.
    pub fn store(&self, kind: &str, material: &str, payload: &str) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            version: self.version.clone(),
            kind: kind.to_string(),
            material: material.to_string(),
            checksum: sha256_hex(payload.as_bytes()),
            payload: payload.to_string(),
        };
        let target = self.path(kind, material);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            Cache::key(kind, material),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let result = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(&entry)?)?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result.map(|()| target)
    }

    /// Loads a valid entry or computes, stores and returns a fresh one.
    /// Stale and corrupt entries are recomputed and overwritten, never reused.
    pub fn get_or_compute<T, E>(
        &self,
        kind: &str,
        material: &str,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<(T, CacheStatus, Option<String>), E>
    where
        T: Serialize + DeserializeOwned,
    {
        let mut note = None;
        match self.load(kind, material) {
            Lookup::Hit(payload) => match serde_json::from_str(&payload) {
                Ok(v) => return Ok((v, CacheStatus::Hit, None)),
                Err(e) => note = Some(format!("discarding undecodable entry: {e}")),
            },
            Lookup::Miss => {}
            Lookup::Stale { found } => note = Some(format!("discarding entry from {found:?}")),
            Lookup::Corrupt(why) => note = Some(format!("discarding corrupt entry: {why}")),
        }
        let value = compute()?;
        match serde_json::to_string(&value) {
            Ok(payload) => {
                if let Err(e) = self.store(kind, material, &payload) {
                    note = Some(format!("cache write failed: {e}"));
                }
            }
            Err(e) => note = Some(format!("cache encode failed: {e}")),
        }
        Ok((value, CacheStatus::Computed, note))
    }
}
