use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use zhu_core::functor::AnModuleSpec;

use crate::cache::{Cache, CacheStatus};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub mod gdim;
pub mod induce;
pub mod omega;
pub mod selfcheck;
pub mod source;
pub mod zhu;

pub struct Ctx {
    pub config: RunConfig,
    pub cache: Option<Cache>,
}

impl Ctx {
    pub fn new(config: RunConfig) -> Self {
        let cache = config.cache_dir.clone().map(Cache::new);
        Ctx { config, cache }
    }

    /// Runs `compute` through the cache when one is configured.
    pub fn cached<T, M>(&self, kind: &str, material: &M, compute: impl FnOnce() -> CliResult<T>) -> CliResult<T>
    where
        T: Serialize + DeserializeOwned,
        M: Serialize,
    {
        let Some(cache) = &self.cache else {
            self.log(kind, CacheStatus::Disabled, None);
            return compute();
        };
        let material = serde_json::to_string(material)
            .map_err(|e| CliError::Config(format!("cache key encoding: {e}")))?;
        let (value, status, note) = cache.get_or_compute(kind, &material, compute)?;
        self.log(kind, status, note.as_deref());
        Ok(value)
    }

    fn log(&self, kind: &str, status: CacheStatus, note: Option<&str>) {
        if let Some(n) = note {
            eprintln!("zhu-lab: cache {kind}: {n}");
        }
        if self.config.verbose {
            eprintln!("zhu-lab: cache {kind}: {status:?}");
        }
    }
}

/// Reads a module spec from JSON, or TOML when the extension says so.
pub fn load_spec(path: &Path) -> CliResult<AnModuleSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let is_toml = path.extension().is_some_and(|e| e == "toml");
    let parsed: Result<AnModuleSpec, String> = if is_toml {
        toml::from_str(&text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.trim())))
}

pub fn require_spec(config: &RunConfig) -> CliResult<AnModuleSpec> {
    let path = config
        .spec
        .as_ref()
        .ok_or_else(|| CliError::Usage("--spec FILE is required for this command".into()))?;
    load_spec(path)
}
