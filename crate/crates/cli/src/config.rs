use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;
use zhu_core::rational::parse_q;
use zhu_core::voa::VoaPreset;
use zhu_core::Q;

use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "ZHU_LAB_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Verma,
    Heisenberg,
    Vacuum,
    Induced,
}

/// Flags shared by every command. The config file accepts the same keys in kebab-case.
#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunArgs {
    /// TOML file with defaults for any of these flags
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_parser = ["heisenberg", "virasoro"])]
    pub preset: Option<String>,
    /// Conformal shift of the Heisenberg preset, "p/q"
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Central charge of the Virasoro preset, "p/q"
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Lowest weight of a Verma module
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Heisenberg zero-mode eigenvalue
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Size of the Heisenberg zero-mode Jordan block
    #[arg(long)]
    pub k: Option<usize>,

    #[arg(long)]
    pub level: Option<usize>,
    /// Weight cutoff W for Zhu algebra computations
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Degree cutoff D for modules
    #[arg(long)]
    pub max_degree: Option<usize>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, env = CACHE_ENV, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub no_cache: Option<bool>,

    #[arg(long, value_enum)]
    pub module: Option<ModuleKind>,
    /// Module spec file (JSON or TOML) holding preset, n, x, y
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,

    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub allow_unstable: Option<bool>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub regrade: Option<bool>,
    /// Compare gdim coefficients against k * p(d)
    #[arg(long, allow_hyphen_values = true)]
    pub compare: Option<String>,
    /// Report cache hits and misses on stderr
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub verbose: Option<bool>,
}

impl RunArgs {
    /// Fills every unset flag from `file`.
    fn or(self, file: RunArgs) -> RunArgs {
        macro_rules! pick {
            ($($f:ident),*) => { RunArgs { config: self.config, $($f: self.$f.or(file.$f)),* } };
        }
        pick!(
            preset, a, c, h, lambda, k, level, cutoff, max_degree, format, cache_dir, no_cache,
            module, spec, allow_unstable, regrade, compare, verbose
        )
    }
}

/// Validated configuration for one command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub preset: Option<VoaPreset>,
    pub h: Option<Q>,
    pub lambda: Option<Q>,
    pub k: usize,
    pub level: usize,
    pub cutoff: Option<usize>,
    pub max_degree: usize,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub module: Option<ModuleKind>,
    pub spec: Option<PathBuf>,
    pub allow_unstable: bool,
    pub regrade: bool,
    pub compare: Option<Q>,
    pub verbose: bool,
}

pub const DEFAULT_MAX_DEGREE: usize = 6;

fn rational(flag: &str, v: Option<String>) -> CliResult<Option<Q>> {
    v.map(|s| parse_q(&s).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .transpose()
}

fn positive(flag: &str, v: Option<usize>) -> CliResult<Option<usize>> {
    match v {
        Some(0) => Err(CliError::Usage(format!("--{flag} must be positive"))),
        v => Ok(v),
    }
}

fn read_file(path: &Path) -> CliResult<RunArgs> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("zhu-lab"))
}

impl RunConfig {
    /// Precedence: flag, then environment (cache dir only), then config file, then defaults.
    pub fn resolve(args: RunArgs) -> CliResult<RunConfig> {
        let args = match &args.config {
            Some(path) => {
                let mut file = read_file(path)?;
                // relative paths in the file are relative to the file
                let base = path.parent().unwrap_or(Path::new(""));
                file.spec = file.spec.map(|s| base.join(s));
                file.cache_dir = file.cache_dir.map(|s| base.join(s));
                args.or(file)
            }
            None => args,
        };
        let a = rational("a", args.a)?;
        let c = rational("c", args.c)?;
        let preset = match args.preset.as_deref() {
            None if a.is_some() || c.is_some() => {
                return Err(CliError::Usage("--a/--c given without --preset".into()))
            }
            None => None,
            Some("heisenberg") => match (a, c) {
                (Some(a), None) => Some(VoaPreset::heisenberg(a)),
                (_, Some(_)) => return Err(CliError::Usage("--c does not apply to the heisenberg preset".into())),
                (None, None) => return Err(CliError::Usage("the heisenberg preset needs --a".into())),
            },
            Some("virasoro") => match (a, c) {
                (None, Some(c)) => Some(VoaPreset::virasoro(c)),
                (Some(_), _) => return Err(CliError::Usage("--a does not apply to the virasoro preset".into())),
                (None, None) => return Err(CliError::Usage("the virasoro preset needs --c".into())),
            },
            Some(other) => return Err(CliError::Usage(format!("unknown preset {other:?}"))),
        };
        let cache_dir = match args.no_cache {
            Some(true) => None,
            _ => args.cache_dir.or_else(default_cache_dir),
        };
        Ok(RunConfig {
            preset,
            h: rational("h", args.h)?,
            lambda: rational("lambda", args.lambda)?,
            k: positive("k", args.k)?.unwrap_or(1),
            level: args.level.unwrap_or(0),
            cutoff: positive("cutoff", args.cutoff)?,
            // degree cutoff 0 is meaningful: only the lowest piece
            max_degree: args.max_degree.unwrap_or(DEFAULT_MAX_DEGREE),
            format: args.format.unwrap_or(Format::Text),
            cache_dir,
            module: args.module,
            spec: args.spec,
            allow_unstable: args.allow_unstable.unwrap_or(false),
            regrade: args.regrade.unwrap_or(false),
            compare: rational("compare", args.compare)?,
            verbose: args.verbose.unwrap_or(false),
        })
    }

    pub fn require_preset(&self) -> CliResult<&VoaPreset> {
        self.preset
            .as_ref()
            .ok_or_else(|| CliError::Usage("--preset is required for this command".into()))
    }
}
