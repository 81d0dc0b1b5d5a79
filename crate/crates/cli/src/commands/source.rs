use serde::{Deserialize, Serialize};
use zhu_core::functor::{heisenberg_module, induce_ln_with, vacuum_module, verma, AnModuleSpec, InduceOptions};
use zhu_core::rational::{fmt_q, q};
use zhu_core::voa::{GradedModule, VoaKind, VoaPreset};

use super::require_spec;
use crate::config::{ModuleKind, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::pretty;

/// The module a command works on, as recorded in its report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "module", rename_all = "lowercase")]
pub enum ModuleSource {
    Verma { c: String, h: String },
    Heisenberg { a: String, lambda: String, k: usize },
    Vacuum { preset: VoaPreset },
    Induced { spec: AnModuleSpec, regrade: bool },
}

impl ModuleSource {
    /// Picks the module from `--module`, defaulting to the preset's natural family.
    pub fn from_config(cfg: &RunConfig) -> CliResult<ModuleSource> {
        let kind = match (cfg.module, &cfg.preset, &cfg.spec) {
            (Some(k), _, _) => k,
            (None, _, Some(_)) => ModuleKind::Induced,
            (None, Some(p), None) if p.kind == VoaKind::Virasoro => ModuleKind::Verma,
            (None, Some(_), None) => ModuleKind::Heisenberg,
            (None, None, None) => {
                return Err(CliError::Usage("give --module with --preset, or --spec".into()))
            }
        };
        let preset = || cfg.require_preset();
        let expect = |want: VoaKind, p: &VoaPreset| {
            if p.kind == want {
                Ok(())
            } else {
                Err(CliError::Usage(format!("--module needs the {want} preset, got {}", p.kind)))
            }
        };
        Ok(match kind {
            ModuleKind::Verma => {
                let p = preset()?;
                expect(VoaKind::Virasoro, p)?;
                let h = cfg.h.clone().ok_or_else(|| CliError::Usage("verma needs --h".into()))?;
                ModuleSource::Verma { c: fmt_q(&p.param), h: fmt_q(&h) }
            }
            ModuleKind::Heisenberg => {
                let p = preset()?;
                expect(VoaKind::Heisenberg, p)?;
                let lambda = cfg.lambda.clone().unwrap_or_else(|| q(0));
                ModuleSource::Heisenberg { a: fmt_q(&p.param), lambda: fmt_q(&lambda), k: cfg.k }
            }
            ModuleKind::Vacuum => ModuleSource::Vacuum { preset: preset()?.clone() },
            ModuleKind::Induced => ModuleSource::Induced { spec: require_spec(cfg)?, regrade: cfg.regrade },
        })
    }

    pub fn build(&self, max_degree: usize) -> CliResult<GradedModule> {
        let p = |s: &str| zhu_core::rational::parse_q(s).map_err(CliError::from);
        Ok(match self {
            ModuleSource::Verma { c, h } => verma(p(c)?, p(h)?, max_degree)?,
            ModuleSource::Heisenberg { a, lambda, k } => heisenberg_module(p(a)?, p(lambda)?, *k, max_degree)?,
            ModuleSource::Vacuum { preset } => vacuum_module(preset, max_degree)?,
            ModuleSource::Induced { spec, regrade } => {
                let ind = induce_ln_with(spec, max_degree, &InduceOptions { regrade: *regrade })?;
                match ind.regraded {
                    Some(m) => m,
                    None => ind.module,
                }
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            ModuleSource::Verma { c, h } => format!("Verma M(c = {}, h = {})", pretty(c), pretty(h)),
            ModuleSource::Heisenberg { a, lambda, k } => {
                format!("Heisenberg M_{}(1) with zero mode J_{k}({})", pretty(a), pretty(lambda))
            }
            ModuleSource::Vacuum { preset } => format!("vacuum module of {preset}"),
            ModuleSource::Induced { spec, .. } => {
                format!("L_{}(U) over {}, dim U = {}", spec.level(), spec.preset(), spec.dim())
            }
        }
    }
}
