use serde::{Deserialize, Serialize};
use zhu_core::voa::VoaPreset;
use zhu_core::zhu::{an_presentation, ZhuLevel, ZhuPresentation};

use super::Ctx;
use crate::error::CliResult;
use crate::report::{Report, Status};

/// Weight cutoff used when `--cutoff` is not given.
pub fn default_cutoff(level: usize) -> usize {
    2 * level + 8
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZhuReport {
    pub preset: VoaPreset,
    pub level: usize,
    pub weight_cutoff: usize,
    pub stabilized: bool,
    pub generators_complete: bool,
    pub relations_certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hint: Option<String>,
    pub presentation: ZhuPresentation,
}

pub fn run(ctx: &Ctx) -> CliResult<ZhuReport> {
    let cfg = &ctx.config;
    let preset = cfg.require_preset()?.clone();
    let cutoff = cfg.cutoff.unwrap_or_else(|| default_cutoff(cfg.level));
    let level = ZhuLevel::new(preset.clone(), cfg.level, cutoff)?;
    let presentation = ctx.cached("zhu-presentation", &level, || Ok(an_presentation(&level)?))?;
    let relations_certified = presentation.relations.iter().all(|r| r.certified && r.within_cutoff);
    let hint = (!relations_certified || !presentation.stabilized || !presentation.generators_complete)
        .then(|| format!("raise --cutoff above {cutoff}"));
    Ok(ZhuReport {
        preset,
        level: cfg.level,
        weight_cutoff: cutoff,
        stabilized: presentation.stabilized,
        generators_complete: presentation.generators_complete,
        relations_certified,
        hint,
        presentation,
    })
}

impl Report for ZhuReport {
    fn command(&self) -> &'static str {
        "zhu"
    }

    fn status(&self) -> Status {
        let mut why = Vec::new();
        if !self.relations_certified {
            why.push("a relation is not certified inside the window");
        }
        if !self.generators_complete {
            why.push("some representative is not a polynomial in x, y");
        }
        if !self.stabilized {
            why.push("result differs from the run at cutoff - 1");
        }
        Status {
            negative: None,
            unstable: (!why.is_empty()).then(|| {
                let mut s = why.join("; ");
                if let Some(h) = &self.hint {
                    s.push_str(&format!(" ({h})"));
                }
                s
            }),
        }
    }

    fn text(&self) -> String {
        let p = &self.presentation;
        let mut s = format!(
            "A_{}({}) truncated at weight {}\n",
            self.level, self.preset, self.weight_cutoff
        );
        s.push_str(&format!("x = {}\ny = {}\n", p.x, p.y));
        s.push_str(&format!(
            "O_n generators: {}, span dim: {}, representatives: {}\n",
            p.generator_count,
            p.span_dim,
            p.representatives.len()
        ));
        for r in &p.representatives {
            let poly = r.polynomial.as_deref().unwrap_or("?");
            s.push_str(&format!("  [{}] {} = {}\n", r.weight, r.label, poly));
        }
        for r in &p.relations {
            let mark = if r.certified && r.within_cutoff { "certified" } else { "NOT certified" };
            s.push_str(&format!(
                "relation {}: {} = 0 {} (cutoff used {})\n",
                r.name, r.polynomial, mark, r.cutoff_used
            ));
            if let Some(res) = &r.residual {
                s.push_str(&format!("  residual: {res}\n"));
            }
        }
        s.push_str(&format!("generators complete: {}\n", p.generators_complete));
        s.push_str(&format!("stabilized: {} ({})\n", p.stabilized, p.stabilization_note));
        s
    }
}
