use serde::{Deserialize, Serialize};
use zhu_core::functor::{degree_bound_check, omega_n, omega_quotient_spec, DegreeBoundReport, OmegaSummary};

use super::source::ModuleSource;
use super::Ctx;
use crate::error::CliResult;
use crate::report::{join, Csv, Report, Status};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaReport {
    pub source: ModuleSource,
    pub description: String,
    pub level: usize,
    pub max_degree: usize,
    pub module_dims: Vec<usize>,
    pub omega: OmegaSummary,
    /// `Ω_{n-1}`, absent at level 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_lower: Option<OmegaSummary>,
    /// Graded dimensions of `Ω_n / Ω_{n-1}`.
    pub quotient_dims: Vec<usize>,
    pub degree_bound: DegreeBoundReport,
}

pub fn run(ctx: &Ctx) -> CliResult<OmegaReport> {
    let cfg = &ctx.config;
    let source = ModuleSource::from_config(cfg)?;
    let w = source.build(cfg.max_degree)?;
    let n = cfg.level;
    let omega = omega_n(&w, n)?.summary();
    let omega_lower = if n > 0 { Some(omega_n(&w, n - 1)?.summary()) } else { None };
    let (quotient_dims, _, _, _) = omega_quotient_spec(&w, n)?;
    Ok(OmegaReport {
        description: source.describe(),
        source,
        level: n,
        max_degree: cfg.max_degree,
        module_dims: w.dims(),
        omega,
        omega_lower,
        quotient_dims,
        degree_bound: degree_bound_check(&w, n)?,
    })
}

impl Report for OmegaReport {
    fn command(&self) -> &'static str {
        "omega"
    }

    fn status(&self) -> Status {
        let stable = self.omega.stabilized
            && self.omega_lower.as_ref().is_none_or(|o| o.stabilized)
            && self.degree_bound.stabilized;
        Status {
            negative: (!self.degree_bound.holds).then(|| "degree bound violated inside the window".to_string()),
            unstable: (!stable).then(|| {
                format!(
                    "Omega did not stabilize by state weight {}; raise --max-degree",
                    self.omega.state_weight
                )
            }),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{}; degrees 0..={}\n", self.description, self.max_degree);
        s.push_str(&format!("dims W(d):        [{}]\n", join(&self.module_dims, ", ")));
        s.push_str(&format!("dims Omega_{}:     [{}]\n", self.level, join(&self.omega.dims, ", ")));
        if let Some(lo) = &self.omega_lower {
            s.push_str(&format!("dims Omega_{}:     [{}]\n", self.level - 1, join(&lo.dims, ", ")));
        }
        s.push_str(&format!("dims quotient:    [{}]\n", join(&self.quotient_dims, ", ")));
        s.push_str(&format!(
            "states up to weight {} used, last change at {}, stabilized: {}\n",
            self.omega.state_weight, self.omega.last_change, self.omega.stabilized
        ));
        s.push_str(&format!("degree bound holds: {}\n", self.degree_bound.holds));
        s
    }

    fn csv(&self) -> Option<String> {
        let mut c = Csv::new(&["degree", "dim", "omega_n", "omega_n_minus_1", "quotient"]);
        for d in 0..self.module_dims.len() {
            let at = |v: &[usize]| v.get(d).copied().unwrap_or(0).to_string();
            c.row([
                d.to_string(),
                at(&self.module_dims),
                at(&self.omega.dims),
                self.omega_lower.as_ref().map(|o| at(&o.dims)).unwrap_or_default(),
                at(&self.quotient_dims),
            ]);
        }
        Some(c.finish())
    }
}
