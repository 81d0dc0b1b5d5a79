use serde::{Deserialize, Serialize};
use zhu_core::functor::{
    jordan_by_degree, roundtrip_report, AnModuleSpec, Classification, DegreeJordan, InduceOptions, RoundtripReport,
};
use zhu_core::linalg::JordanReport;
use zhu_core::rational::fmt_q;

use super::{require_spec, Ctx};
use crate::error::CliResult;
use crate::report::{join, pretty, Csv, Report, Status};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InduceReport {
    pub spec: AnModuleSpec,
    pub max_degree: usize,
    pub regrade: bool,
    pub classification: Classification,
    pub dims: Vec<usize>,
    pub free_dims: Vec<usize>,
    pub mbar_dims: Vec<usize>,
    pub j_dims: Vec<usize>,
    pub j_meets_u_trivially: bool,
    pub top_matches: bool,
    pub lowest_nonzero_degree: Option<usize>,
    pub lowest_weight: Option<String>,
    pub jordan: Vec<DegreeJordan>,
    /// Present when regrading shifted the module down.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regraded_dims: Option<Vec<usize>>,
    pub roundtrip: RoundtripReport,
    pub verdict: String,
}

/// `roundtrip HOLDS`, or `roundtrip FAILS; ...` naming the obstruction.
pub fn verdict_line(r: &RoundtripReport) -> String {
    if r.isomorphic {
        return "roundtrip HOLDS".into();
    }
    let why = match &r.classification {
        Classification::HasFactoringSubmodule { dim } => format!("factoring submodule dim {dim}"),
        Classification::FactorsThroughLower => "U factors through the lower level".into(),
        Classification::NoFactoringSubmodule => "no factoring submodule".into(),
    };
    format!("roundtrip FAILS; {why}")
}

fn compute(spec: &AnModuleSpec, max_degree: usize, regrade: bool) -> CliResult<InduceReport> {
    let (ind, rt) = roundtrip_report(spec, max_degree, &InduceOptions { regrade })?;
    Ok(InduceReport {
        spec: spec.clone(),
        max_degree,
        regrade,
        classification: ind.classification.clone(),
        dims: ind.module.dims(),
        free_dims: ind.free_dims.clone(),
        mbar_dims: ind.mbar_dims.clone(),
        j_dims: ind.j_dims.clone(),
        j_meets_u_trivially: ind.j_meets_u_trivially,
        top_matches: ind.top_matches,
        lowest_nonzero_degree: ind.lowest_nonzero_degree,
        lowest_weight: ind.module.lowest_weight().map(fmt_q),
        jordan: jordan_by_degree(&ind.module)?,
        regraded_dims: ind.regraded.as_ref().map(|m| m.dims()),
        verdict: verdict_line(&rt),
        roundtrip: rt,
    })
}

pub fn run(ctx: &Ctx) -> CliResult<InduceReport> {
    let cfg = &ctx.config;
    let spec = require_spec(cfg)?;
    let material = (&spec, cfg.max_degree, cfg.regrade);
    ctx.cached("induce", &material, || compute(&spec, cfg.max_degree, cfg.regrade))
}

fn stability(rt: &RoundtripReport, top_matches: bool) -> Option<String> {
    let mut why = Vec::new();
    if !rt.omega_stabilized || !rt.degree_bound.stabilized {
        why.push("Omega did not stabilize inside the window");
    }
    if !top_matches {
        why.push("X, Y are not recovered on degree n");
    }
    (!why.is_empty()).then(|| format!("{}; raise --max-degree", why.join("; ")))
}

pub fn jordan_text(j: &JordanReport) -> String {
    j.blocks
        .iter()
        .map(|b| format!("{}:[{}]", pretty(&fmt_q(&b.eigenvalue)), join(&b.sizes, " ")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Report for InduceReport {
    fn command(&self) -> &'static str {
        "induce"
    }

    fn status(&self) -> Status {
        Status {
            negative: (!self.roundtrip.isomorphic).then(|| self.verdict.clone()),
            unstable: stability(&self.roundtrip, self.top_matches),
        }
    }

    fn text(&self) -> String {
        let rt = &self.roundtrip;
        let mut s = format!(
            "L_{}(U) over {}, dim U = {}, degrees 0..={}\n",
            rt.n,
            self.spec.preset(),
            rt.dim_u,
            self.max_degree
        );
        s.push_str(&format!("classification: {}\n", classification_text(&self.classification)));
        s.push_str(&format!("dims:      [{}]\n", join(&self.dims, ", ")));
        s.push_str(&format!("free dims: [{}]\n", join(&self.free_dims, ", ")));
        s.push_str(&format!("Mbar dims: [{}]\n", join(&self.mbar_dims, ", ")));
        s.push_str(&format!("J dims:    [{}]\n", join(&self.j_dims, ", ")));
        if let Some(r) = &self.regraded_dims {
            s.push_str(&format!("regraded:  [{}]\n", join(r, ", ")));
        }
        if let Some(lw) = &self.lowest_weight {
            s.push_str(&format!("lowest weight: {}\n", pretty(lw)));
        }
        s.push_str("L(0) Jordan blocks by degree:\n");
        for dj in &self.jordan {
            s.push_str(&format!("  {}: dim {} {}\n", dj.degree, dj.dim, jordan_text(&dj.jordan)));
        }
        s.push_str(&format!(
            "Omega_n/Omega_(n-1) dims: [{}], defect {}\n",
            join(&rt.quotient_dims, ", "),
            rt.defect_dim
        ));
        s.push_str(&format!("{}\n", self.verdict));
        s
    }

    fn csv(&self) -> Option<String> {
        let mut c = Csv::new(&["degree", "dim", "free_dim", "mbar_dim", "j_dim", "quotient_dim", "jordan"]);
        let at = |v: &[usize], d: usize| v.get(d).copied().unwrap_or(0).to_string();
        for dj in &self.jordan {
            let d = dj.degree;
            c.row([
                d.to_string(),
                dj.dim.to_string(),
                at(&self.free_dims, d),
                at(&self.mbar_dims, d),
                at(&self.j_dims, d),
                at(&self.roundtrip.quotient_dims, d),
                jordan_text(&dj.jordan),
            ]);
        }
        Some(c.finish())
    }
}

pub fn classification_text(c: &Classification) -> String {
    match c {
        Classification::FactorsThroughLower => "factors through the lower level".into(),
        Classification::HasFactoringSubmodule { dim } => format!("has a factoring submodule of dim {dim}"),
        Classification::NoFactoringSubmodule => "no factoring submodule".into(),
    }
}

/// The roundtrip part of an induce run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundtripCmdReport {
    pub spec: AnModuleSpec,
    pub max_degree: usize,
    pub regrade: bool,
    pub top_matches: bool,
    pub roundtrip: RoundtripReport,
    pub verdict: String,
}

pub fn run_roundtrip(ctx: &Ctx) -> CliResult<RoundtripCmdReport> {
    let r = run(ctx)?;
    Ok(RoundtripCmdReport {
        spec: r.spec,
        max_degree: r.max_degree,
        regrade: r.regrade,
        top_matches: r.top_matches,
        roundtrip: r.roundtrip,
        verdict: r.verdict,
    })
}

impl Report for RoundtripCmdReport {
    fn command(&self) -> &'static str {
        "roundtrip"
    }

    fn status(&self) -> Status {
        Status {
            negative: (!self.roundtrip.isomorphic).then(|| self.verdict.clone()),
            unstable: stability(&self.roundtrip, self.top_matches),
        }
    }

    fn text(&self) -> String {
        let rt = &self.roundtrip;
        let mut s = format!("level {}, dim U = {}, degrees 0..={}\n", rt.n, rt.dim_u, self.max_degree);
        s.push_str(&format!("classification: {}\n", classification_text(&rt.classification)));
        s.push_str(&format!("hypothesis holds: {}\n", rt.hypothesis_holds));
        s.push_str(&format!("induced dims: [{}]\n", join(&rt.induced_dims, ", ")));
        s.push_str(&format!("quotient dims: [{}], defect {}\n", join(&rt.quotient_dims, ", "), rt.defect_dim));
        s.push_str(&format!(
            "degree bound holds: {}, Omega stabilized: {}\n",
            rt.degree_bound.holds, rt.omega_stabilized
        ));
        s.push_str(&format!("{}\n", self.verdict));
        s
    }

    fn csv(&self) -> Option<String> {
        let rt = &self.roundtrip;
        let mut c = Csv::new(&["degree", "induced_dim", "quotient_dim", "omega_n_dim", "omega_0_dim"]);
        let at = |v: &[usize], d: usize| v.get(d).copied().unwrap_or(0).to_string();
        for d in 0..rt.induced_dims.len() {
            c.row([
                d.to_string(),
                at(&rt.induced_dims, d),
                at(&rt.quotient_dims, d),
                at(&rt.degree_bound.omega_n_dims, d),
                at(&rt.degree_bound.omega_0_dims, d),
            ]);
        }
        Some(c.finish())
    }
}
