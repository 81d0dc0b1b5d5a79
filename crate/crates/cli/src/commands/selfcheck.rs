use serde::{Deserialize, Serialize};
use zhu_core::functor::{
    gdim, heisenberg_module, jordan_by_degree, roundtrip_report, verma, AnModuleSpec, Classification, InduceOptions,
};
use zhu_core::linalg::partition_numbers;
use zhu_core::rational::q;
use zhu_core::voa::VoaPreset;
use zhu_core::zhu::{an_presentation, ZhuLevel};

use crate::cache::{Cache, Lookup};
use crate::error::CliResult;
use crate::report::{Report, Status};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

fn check(name: &str, f: impl FnOnce() -> zhu_core::Result<(bool, String)>) -> Check {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { name: name.into(), passed, detail }
}

fn level_zero_relation(preset: VoaPreset) -> zhu_core::Result<(bool, String)> {
    let p = an_presentation(&ZhuLevel::new(preset, 0, 8)?)?;
    let ok = !p.relations.is_empty() && p.relations.iter().all(|r| r.certified && r.within_cutoff);
    let polys: Vec<_> = p.relations.iter().map(|r| r.polynomial.clone()).collect();
    Ok((ok, polys.join("; ")))
}

fn cache_round_trip() -> zhu_core::Result<(bool, String)> {
    let dir = std::env::temp_dir().join(format!("zhu-lab-selfcheck-{}", std::process::id()));
    let cache = Cache::new(&dir);
    let stored = cache.store("selfcheck", "{}", "payload").is_ok();
    let hit = cache.load("selfcheck", "{}") == Lookup::Hit("payload".into());
    let stale = matches!(
        Cache::with_version(&dir, "older").load("selfcheck", "{}"),
        Lookup::Stale { .. }
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok((stored && hit && stale, format!("store {stored}, hit {hit}, version bump invalidates {stale}")))
}

pub fn run() -> CliResult<SelfcheckReport> {
    let checks = vec![
        check("virasoro level-0 relation at c = 1", || level_zero_relation(VoaPreset::virasoro(q(1)))),
        check("heisenberg level-0 relation at a = 0", || level_zero_relation(VoaPreset::heisenberg(q(0)))),
        check("verma c = 1, h = 0 dims", || {
            let dims = verma(q(1), q(0), 5)?.dims();
            Ok((dims == [1, 1, 2, 3, 5, 7], format!("{dims:?}")))
        }),
        check("heisenberg gdim is 3 p(d)", || {
            let g = gdim(&heisenberg_module(q(0), q(0), 3, 8)?, 8);
            let want: Vec<_> = partition_numbers(8).into_iter().map(|p| q(3 * p as i64)).collect();
            Ok((g.coefficients == want, format!("exponent {}", g.leading_exponent)))
        }),
        check("factoring family k = 1 fails the roundtrip", || {
            let u = AnModuleSpec::virasoro_factoring_family(q(1), 1)?;
            let (ind, rt) = roundtrip_report(&u, 4, &InduceOptions::default())?;
            let blocks: Vec<usize> = jordan_by_degree(&ind.module)?[1]
                .jordan
                .blocks
                .iter()
                .flat_map(|b| b.sizes.clone())
                .collect();
            let ok = !rt.isomorphic
                && rt.classification == Classification::HasFactoringSubmodule { dim: 1 }
                && blocks == [2];
            Ok((ok, format!("{:?}, degree-1 blocks {blocks:?}", rt.classification)))
        }),
        check("heisenberg U_1(0, 2) roundtrip holds", || {
            let u = AnModuleSpec::heisenberg_u1(q(0), q(0), 2)?;
            let (_, rt) = roundtrip_report(&u, 4, &InduceOptions::default())?;
            Ok((rt.isomorphic, format!("quotient dims {:?}", rt.quotient_dims)))
        }),
        check("cache round trip", cache_round_trip),
    ];
    let passed = checks.iter().filter(|c| c.passed).count();
    Ok(SelfcheckReport { failed: checks.len() - passed, passed, checks })
}

impl Report for SelfcheckReport {
    fn command(&self) -> &'static str {
        "selfcheck"
    }

    fn status(&self) -> Status {
        Status {
            negative: (self.failed > 0).then(|| format!("{} check(s) failed", self.failed)),
            unstable: None,
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
        }
        s.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        s
    }
}
