use serde::{Deserialize, Serialize};
use zhu_core::functor::gdim;
use zhu_core::linalg::partition_numbers;
use zhu_core::rational::{fmt_q, q};

use super::source::ModuleSource;
use super::Ctx;
use crate::error::CliResult;
use crate::report::{pretty, pretty_list, Csv, Report, Status};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Comparison {
    pub k: String,
    /// `k * p(d)` for each degree.
    pub values: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GdimReport {
    pub source: ModuleSource,
    pub description: String,
    pub max_degree: usize,
    pub leading_exponent: String,
    pub coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

pub fn run(ctx: &Ctx) -> CliResult<GdimReport> {
    let cfg = &ctx.config;
    let source = ModuleSource::from_config(cfg)?;
    let w = source.build(cfg.max_degree)?;
    let series = gdim(&w, cfg.max_degree);
    let coefficients: Vec<String> = series.coefficients.iter().map(fmt_q).collect();
    let comparison = cfg.compare.as_ref().map(|k| {
        let expected: Vec<_> = partition_numbers(cfg.max_degree)
            .into_iter()
            .map(|p| k * q(p as i64))
            .collect();
        Comparison {
            k: fmt_q(k),
            matches: expected == series.coefficients,
            values: expected.iter().map(fmt_q).collect(),
        }
    });
    Ok(GdimReport {
        description: source.describe(),
        source,
        max_degree: cfg.max_degree,
        leading_exponent: fmt_q(&series.leading_exponent),
        coefficients,
        comparison,
    })
}

impl Report for GdimReport {
    fn command(&self) -> &'static str {
        "gdim"
    }

    fn status(&self) -> Status {
        Status {
            negative: self
                .comparison
                .as_ref()
                .filter(|c| !c.matches)
                .map(|c| format!("coefficients differ from {} * p(d)", c.k)),
            unstable: None,
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{}; degrees 0..={}\n", self.description, self.max_degree);
        s.push_str(&format!("leading exponent: {}\n", pretty(&self.leading_exponent)));
        s.push_str(&format!("coefficients: [{}]\n", pretty_list(&self.coefficients)));
        if let Some(c) = &self.comparison {
            s.push_str(&format!("{} * p(d):   [{}]\n", pretty(&c.k), pretty_list(&c.values)));
            s.push_str(&format!("matches: {}\n", c.matches));
        }
        s
    }

    fn csv(&self) -> Option<String> {
        let mut header = vec!["degree", "coefficient"];
        if self.comparison.is_some() {
            header.push("k_times_p");
        }
        let mut c = Csv::new(&header);
        for (d, coeff) in self.coefficients.iter().enumerate() {
            let mut row = vec![d.to_string(), coeff.clone()];
            if let Some(cmp) = &self.comparison {
                row.push(cmp.values[d].clone());
            }
            c.row(row);
        }
        Some(c.finish())
    }
}
