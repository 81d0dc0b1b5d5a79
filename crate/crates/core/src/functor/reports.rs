use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{jordan_data, JordanReport, MatrixStrings, QSeries, RationalMatrix};
use crate::rational::{fmt_q, q, qf, Q};
use crate::voa::{GradedModule, VoaPreset};
use crate::Result;

/// `L(0)` Jordan structure of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJordan {
    pub degree: usize,
    pub dim: usize,
    pub jordan: JordanReport,
}

pub fn jordan_by_degree(w: &GradedModule) -> Result<Vec<DegreeJordan>> {
    (0..=w.max_degree())
        .map(|d| {
            Ok(DegreeJordan {
                degree: d,
                dim: w.dim(d),
                jordan: jordan_data(&w.l0(d)?)?,
            })
        })
        .collect()
}

/// True iff `L(0) - (λ₀ + d)` is nilpotent on every degree `d`.
pub fn l0_check(w: &GradedModule) -> Result<bool> {
    let Some(base) = w.lowest_weight() else {
        return Ok(w.total_dim() == 0);
    };
    for d in 0..=w.max_degree() {
        let k = w.dim(d);
        let shifted = w.l0(d)?.sub(&RationalMatrix::scalar(k, &(base + q(d as i64))))?;
        if !shifted.pow(k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `q^{λ₀ - c/24} Σ dim W(d) q^d` through `max_degree`; the zero module gives no coefficients.
pub fn gdim(w: &GradedModule, max_degree: usize) -> QSeries {
    let top = max_degree.min(w.max_degree());
    if w.total_dim() == 0 {
        return QSeries {
            leading_exponent: Q::zero(),
            coefficients: Vec::new(),
        };
    }
    let lowest = w.lowest_weight().cloned().unwrap_or_else(Q::zero);
    QSeries {
        leading_exponent: lowest - w.preset().central_charge() * qf(1, 24),
        coefficients: (0..=top).map(|d| q(w.dim(d) as i64)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub mode: i32,
    pub source_degree: usize,
    pub matrix: MatrixStrings,
}

/// Serializable snapshot of a truncated module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub preset: VoaPreset,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub lowest_weight: Option<String>,
    pub jordan: Vec<DegreeJordan>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorEntry>,
}

pub fn module_report(w: &GradedModule, with_generators: bool) -> Result<ModuleReport> {
    let mut generators = Vec::new();
    if with_generators {
        for (m, d) in w.generator_keys() {
            if let Some(s) = w.generator(m, d)? {
                generators.push(GeneratorEntry {
                    mode: m,
                    source_degree: d,
                    matrix: MatrixStrings::from(&s.to_dense()),
                });
            }
        }
    }
    Ok(ModuleReport {
        preset: w.preset().clone(),
        max_degree: w.max_degree(),
        dims: w.dims(),
        labels: (0..=w.max_degree()).map(|d| w.labels(d).to_vec()).collect(),
        lowest_weight: w.lowest_weight().map(fmt_q),
        jordan: jordan_by_degree(w)?,
        generators,
    })
}
