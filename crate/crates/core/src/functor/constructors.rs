use crate::linalg::RationalMatrix;
use crate::rational::{qf, Q};
use crate::voa::{build_pbw_module, GradedModule, PbwSpec, VacuumModule, VoaPreset};
use crate::{Error, Result};

/// Verma module `M(c, h)` on degrees `0..=max_degree`.
pub fn verma(c: Q, h: Q, max_degree: usize) -> Result<GradedModule> {
    let spec = PbwSpec {
        preset: VoaPreset::virasoro(c),
        max_degree,
        base_degree: 0,
        level: 0,
        min_creation: 1,
        zero_mode: RationalMatrix::scalar(1, &h),
        names: vec!["|h>".into()],
        lowest_weight: Some(h),
    };
    Ok(build_pbw_module(&spec)?.0)
}

/// Fock module `M_a(1) ⊗ Ω(λ, k)`: `a(0)` is the `k x k` Jordan block at `λ` on degree 0.
pub fn heisenberg_module(a: Q, lambda: Q, k: usize, max_degree: usize) -> Result<GradedModule> {
    if k == 0 {
        return Err(Error::InvalidSpec("Jordan block size must be positive".into()));
    }
    let lowest = &lambda * &lambda * qf(1, 2) - &a * &lambda;
    let spec = PbwSpec {
        preset: VoaPreset::heisenberg(a),
        max_degree,
        base_degree: 0,
        level: 0,
        min_creation: 1,
        zero_mode: RationalMatrix::jordan_block(&lambda, k),
        names: (0..k).map(|i| format!("|w{i}>")).collect(),
        lowest_weight: Some(lowest),
    };
    Ok(build_pbw_module(&spec)?.0)
}

/// The algebra as a module over itself (for Virasoro, the vacuum quotient `V_Vir(c, 0)`).
pub fn vacuum_module(preset: &VoaPreset, max_degree: usize) -> Result<GradedModule> {
    Ok(VacuumModule::new(preset, max_degree)?.module().clone())
}
