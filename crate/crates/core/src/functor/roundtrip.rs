use serde::{Deserialize, Serialize};

use super::induce::{induce_ln_with, InduceOptions, InducedModule};
use super::omega::{omega_n, OmegaSpace};
use super::similarity::simultaneous_similarity;
use super::spec::{AnModuleSpec, Classification};
use crate::linalg::{quotient_basis, RationalMatrix, Subspace};
use crate::rational::Q;
use crate::voa::{generator_state, GradedModule, VoaElement};
use crate::zhu::second_generator;
use crate::Result;

/// Seed for the random intertwiner draws in isomorphism tests.
pub const SIMILARITY_SEED: u64 = 0x5eed;

/// The graded quotient `hi / lo` of two graded subspaces, with representatives per degree.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    pub hi: Vec<Subspace>,
    pub lo: Vec<Subspace>,
    /// For each degree, a basis of `hi` modulo `lo`.
    pub reps: Vec<Vec<Vec<Q>>>,
}

impl GradedQuotient {
    pub fn new(hi: &[Subspace], lo: &[Subspace]) -> Result<Self> {
        let mut reps = Vec::with_capacity(hi.len());
        for (h, l) in hi.iter().zip(lo) {
            // work in coordinates of `h`'s echelon basis
            let coords = Subspace::full(h.dim());
            let lo_in_h = Subspace::span(
                h.dim(),
                l.basis().iter().map(|v| coordinates_in(h, v)),
            );
            let picks = quotient_basis(&coords, &lo_in_h)?;
            reps.push(picks.into_iter().map(|i| h.basis()[i].clone()).collect());
        }
        Ok(Self {
            hi: hi.to_vec(),
            lo: lo.to_vec(),
            reps,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    /// Matrix of the zero mode `o(v)` on degree `d` of the quotient.
    pub fn zero_mode(&self, w: &GradedModule, v: &VoaElement, d: usize) -> Result<RationalMatrix> {
        let o = w.zero_mode(v, d)?;
        let reps = &self.reps[d];
        // express o(r) modulo lo in the representative basis
        let mut ambient = self.lo[d].clone();
        let mut tracked: Vec<Vec<Q>> = Vec::new();
        for r in reps {
            ambient.insert(r.clone());
            tracked.push(r.clone());
        }
        let k = reps.len();
        let mut cols = Vec::with_capacity(k);
        for r in reps {
            let img = o.apply(r)?;
            cols.push(solve_mod(&self.lo[d], &tracked, &img)?);
        }
        Ok(RationalMatrix::from_columns(k, &cols))
    }
}

/// Coordinates of `v` in the echelon basis of `s` (which must contain it).
fn coordinates_in(s: &Subspace, v: &[Q]) -> Vec<Q> {
    let cols: Vec<Vec<Q>> = s.basis().to_vec();
    let m = RationalMatrix::from_columns(v.len(), &cols);
    crate::linalg::solve(&m, v)
        .ok()
        .flatten()
        .expect("vector lies in the subspace")
}

/// Coefficients `c` with `v - sum c_i reps_i ∈ lo`.
fn solve_mod(lo: &Subspace, reps: &[Vec<Q>], v: &[Q]) -> Result<Vec<Q>> {
    let mut cols: Vec<Vec<Q>> = reps.to_vec();
    cols.extend(lo.basis().iter().cloned());
    let m = RationalMatrix::from_columns(v.len(), &cols);
    let sol = crate::linalg::solve(&m, v)?.ok_or(crate::Error::Containment)?;
    Ok(sol[..reps.len()].to_vec())
}

/// `Ω_n / Ω_{n-1}` of a module, with `Ω_{-1} = 0`.
pub fn omega_quotient(w: &GradedModule, n: usize) -> Result<(OmegaSpace, Option<OmegaSpace>, GradedQuotient)> {
    let hi = omega_n(w, n)?;
    let lo = if n == 0 { None } else { Some(omega_n(w, n - 1)?) };
    let lo_spaces: Vec<Subspace> = match &lo {
        Some(o) => o.spaces.clone(),
        None => (0..=w.max_degree()).map(|d| Subspace::zero(w.dim(d))).collect(),
    };
    let quot = GradedQuotient::new(&hi.spaces, &lo_spaces)?;
    Ok((hi, lo, quot))
}

/// The quotient `Ω_n / Ω_{n-1}` as a module over the level-`n` algebra: all
/// degrees together, with block-diagonal actions of `x` and `y`.
pub fn omega_quotient_spec(w: &GradedModule, n: usize) -> Result<(Vec<usize>, RationalMatrix, RationalMatrix, bool)> {
    let (hi, lo, quot) = omega_quotient(w, n)?;
    let stable = hi.stabilized && lo.as_ref().is_none_or(|o| o.stabilized);
    let dims = quot.dims();
    let total: usize = dims.iter().sum();
    let mut x = RationalMatrix::zeros(total, total);
    let mut y = RationalMatrix::zeros(total, total);
    let xs = generator_state(w.preset());
    let ys = second_generator(w.preset());
    let mut off = 0;
    for (d, &k) in dims.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let bx = quot.zero_mode(w, &xs, d)?;
        let by = quot.zero_mode(w, &ys, d)?;
        for i in 0..k {
            for j in 0..k {
                x[(off + i, off + j)] = bx[(i, j)].clone();
                y[(off + i, off + j)] = by[(i, j)].clone();
            }
        }
        off += k;
    }
    Ok((dims, x, y, stable))
}

/// Outcome of [`degree_bound_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBoundReport {
    pub holds: bool,
    pub omega_n_dims: Vec<usize>,
    pub omega_0_dims: Vec<usize>,
    pub stabilized: bool,
}

/// `Ω_n ⊆ W(0) ⊕ ... ⊕ W(2n)` and `Ω_0 ⊆ W(0) ⊕ ... ⊕ W(n)` within the window.
pub fn degree_bound_check(w: &GradedModule, n: usize) -> Result<DegreeBoundReport> {
    let on = omega_n(w, n)?;
    let o0 = omega_n(w, 0)?;
    let on_dims = on.dims();
    let o0_dims = o0.dims();
    let holds = on_dims.iter().enumerate().all(|(d, &k)| d <= 2 * n || k == 0)
        && o0_dims.iter().enumerate().all(|(d, &k)| d <= n || k == 0);
    Ok(DegreeBoundReport {
        holds,
        omega_n_dims: on_dims,
        omega_0_dims: o0_dims,
        stabilized: on.stabilized && o0.stabilized,
    })
}

/// Result of inducing `U` and extracting `Ω_n / Ω_{n-1}` again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub n: usize,
    pub dim_u: usize,
    pub classification: Classification,
    /// No nonzero submodule of `U` factors through the lower level.
    pub hypothesis_holds: bool,
    pub induced_dims: Vec<usize>,
    pub lowest_nonzero_degree: Option<usize>,
    pub quotient_dims: Vec<usize>,
    /// `dim U - dim (Ω_n / Ω_{n-1})(n)`.
    pub defect_dim: usize,
    pub isomorphic: bool,
    pub omega_stabilized: bool,
    pub degree_bound: DegreeBoundReport,
}

impl RoundtripReport {
    pub fn verdict(&self) -> &'static str {
        if self.isomorphic {
            "HOLDS"
        } else {
            "FAILS"
        }
    }
}

pub fn roundtrip_report(u: &AnModuleSpec, max_degree: usize, opts: &InduceOptions) -> Result<(InducedModule, RoundtripReport)> {
    let induced = induce_ln_with(u, max_degree, opts)?;
    let report = roundtrip_of(&induced)?;
    Ok((induced, report))
}

pub fn roundtrip_of(induced: &InducedModule) -> Result<RoundtripReport> {
    let u = &induced.spec;
    let n = u.level();
    let w = &induced.module;
    let (quotient_dims, x, y, omega_stabilized) = omega_quotient_spec(w, n)?;
    let at_n = quotient_dims.get(n).copied().unwrap_or(0);
    let total: usize = quotient_dims.iter().sum();
    let isomorphic = total == u.dim()
        && simultaneous_similarity(&[(u.x(), &x), (u.y(), &y)], SIMILARITY_SEED)?.is_some();
    Ok(RoundtripReport {
        n,
        dim_u: u.dim(),
        classification: induced.classification.clone(),
        hypothesis_holds: induced.classification == Classification::NoFactoringSubmodule,
        induced_dims: w.dims(),
        lowest_nonzero_degree: induced.lowest_nonzero_degree,
        quotient_dims,
        defect_dim: u.dim().saturating_sub(at_n),
        isomorphic,
        omega_stabilized,
        degree_bound: degree_bound_check(w, n)?,
    })
}
