use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::spec::{classify_an_module, AnModuleSpec, Classification};
use crate::linalg::{jordan_data, kernel, solve, RationalMatrix, Subspace};
use crate::rational::{q, Q};
use crate::voa::{build_pbw_module, generator_state, GradedModule, PbwLabel, PbwSpec};
use crate::zhu::second_generator;
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceOptions {
    /// Induce even when `U` factors through the lower level, then shift the
    /// result down to its lowest nonzero degree.
    pub regrade: bool,
}

/// The free module `F` over `U` placed in degree `n`, with the map `ε: F(n) → U`.
#[derive(Clone, Debug)]
pub struct FreeInduced {
    pub module: GradedModule,
    pub labels: Vec<Vec<PbwLabel>>,
    /// `dim U x dim F(n)`; restricts to the identity on the copy of `U`.
    pub epsilon: RationalMatrix,
}

/// The quotient `M̄ = F / <ker ε>` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct MbarModule {
    pub free: FreeInduced,
    /// `<ker ε>` per degree, as a subspace of `F`.
    pub relations: Vec<Subspace>,
}

impl MbarModule {
    pub fn dims(&self) -> Vec<usize> {
        self.relations
            .iter()
            .enumerate()
            .map(|(d, s)| self.free.module.dim(d) - s.dim())
            .collect()
    }
}

/// `L_n(U)` with the bookkeeping of its construction.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub spec: AnModuleSpec,
    pub classification: Classification,
    pub module: GradedModule,
    pub free_dims: Vec<usize>,
    pub mbar_dims: Vec<usize>,
    /// Dimension of `J / <ker ε>` per degree.
    pub j_dims: Vec<usize>,
    pub j_meets_u_trivially: bool,
    /// `X` and `Y` are recovered on degree `n` in the inherited basis.
    pub top_matches: bool,
    pub lowest_nonzero_degree: Option<usize>,
    /// `module` shifted down to its lowest nonzero degree, when regrading was requested.
    pub regraded: Option<GradedModule>,
}

/// Builds `F` and solves for `ε` from `ε o(x) = X ε` and `ε o(y) = Y ε` on `F(n)`.
pub fn build_free(u: &AnModuleSpec, max_degree: usize) -> Result<FreeInduced> {
    let n = u.level();
    if max_degree < n {
        return Err(Error::InvalidSpec(format!(
            "window [0, {max_degree}] does not reach degree {n}"
        )));
    }
    let spec = PbwSpec {
        preset: u.preset().clone(),
        max_degree,
        base_degree: n,
        level: n,
        min_creation: 1,
        zero_mode: u.x().clone(),
        names: (0..u.dim()).map(|i| format!("|u{i}>")).collect(),
        lowest_weight: None,
    };
    let (module, labels) = build_pbw_module(&spec)?;
    let epsilon = solve_epsilon(u, &module, &labels[n])?;
    Ok(FreeInduced {
        module,
        labels,
        epsilon,
    })
}

fn solve_epsilon(u: &AnModuleSpec, f: &GradedModule, top: &[PbwLabel]) -> Result<RationalMatrix> {
    let n = u.level();
    let m = u.dim();
    let big = top.len();
    let is_u = |l: &PbwLabel| l.creation.is_empty() && l.lowering.is_empty();
    // unknown entries: rows of ε on the columns that are not a copy of U
    let free_cols: Vec<usize> = (0..big).filter(|&j| !is_u(&top[j])).collect();
    let mut col_of = vec![None; big];
    for (pos, &j) in free_cols.iter().enumerate() {
        col_of[j] = Some(pos);
    }
    let unknowns = free_cols.len() * m;
    let var = |r: usize, j: usize| col_of[j].map(|pos| pos * m + r);
    let mut known = RationalMatrix::zeros(m, big);
    for (j, l) in top.iter().enumerate() {
        if is_u(l) {
            known[(l.index, j)] = Q::one();
        }
    }
    let ops = [
        (f.zero_mode(&generator_state(u.preset()), n)?, u.x()),
        (f.zero_mode(&second_generator(u.preset()), n)?, u.y()),
    ];
    // (ε O - Z ε)[r, j] = 0 for every r, j
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (o, z) in &ops {
        for r in 0..m {
            for j in 0..big {
                let mut row = vec![Q::zero(); unknowns];
                let mut konst = Q::zero();
                for l in 0..big {
                    let c = &o[(l, j)];
                    if c.is_zero() {
                        continue;
                    }
                    match var(r, l) {
                        Some(v) => row[v] += c,
                        None => konst += c * &known[(r, l)],
                    }
                }
                for s in 0..m {
                    let c = &z[(r, s)];
                    if c.is_zero() {
                        continue;
                    }
                    match var(s, j) {
                        Some(v) => row[v] -= c,
                        None => konst -= c * &known[(s, j)],
                    }
                }
                rows.push(row);
                rhs.push(-konst);
            }
        }
    }
    let mut eps = known;
    if unknowns == 0 {
        if rhs.iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidSpec(
                "zero modes on the generating space disagree with (X, Y)".into(),
            ));
        }
        return Ok(eps);
    }
    let sys = RationalMatrix::from_rows(rows)?;
    let sol = solve(&sys, &rhs)?.ok_or_else(|| {
        Error::InvalidSpec("no equivariant projection onto U exists".into())
    })?;
    let slack = kernel(&sys).dim();
    if slack > 0 {
        return Err(Error::DegreeMismatch {
            level: n,
            expected: m,
            got: m + slack,
        });
    }
    for (pos, &j) in free_cols.iter().enumerate() {
        for r in 0..m {
            eps[(r, j)] = sol[pos * m + r].clone();
        }
    }
    Ok(eps)
}

/// `M̄ = F / <ker ε>`; errors unless the degree-`n` piece is a copy of `U`.
pub fn build_mbar(u: &AnModuleSpec, max_degree: usize) -> Result<MbarModule> {
    let free = build_free(u, max_degree)?;
    let n = u.level();
    let f = &free.module;
    let mut seeds: Vec<Subspace> = (0..=max_degree).map(|d| Subspace::zero(f.dim(d))).collect();
    seeds[n] = kernel(&free.epsilon);
    let relations = f.generated_submodule(&seeds);
    let got = f.dim(n) - relations[n].dim();
    if got != u.dim() {
        return Err(Error::DegreeMismatch {
            level: n,
            expected: u.dim(),
            got,
        });
    }
    Ok(MbarModule { free, relations })
}

/// Largest submodule of `F` whose degree-`n` piece lies in `ker ε`.
pub fn compute_j(mbar: &MbarModule, n: usize) -> Vec<Subspace> {
    let f = &mbar.free.module;
    let mut bounds: Vec<Subspace> = (0..=f.max_degree()).map(|d| Subspace::full(f.dim(d))).collect();
    bounds[n] = kernel(&mbar.free.epsilon);
    f.largest_submodule_within(&bounds)
}

pub fn induce_ln(u: &AnModuleSpec, max_degree: usize) -> Result<InducedModule> {
    induce_ln_with(u, max_degree, &InduceOptions::default())
}

pub fn induce_ln_with(u: &AnModuleSpec, max_degree: usize, opts: &InduceOptions) -> Result<InducedModule> {
    let n = u.level();
    let classification = classify_an_module(u)?;
    if n > 0 && u.dim() > 0 && classification == Classification::FactorsThroughLower && !opts.regrade {
        return Err(Error::FactorsThrough { level: n });
    }
    let mbar = build_mbar(u, max_degree)?;
    let j = compute_j(&mbar, n);
    let f = &mbar.free.module;
    let j_dims = j
        .iter()
        .zip(&mbar.relations)
        .map(|(a, b)| a.dim() - b.dim())
        .collect();
    let u_copy = Subspace::span(
        f.dim(n),
        mbar.free.labels[n]
            .iter()
            .enumerate()
            .filter(|(_, l)| l.creation.is_empty() && l.lowering.is_empty())
            .map(|(i, _)| unit(f.dim(n), i)),
    );
    let j_meets_u_trivially = u_copy.intersection(&j[n]).dim() == 0;
    let (mut module, reps) = f.quotient(&j)?;

    let top_matches = reps[n] == (0..u.dim()).collect::<Vec<_>>()
        && module.zero_mode(&generator_state(u.preset()), n)? == *u.x()
        && module.zero_mode(&second_generator(u.preset()), n)? == *u.y();

    let lowest = (0..=max_degree).find(|&d| module.dim(d) > 0);
    if let Some(d0) = lowest {
        let l0 = module.l0(d0)?;
        if let Some((mu, _)) = jordan_data(&l0)?.single() {
            module.set_lowest_weight(Some(mu - q(d0 as i64)));
        }
    }
    let regraded = match lowest {
        Some(d0) if opts.regrade && d0 > 0 => Some(module.regrade(d0)?),
        _ => None,
    };
    Ok(InducedModule {
        spec: u.clone(),
        classification,
        free_dims: f.dims(),
        mbar_dims: mbar.dims(),
        j_dims,
        j_meets_u_trivially,
        top_matches,
        lowest_nonzero_degree: lowest,
        regraded,
        module,
    })
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}
