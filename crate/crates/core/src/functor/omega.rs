use serde::{Deserialize, Serialize};

use crate::linalg::{kernel, RationalMatrix, Subspace};
use crate::voa::{weight_basis, GradedModule};
use crate::Result;

/// Consecutive state weights that must leave every degree unchanged before a kernel counts as stable.
pub const OMEGA_PATIENCE: usize = 2;

/// `Ω_n(W)` within the window, degree by degree.
#[derive(Clone, Debug)]
pub struct OmegaSpace {
    pub n: usize,
    pub spaces: Vec<Subspace>,
    /// Largest state weight whose modes were imposed.
    pub state_weight: usize,
    /// Last state weight that changed some degree.
    pub last_change: usize,
    pub stabilized: bool,
}

/// Serializable summary of an [`OmegaSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaSummary {
    pub n: usize,
    pub dims: Vec<usize>,
    pub state_weight: usize,
    pub last_change: usize,
    pub stabilized: bool,
}

impl OmegaSpace {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn summary(&self) -> OmegaSummary {
        OmegaSummary {
            n: self.n,
            dims: self.dims(),
            state_weight: self.state_weight,
            last_change: self.last_change,
            stabilized: self.stabilized,
        }
    }

    /// True iff every degree is contained in the same degree of `other`.
    pub fn is_subspace_of(&self, other: &OmegaSpace) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.is_subspace_of(b))
    }
}

/// Default bound on the state weights tried by [`omega_n`].
pub fn default_state_weight(w: &GradedModule) -> usize {
    w.max_degree().max(2) + 2 * w.preset().generator_weight() as usize
}

pub fn omega_n(w: &GradedModule, n: usize) -> Result<OmegaSpace> {
    omega_n_with(w, n, default_state_weight(w))
}

/// Joint kernel of the modes `v_i` lowering degree by more than `n`, for `v` ranging
/// over the PBW basis of weights `0..=max_state_weight`. States are added weight by
/// weight; the result is stable once [`OMEGA_PATIENCE`] further weights change nothing.
pub fn omega_n_with(w: &GradedModule, n: usize, max_state_weight: usize) -> Result<OmegaSpace> {
    let top = w.max_degree();
    let mut spaces: Vec<Subspace> = (0..=top).map(|d| Subspace::full(w.dim(d))).collect();
    let mut last_change = 0;
    let mut state_weight = 0;
    let preset = w.preset().clone();
    for k in 0..=max_state_weight {
        state_weight = k;
        let states = weight_basis(&preset, k as u32);
        for (d, space) in spaces.iter_mut().enumerate().skip(n + 1) {
            if space.dim() == 0 {
                continue;
            }
            let mut rows: Vec<Vec<crate::rational::Q>> = Vec::new();
            for s in &states {
                for drop in (n + 1)..=d {
                    let i = k as i64 - 1 + drop as i64;
                    if let Some(m) = w.composite(s.parts(), i, d)? {
                        for r in 0..m.rows() {
                            rows.push(m.row(r).to_vec());
                        }
                    }
                }
            }
            if rows.is_empty() {
                continue;
            }
            let ker = kernel(&RationalMatrix::from_rows(rows)?);
            let next = space.intersection(&ker);
            if next.dim() < space.dim() {
                *space = next;
                last_change = k;
            }
        }
        let floor = preset.generator_weight() as usize;
        if k >= floor && k >= last_change + OMEGA_PATIENCE {
            break;
        }
    }
    let stabilized = state_weight >= last_change + OMEGA_PATIENCE;
    Ok(OmegaSpace {
        n,
        spaces,
        state_weight,
        last_change,
        stabilized,
    })
}
