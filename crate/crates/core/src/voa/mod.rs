//! The two vertex operator algebra presets, PBW bases, and the mode engine.

mod builder;
mod element;
mod module;
mod monomial;
mod preset;
mod sparse;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

pub use builder::{build_pbw_module, label_text, pbw_labels, PbwLabel, PbwSpec};
pub use element::VoaElement;
pub use module::{GradedModule, ModeImage};
pub use monomial::{partitions_with_min, weight_basis, PbwMonomial};
pub use preset::{Bracket, VoaKind, VoaPreset};
pub use sparse::SparseMatrix;

use crate::linalg::RationalMatrix;
use crate::rational::{binom, q, qf, Q};
use crate::{Error, Result};

/// The conformal vector: `L(-2)1`, or `1/2 a(-1)^2 1 + a a(-2) 1` for the Heisenberg preset.
pub fn conformal_vector(preset: &VoaPreset) -> VoaElement {
    match preset.kind {
        VoaKind::Virasoro => VoaElement::from_parts(&[2]),
        VoaKind::Heisenberg => {
            let mut e = VoaElement::term(PbwMonomial::new(vec![1, 1]), qf(1, 2));
            e.add_term(PbwMonomial::new(vec![2]), preset.param.clone());
            e
        }
    }
}

/// The generating state `a(-1)1` or `omega = L(-2)1`.
pub fn generator_state(preset: &VoaPreset) -> VoaElement {
    VoaElement::from_parts(&[preset.generator_weight()])
}

/// Sum of a word's mode degrees: generator mode `m` has degree `-m`.
pub fn word_degree(word: &[i32]) -> i64 {
    word.iter().map(|&m| -(m as i64)).sum()
}

/// The algebra itself, truncated to weights `0..=max_weight`, with PBW coordinates.
#[derive(Clone, Debug)]
pub struct VacuumModule {
    module: GradedModule,
    basis: Vec<Vec<PbwMonomial>>,
    index: HashMap<PbwMonomial, usize>,
}

impl VacuumModule {
    pub fn new(preset: &VoaPreset, max_weight: usize) -> Result<Self> {
        let spec = PbwSpec {
            preset: preset.clone(),
            max_degree: max_weight,
            base_degree: 0,
            level: 0,
            min_creation: preset.min_vacuum_part(),
            zero_mode: RationalMatrix::zeros(1, 1),
            names: vec!["|0>".to_string()],
            lowest_weight: Some(Q::zero()),
        };
        let (module, labels) = build_pbw_module(&spec)?;
        let basis: Vec<Vec<PbwMonomial>> = labels
            .iter()
            .map(|labs| labs.iter().map(|l| PbwMonomial::new(l.creation.clone())).collect())
            .collect();
        let index = basis
            .iter()
            .flat_map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)))
            .collect();
        Ok(Self {
            module,
            basis,
            index,
        })
    }

    pub fn preset(&self) -> &VoaPreset {
        self.module.preset()
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn max_weight(&self) -> usize {
        self.module.max_degree()
    }

    pub fn basis(&self, w: usize) -> &[PbwMonomial] {
        &self.basis[w]
    }

    fn check(&self, e: &VoaElement) -> Result<()> {
        if let Some(w) = e.max_weight() {
            if w as usize > self.max_weight() {
                return Err(Error::TruncationExceeded {
                    what: "element".into(),
                    degree: w as i64,
                    max: self.max_weight(),
                });
            }
        }
        Ok(())
    }

    /// Coordinates of the homogeneous components, keyed by weight.
    pub fn to_vectors(&self, e: &VoaElement) -> Result<BTreeMap<usize, Vec<Q>>> {
        self.check(e)?;
        let mut out: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for (m, c) in e.terms() {
            let w = m.weight() as usize;
            let i = *self.index.get(m).ok_or_else(|| {
                Error::InvalidSpec(format!("{m} is not a canonical monomial of this preset"))
            })?;
            let v = out.entry(w).or_insert_with(|| vec![Q::zero(); self.basis[w].len()]);
            v[i] += c;
        }
        Ok(out)
    }

    /// Coordinates of an element in the concatenated basis of weights `0..=max_weight`.
    pub fn flat_coordinates(&self, e: &VoaElement) -> Result<Vec<Q>> {
        let mut out = Vec::with_capacity(self.module.total_dim());
        let comps = self.to_vectors(e)?;
        for w in 0..=self.max_weight() {
            match comps.get(&w) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Q::zero(), self.basis[w].len())),
            }
        }
        Ok(out)
    }

    pub fn from_flat(&self, v: &[Q]) -> VoaElement {
        let mut e = VoaElement::zero();
        let mut off = 0;
        for w in 0..=self.max_weight() {
            let n = self.basis[w].len();
            e.add_assign(&self.from_vector(w, &v[off..off + n]));
            off += n;
        }
        e
    }

    pub fn from_vector(&self, w: usize, v: &[Q]) -> VoaElement {
        let mut e = VoaElement::zero();
        for (m, c) in self.basis[w].iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    /// `u_i v`, with `u` split into homogeneous components.
    pub fn mode_action(&self, u: &VoaElement, i: i64, v: &VoaElement) -> Result<VoaElement> {
        let mut out = VoaElement::zero();
        let vs = self.to_vectors(v)?;
        for (_, uc) in u.components() {
            for (&d, vec) in &vs {
                let img = self.module.mode_matrix(&uc, i, d)?;
                if let Some(t) = img.target {
                    let r = img.matrix.apply(vec)?;
                    out.add_assign(&self.from_vector(t, &r));
                }
            }
        }
        Ok(out)
    }

    /// Applies a word of generator modes (rightmost first) and returns the canonical form.
    pub fn normal_order_word(&self, word: &[i32], v: &VoaElement) -> Result<VoaElement> {
        let mut out = VoaElement::zero();
        for (d, vec) in self.to_vectors(v)? {
            if let Some((t, r)) = self.module.apply_word(word, d, &vec)? {
                out.add_assign(&self.from_vector(t, &r));
            }
        }
        Ok(out)
    }

    /// `(L(-1) + L(0)) v`.
    pub fn translate(&self, v: &VoaElement) -> Result<VoaElement> {
        let mut out = VoaElement::zero();
        for (d, vec) in self.to_vectors(v)? {
            for m in [-1, 0] {
                let img = self.module.virasoro_mode(m, d)?;
                if let Some(t) = img.target {
                    out.add_assign(&self.from_vector(t, &img.matrix.apply(&vec)?));
                }
            }
        }
        Ok(out)
    }
}

/// Applies the mode `u_i` of a homogeneous element to a vector of degree `d`.
/// Returns the target degree (or `None` if negative) and the image.
pub fn apply_mode(
    target: &GradedModule,
    u: &VoaElement,
    i: i64,
    d: usize,
    w: &[Q],
) -> Result<(Option<usize>, Vec<Q>)> {
    let img = target.mode_matrix(u, i, d)?;
    match img.target {
        Some(t) => Ok((Some(t), img.matrix.apply(w)?)),
        None => Ok((None, Vec::new())),
    }
}

fn weight_of(u: &VoaElement) -> Result<i64> {
    match u.homogeneous_weight() {
        Some(w) => Ok(w as i64),
        None if u.is_zero() => Ok(0),
        None => Err(Error::Unsupported("bracket check needs homogeneous states".into())),
    }
}

/// Both sides of `[u_j, v_k] w = sum_{i>=0} binom(j, i) (u_i v)_{j+k-i} w` for `w` of degree `d`.
/// `vac` must hold every `u_i v`; `target` holds `w` and the intermediate vectors.
#[allow(clippy::too_many_arguments)]
pub fn bracket_sides(
    vac: &VacuumModule,
    target: &GradedModule,
    u: &VoaElement,
    j: i64,
    v: &VoaElement,
    k: i64,
    d: usize,
    w: &[Q],
) -> Result<Option<(Vec<Q>, Vec<Q>)>> {
    let (wu, wv) = (weight_of(u)?, weight_of(v)?);
    let t = d as i64 + wu + wv - j - k - 2;
    if t < 0 {
        return Ok(None);
    }
    let t = t as usize;
    let zero = vec![Q::zero(); target.dim(t)];
    let compose = |a: &VoaElement, ia: i64, b: &VoaElement, ib: i64| -> Result<Vec<Q>> {
        let (mid, x) = apply_mode(target, b, ib, d, w)?;
        let Some(mid) = mid else {
            return Ok(zero.clone());
        };
        let (_, y) = apply_mode(target, a, ia, mid, &x)?;
        Ok(y)
    };
    let uv = compose(u, j, v, k)?;
    let vu = compose(v, k, u, j)?;
    let lhs: Vec<Q> = uv.iter().zip(&vu).map(|(a, b)| a - b).collect();
    let mut rhs = zero.clone();
    for i in 0..(wu + wv).max(0) {
        let c = binom(j, i);
        if c.is_zero() {
            continue;
        }
        let x = vac.mode_action(u, i, v)?;
        if x.is_zero() {
            continue;
        }
        let (_, y) = apply_mode(target, &x, j + k - i, d, w)?;
        for (r, z) in rhs.iter_mut().zip(&y) {
            *r += &c * z;
        }
    }
    Ok(Some((lhs, rhs)))
}

/// True iff the commutator formula holds on the sample vector.
#[allow(clippy::too_many_arguments)]
pub fn bracket_check(
    vac: &VacuumModule,
    target: &GradedModule,
    u: &VoaElement,
    j: i64,
    v: &VoaElement,
    k: i64,
    d: usize,
    w: &[Q],
) -> Result<bool> {
    Ok(match bracket_sides(vac, target, u, j, v, k, d, w)? {
        None => true,
        Some((l, r)) => l == r,
    })
}

/// Generator modes as a single-vertex example helper: the vector of the vacuum in degree 0.
pub fn vacuum_vector() -> Vec<Q> {
    vec![q(1)]
}
