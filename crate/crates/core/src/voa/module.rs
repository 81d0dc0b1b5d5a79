use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use super::element::VoaElement;
use super::preset::{VoaKind, VoaPreset};
use super::sparse::SparseMatrix;
use crate::linalg::{quotient_basis, RationalMatrix, Subspace};
use crate::rational::{binom, q, Q};
use crate::{Error, Result};

type CompositeKey = (Vec<u32>, i64, usize);

/// A degree-truncated module: finite bases for degrees `0..=max_degree` and
/// sparse matrices for every generator mode whose source and target degrees
/// both lie in the window. Generator mode `m` (that is `a(m)` or `L(m)`) maps
/// degree `d` to degree `d - m`.
#[derive(Clone)]
pub struct GradedModule {
    preset: VoaPreset,
    max_degree: usize,
    labels: Vec<Vec<String>>,
    gens: HashMap<(i32, usize), SparseMatrix>,
    lowest_weight: Option<Q>,
    composite_cache: RefCell<HashMap<CompositeKey, Option<Rc<RationalMatrix>>>>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("preset", &self.preset)
            .field("max_degree", &self.max_degree)
            .field("dims", &self.dims())
            .field("lowest_weight", &self.lowest_weight)
            .finish()
    }
}

/// Image of a homogeneous operator applied to one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeImage {
    /// Target degree, or `None` when it would be negative (the operator is zero).
    pub target: Option<usize>,
    pub matrix: RationalMatrix,
}

impl GradedModule {
    pub(crate) fn from_parts(
        preset: VoaPreset,
        max_degree: usize,
        labels: Vec<Vec<String>>,
        gens: HashMap<(i32, usize), SparseMatrix>,
        lowest_weight: Option<Q>,
    ) -> Self {
        debug_assert_eq!(labels.len(), max_degree + 1);
        Self {
            preset,
            max_degree,
            labels,
            gens,
            lowest_weight,
            composite_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn preset(&self) -> &VoaPreset {
        &self.preset
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, d: usize) -> &[String] {
        &self.labels[d]
    }

    /// L(0)-eigenvalue offset of degree 0 when it is known to be a single value.
    pub fn lowest_weight(&self) -> Option<&Q> {
        self.lowest_weight.as_ref()
    }

    pub fn set_lowest_weight(&mut self, w: Option<Q>) {
        self.lowest_weight = w;
    }

    fn truncation(&self, what: impl Into<String>, degree: i64) -> Error {
        Error::TruncationExceeded {
            what: what.into(),
            degree,
            max: self.max_degree,
        }
    }

    /// Generator mode `m` on degree `d`; `Ok(None)` means the zero map (target degree negative).
    pub fn generator(&self, m: i32, d: usize) -> Result<Option<&SparseMatrix>> {
        let t = d as i64 - m as i64;
        if t < 0 {
            return Ok(None);
        }
        if t > self.max_degree as i64 || d > self.max_degree {
            return Err(self.truncation(self.preset.mode_name(m), t.max(d as i64)));
        }
        Ok(self.gens.get(&(m, d)))
    }

    /// Dense matrix of a generator mode from degree `d`; zero-sized target when `d - m < 0`.
    pub fn generator_matrix(&self, m: i32, d: usize) -> Result<ModeImage> {
        let t = d as i64 - m as i64;
        match self.generator(m, d)? {
            Some(s) => Ok(ModeImage {
                target: Some(t as usize),
                matrix: s.to_dense(),
            }),
            None if t < 0 => Ok(ModeImage {
                target: None,
                matrix: RationalMatrix::zeros(0, self.dim(d)),
            }),
            None => Ok(ModeImage {
                target: Some(t as usize),
                matrix: RationalMatrix::zeros(self.dim(t as usize), self.dim(d)),
            }),
        }
    }

    /// Applies a word of generator modes (rightmost first) to a vector of degree `d`.
    /// Returns `None` once the vector is zero or drops below degree 0.
    pub fn apply_word(&self, word: &[i32], d: usize, v: &[Q]) -> Result<Option<(usize, Vec<Q>)>> {
        let mut deg = d;
        let mut cur = v.to_vec();
        for &m in word.iter().rev() {
            if cur.iter().all(Zero::is_zero) {
                return Ok(None);
            }
            let Some(g) = self.generator(m, deg)? else {
                return Ok(None);
            };
            cur = g.apply(&cur);
            deg = (deg as i64 - m as i64) as usize;
        }
        if cur.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        Ok(Some((deg, cur)))
    }
}

impl GradedModule {
    fn lowering_of_state_mode(&self, p: i64) -> i64 {
        match self.preset.kind {
            VoaKind::Heisenberg => p,
            VoaKind::Virasoro => p - 1,
        }
    }

    /// `G * M` where `G` is generator mode `m` on degree `s`, `M` maps `d -> s`.
    fn gen_times(&self, m: i32, s: usize, mat: &RationalMatrix) -> Result<Option<RationalMatrix>> {
        Ok(self.generator(m, s)?.map(|g| g.mul_dense(mat)))
    }

    /// Matrix of the mode `u_n` for the PBW monomial `u` (given by its parts) from degree `d`.
    ///
    /// For `u = a_{-k} b` with `a` the generating state this expands
    /// `u_n = sum_{p<0} binom(-p-1, k-1) a_p b_{n-p-k} + sum_{p>=0} binom(-p-1, k-1) b_{n-p-k} a_p`,
    /// truncated to the finitely many terms that do not annihilate degree `d`.
    /// `None` is the zero map.
    pub fn composite(&self, parts: &[u32], n: i64, d: usize) -> Result<Option<Rc<RationalMatrix>>> {
        let wt: i64 = parts.iter().map(|&x| x as i64).sum();
        let t = d as i64 + wt - n - 1;
        if t < 0 {
            return Ok(None);
        }
        if t > self.max_degree as i64 || d > self.max_degree {
            return Err(self.truncation(format!("mode {n} of a weight-{wt} state"), t));
        }
        let key = (parts.to_vec(), n, d);
        if let Some(hit) = self.composite_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = self.composite_uncached(parts, n, d, t as usize, wt)?;
        let result = result.filter(|m| !m.is_zero()).map(Rc::new);
        self.composite_cache.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    fn composite_uncached(
        &self,
        parts: &[u32],
        n: i64,
        d: usize,
        t: usize,
        wt: i64,
    ) -> Result<Option<RationalMatrix>> {
        let Some((&first, rest)) = parts.split_first() else {
            return Ok((n == -1).then(|| RationalMatrix::identity(self.dim(d))));
        };
        if rest.is_empty() && first == self.preset.generator_weight() {
            let m = self.preset.state_mode(n);
            return Ok(self.generator(m, d)?.map(SparseMatrix::to_dense));
        }
        let k = self.preset.part_to_state_index(first);
        let wt_b = wt - first as i64;
        let mut acc = RationalMatrix::zeros(self.dim(t), self.dim(d));
        // creation half: a_p with p <= -k sits on the left
        let p_lo = n - k - d as i64 - wt_b + 1;
        for p in p_lo..=-k {
            let qb = n - p - k;
            let s = d as i64 + wt_b - qb - 1;
            if s < 0 {
                continue;
            }
            let Some(mb) = self.composite(rest, qb, d)? else {
                continue;
            };
            let c = binom(-p - 1, k - 1);
            if let Some(term) = self.gen_times(self.preset.state_mode(p), s as usize, &mb)? {
                acc.add_scaled(&term, &c);
            }
        }
        // annihilation half: a_p with p >= 0 sits on the right
        let mut p = 0i64;
        loop {
            let l = self.lowering_of_state_mode(p);
            if l > d as i64 {
                break;
            }
            let c = binom(-p - 1, k - 1);
            let qb = n - p - k;
            if l >= 0 {
                let dl = d - l as usize;
                if let (Some(g), Some(mb)) = (
                    self.generator(self.preset.state_mode(p), d)?,
                    self.composite(rest, qb, dl)?,
                ) {
                    acc.add_scaled(&SparseMatrix::dense_mul(&mb, g), &c);
                }
            } else {
                // b_q L(-1) = L(-1) b_q + q b_{q-1}, keeping every intermediate inside the window
                if t >= 1 {
                    if let Some(mb) = self.composite(rest, qb, d)? {
                        if let Some(term) = self.gen_times(-1, t - 1, &mb)? {
                            acc.add_scaled(&term, &c);
                        }
                    }
                }
                if qb != 0 {
                    if let Some(mb) = self.composite(rest, qb - 1, d)? {
                        acc.add_scaled(&mb, &(c * q(qb)));
                    }
                }
            }
            p += 1;
        }
        Ok(Some(acc))
    }

    /// Matrix of `u_i` on degree `d` for a homogeneous element `u`.
    pub fn mode_matrix(&self, u: &VoaElement, i: i64, d: usize) -> Result<ModeImage> {
        let wt = match u.homogeneous_weight() {
            Some(w) => w as i64,
            None if u.is_zero() => 0,
            None => {
                return Err(Error::Unsupported(
                    "mode matrices need a homogeneous element".into(),
                ))
            }
        };
        let t = d as i64 + wt - i - 1;
        if t < 0 {
            return Ok(ModeImage {
                target: None,
                matrix: RationalMatrix::zeros(0, self.dim(d)),
            });
        }
        if t > self.max_degree as i64 {
            return Err(self.truncation(format!("mode {i} of a weight-{wt} state"), t));
        }
        let t = t as usize;
        let mut acc = RationalMatrix::zeros(self.dim(t), self.dim(d));
        for (m, c) in u.terms() {
            if let Some(mat) = self.composite(m.parts(), i, d)? {
                acc.add_scaled(&mat, c);
            }
        }
        Ok(ModeImage {
            target: Some(t),
            matrix: acc,
        })
    }

    /// Zero mode `o(u) = u_{wt u - 1}` on degree `d`, extended linearly over homogeneous components.
    pub fn zero_mode(&self, u: &VoaElement, d: usize) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::zeros(self.dim(d), self.dim(d));
        for (w, comp) in u.components() {
            let img = self.mode_matrix(&comp, w as i64 - 1, d)?;
            acc.add_scaled(&img.matrix, &Q::one());
        }
        Ok(acc)
    }

    /// `L(m)` on degree `d` (a generator for Virasoro, a mode of the conformal vector otherwise).
    pub fn virasoro_mode(&self, m: i32, d: usize) -> Result<ModeImage> {
        match self.preset.kind {
            VoaKind::Virasoro => self.generator_matrix(m, d),
            VoaKind::Heisenberg => {
                self.mode_matrix(&super::conformal_vector(&self.preset), m as i64 + 1, d)
            }
        }
    }

    pub fn l0(&self, d: usize) -> Result<RationalMatrix> {
        Ok(self.virasoro_mode(0, d)?.matrix)
    }
}

impl GradedModule {
    /// `(mode, source degree)` of every stored generator matrix, sorted.
    pub fn generator_keys(&self) -> Vec<(i32, usize)> {
        let mut keys: Vec<_> = self.gens.keys().copied().collect();
        keys.sort_unstable();
        keys
    }

    /// Image of a vector under the generator keyed `(m, d)`, as a dense vector at the target.
    fn gen_apply(&self, key: (i32, usize), v: &[Q]) -> Vec<Q> {
        self.gens[&key].apply(v)
    }

    fn target_of(key: (i32, usize)) -> usize {
        (key.1 as i64 - key.0 as i64) as usize
    }

    /// True iff the graded subspace is stable under every generator mode in the window.
    pub fn is_submodule(&self, sub: &[Subspace]) -> bool {
        self.generator_keys().into_iter().all(|key| {
            let t = Self::target_of(key);
            sub[key.1]
                .basis()
                .iter()
                .all(|b| sub[t].contains(&self.gen_apply(key, b)))
        })
    }

    /// Smallest graded subspace containing `seeds` and stable under the generator modes in the window.
    pub fn generated_submodule(&self, seeds: &[Subspace]) -> Vec<Subspace> {
        let mut sub = seeds.to_vec();
        let keys = self.generator_keys();
        loop {
            let mut grew = false;
            for &key in &keys {
                let t = Self::target_of(key);
                let imgs: Vec<Vec<Q>> = sub[key.1]
                    .basis()
                    .iter()
                    .map(|b| self.gen_apply(key, b))
                    .collect();
                for img in imgs {
                    grew |= sub[t].insert(img);
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// Largest graded subspace inside `bounds` that is stable under the generator modes in the window.
    pub fn largest_submodule_within(&self, bounds: &[Subspace]) -> Vec<Subspace> {
        let mut cur = bounds.to_vec();
        let keys = self.generator_keys();
        loop {
            let mut shrank = false;
            for d in 0..=self.max_degree {
                let basis = cur[d].basis().to_vec();
                if basis.is_empty() {
                    continue;
                }
                // residues of every generator image modulo the current target space
                let mut residues: Vec<Vec<Q>> = vec![Vec::new(); basis.len()];
                for &key in keys.iter().filter(|k| k.1 == d) {
                    let t = Self::target_of(key);
                    for (r, b) in residues.iter_mut().zip(&basis) {
                        r.extend(cur[t].reduce(self.gen_apply(key, b)));
                    }
                }
                let len = residues[0].len();
                if len == 0 {
                    continue;
                }
                let mat = RationalMatrix::from_columns(len, &residues);
                let ker = crate::linalg::kernel(&mat);
                if ker.dim() == basis.len() {
                    continue;
                }
                let dim = self.dim(d);
                let next = Subspace::span(
                    dim,
                    ker.basis().iter().map(|coef| {
                        let mut v = vec![Q::zero(); dim];
                        for (a, b) in coef.iter().zip(&basis) {
                            if a.is_zero() {
                                continue;
                            }
                            for (x, y) in v.iter_mut().zip(b) {
                                *x += a * y;
                            }
                        }
                        v
                    }),
                );
                cur[d] = next;
                shrank = true;
            }
            if !shrank {
                return cur;
            }
        }
    }

    /// Quotient by a graded submodule. Returns the quotient and, per degree, the
    /// coordinates of this module whose images form the quotient basis.
    pub fn quotient(&self, sub: &[Subspace]) -> Result<(GradedModule, Vec<Vec<usize>>)> {
        if sub.len() != self.max_degree + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.max_degree + 1,
                got: sub.len(),
            });
        }
        let mut reps = Vec::with_capacity(sub.len());
        for (d, s) in sub.iter().enumerate() {
            reps.push(quotient_basis(&Subspace::full(self.dim(d)), s)?);
        }
        let mut gens = HashMap::new();
        for key in self.generator_keys() {
            let t = Self::target_of(key);
            let cols = reps[key.1]
                .iter()
                .map(|&j| {
                    let mut e = vec![Q::zero(); self.dim(key.1)];
                    e[j] = Q::one();
                    let r = sub[t].reduce(self.gen_apply(key, &e));
                    reps[t]
                        .iter()
                        .enumerate()
                        .filter(|(_, &i)| !r[i].is_zero())
                        .map(|(pos, &i)| (pos, r[i].clone()))
                        .collect()
                })
                .collect();
            gens.insert(key, SparseMatrix::from_columns(reps[t].len(), cols));
        }
        let labels = reps
            .iter()
            .enumerate()
            .map(|(d, r)| r.iter().map(|&i| self.labels[d][i].clone()).collect())
            .collect();
        let module = GradedModule::from_parts(
            self.preset.clone(),
            self.max_degree,
            labels,
            gens,
            self.lowest_weight.clone(),
        );
        Ok((module, reps))
    }

    /// The same module with the window cut down to `0..=max_degree`.
    pub fn truncate(&self, max_degree: usize) -> GradedModule {
        let max_degree = max_degree.min(self.max_degree);
        let gens = self
            .gens
            .iter()
            .filter(|(k, _)| k.1 <= max_degree && Self::target_of(**k) <= max_degree)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        GradedModule::from_parts(
            self.preset.clone(),
            max_degree,
            self.labels[..=max_degree].to_vec(),
            gens,
            self.lowest_weight.clone(),
        )
    }

    /// Shifts degrees down by `shift`, discarding the (zero) degrees below it.
    pub fn regrade(&self, shift: usize) -> Result<GradedModule> {
        if shift > self.max_degree {
            return Err(Error::Unsupported("regrading shift exceeds the window".into()));
        }
        if (0..shift).any(|d| self.dim(d) != 0) {
            return Err(Error::Unsupported(
                "regrading would discard nonzero degrees".into(),
            ));
        }
        let max_degree = self.max_degree.saturating_sub(shift);
        let gens = self
            .gens
            .iter()
            .filter(|(k, _)| k.1 >= shift && Self::target_of(**k) >= shift)
            .map(|(k, v)| ((k.0, k.1 - shift), v.clone()))
            .collect();
        Ok(GradedModule::from_parts(
            self.preset.clone(),
            max_degree,
            self.labels[shift..].to_vec(),
            gens,
            self.lowest_weight.as_ref().map(|w| w + q(shift as i64)),
        ))
    }
}
