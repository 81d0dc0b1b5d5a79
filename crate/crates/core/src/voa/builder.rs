use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;

use super::module::GradedModule;
use super::monomial::partitions_with_min;
use super::preset::{VoaKind, VoaPreset};
use super::sparse::SparseMatrix;
use crate::linalg::RationalMatrix;
use crate::rational::Q;
use crate::{Error, Result};

/// Basis word `C B u_i` of a module generated freely by creation modes `C`
/// and by lowering modes `B` of small drop over a generating space `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwLabel {
    /// Creation parts, descending: `[3, 1]` is `X(-3) X(-1)`.
    pub creation: Vec<u32>,
    /// Lowering drops, ascending: `[1, 2]` is `X(1) X(2)` (so `X(2)` acts first).
    pub lowering: Vec<u32>,
    pub index: usize,
}

type Terms = Vec<(PbwLabel, Q)>;

/// Input for [`build_pbw_module`].
#[derive(Clone, Debug)]
pub struct PbwSpec {
    pub preset: VoaPreset,
    pub max_degree: usize,
    /// Degree carried by the generating space.
    pub base_degree: usize,
    /// Lowering generator modes of drop `1..=level` act freely; larger drops kill the generating space.
    pub level: usize,
    /// Creation modes of index `<= -min_creation` act freely; the remaining creation modes kill it.
    pub min_creation: u32,
    /// Action of `a(0)` (Heisenberg) or `L(0)` (Virasoro) on the generating space.
    pub zero_mode: RationalMatrix,
    /// Display names for the generating vectors, e.g. `|0>` or `|u0>`.
    pub names: Vec<String>,
    pub lowest_weight: Option<Q>,
}

struct Builder<'a> {
    spec: &'a PbwSpec,
    memo: HashMap<(i32, PbwLabel), Rc<Terms>>,
    max_drop: usize,
}

fn accumulate(acc: &mut BTreeMap<PbwLabel, Q>, lab: PbwLabel, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(lab.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&lab);
    }
}

impl Builder<'_> {
    fn single(lab: PbwLabel) -> Rc<Terms> {
        Rc::new(vec![(lab, Q::from_integer(1.into()))])
    }

    fn act(&mut self, m: i32, lab: &PbwLabel) -> Rc<Terms> {
        let key = (m, lab.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let res = self.act_uncached(m, lab);
        self.memo.insert(key, res.clone());
        res
    }

    fn commute_past(&mut self, m: i32, left: i32, rest: PbwLabel) -> Rc<Terms> {
        // m X(left) R = X(left) (m R) + [m, X(left)] R
        let mut acc = BTreeMap::new();
        let inner = self.act(m, &rest);
        for (lab, x) in inner.iter() {
            for (lab2, y) in self.act(left, lab).iter() {
                accumulate(&mut acc, lab2.clone(), x * y);
            }
        }
        let br = self.spec.preset.bracket(m, left);
        if let Some((mode, c)) = br.mode {
            for (lab, x) in self.act(mode, &rest).iter() {
                accumulate(&mut acc, lab.clone(), x * &c);
            }
        }
        accumulate(&mut acc, rest, br.central);
        Rc::new(acc.into_iter().collect())
    }

    fn act_uncached(&mut self, m: i32, lab: &PbwLabel) -> Rc<Terms> {
        if let Some((&p1, rest)) = lab.creation.split_first() {
            let c1 = -(p1 as i32);
            if m <= c1 {
                let mut creation = vec![(-m) as u32];
                creation.extend_from_slice(&lab.creation);
                return Self::single(PbwLabel {
                    creation,
                    ..lab.clone()
                });
            }
            let rest = PbwLabel {
                creation: rest.to_vec(),
                ..lab.clone()
            };
            return self.commute_past(m, c1, rest);
        }
        if m < 0 && (-m) as u32 >= self.spec.min_creation {
            return Self::single(PbwLabel {
                creation: vec![(-m) as u32],
                ..lab.clone()
            });
        }
        let Some((&b1, brest)) = lab.lowering.split_first() else {
            return self.act_on_generating(m, lab.index);
        };
        if m > 0 && m as u32 <= b1 {
            let drop: usize = lab.lowering.iter().map(|&x| x as usize).sum::<usize>() + m as usize;
            if drop > self.max_drop {
                return Rc::new(Vec::new());
            }
            let mut lowering = vec![m as u32];
            lowering.extend_from_slice(&lab.lowering);
            return Self::single(PbwLabel {
                lowering,
                ..lab.clone()
            });
        }
        let rest = PbwLabel {
            lowering: brest.to_vec(),
            ..lab.clone()
        };
        self.commute_past(m, b1 as i32, rest)
    }

    fn act_on_generating(&mut self, m: i32, i: usize) -> Rc<Terms> {
        let empty = |index| PbwLabel {
            creation: Vec::new(),
            lowering: Vec::new(),
            index,
        };
        if m == 0 {
            let z = &self.spec.zero_mode;
            let v: Terms = (0..z.rows())
                .filter(|&j| !z[(j, i)].is_zero())
                .map(|j| (empty(j), z[(j, i)].clone()))
                .collect();
            return Rc::new(v);
        }
        if m > 0 && m as usize <= self.max_drop {
            return Self::single(PbwLabel {
                creation: Vec::new(),
                lowering: vec![m as u32],
                index: i,
            });
        }
        Rc::new(Vec::new())
    }
}

fn lowering_words(total: usize, level: usize) -> Vec<Vec<u32>> {
    // ascending parts in 1..=level summing to `total`
    let mut out: Vec<Vec<u32>> = partitions_with_min(total as u32, 1)
        .into_iter()
        .filter(|p| p.parts().iter().all(|&x| x as usize <= level))
        .map(|p| {
            let mut v = p.parts().to_vec();
            v.reverse();
            v
        })
        .collect();
    out.sort();
    out
}

pub fn label_text(kind: VoaKind, lab: &PbwLabel, names: &[String]) -> String {
    let sym = match kind {
        VoaKind::Heisenberg => "a",
        VoaKind::Virasoro => "L",
    };
    let mut s = String::new();
    for k in &lab.creation {
        s.push_str(&format!("{sym}(-{k})"));
    }
    for k in &lab.lowering {
        s.push_str(&format!("{sym}({k})"));
    }
    s.push_str(&names[lab.index]);
    s
}

/// Enumerates the basis words of each degree, in the order used for coordinates.
pub fn pbw_labels(spec: &PbwSpec) -> Vec<Vec<PbwLabel>> {
    let max_drop = spec.level.min(spec.base_degree);
    let dim_u = spec.zero_mode.rows();
    let mut out = vec![Vec::new(); spec.max_degree + 1];
    for (d, slot) in out.iter_mut().enumerate() {
        for s in 0..=max_drop {
            let raise = d as i64 - spec.base_degree as i64 + s as i64;
            if raise < 0 {
                continue;
            }
            for b in lowering_words(s, spec.level) {
                for c in partitions_with_min(raise as u32, spec.min_creation.max(1)) {
                    for index in 0..dim_u {
                        slot.push(PbwLabel {
                            creation: c.parts().to_vec(),
                            lowering: b.clone(),
                            index,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Builds the truncated module with basis [`pbw_labels`] and all generator matrices.
pub fn build_pbw_module(spec: &PbwSpec) -> Result<(GradedModule, Vec<Vec<PbwLabel>>)> {
    let z = &spec.zero_mode;
    if !z.is_square() || z.rows() != spec.names.len() {
        return Err(Error::DimensionMismatch {
            expected: spec.names.len(),
            got: z.rows(),
        });
    }
    let labels = pbw_labels(spec);
    let mut index: HashMap<&PbwLabel, (usize, usize)> = HashMap::new();
    for (d, labs) in labels.iter().enumerate() {
        for (i, l) in labs.iter().enumerate() {
            index.insert(l, (d, i));
        }
    }
    let mut b = Builder {
        spec,
        memo: HashMap::new(),
        max_drop: spec.level.min(spec.base_degree),
    };
    let top = spec.max_degree as i64;
    let mut gens = HashMap::new();
    for (d, labs) in labels.iter().enumerate() {
        for m in (d as i64 - top)..=(d as i64) {
            let t = (d as i64 - m) as usize;
            let m = m as i32;
            let mut cols = Vec::with_capacity(labs.len());
            for lab in labs {
                let img = b.act(m, lab);
                let mut col = Vec::with_capacity(img.len());
                for (l2, c) in img.iter() {
                    let &(d2, j) = index.get(l2).ok_or_else(|| {
                        Error::Unsupported(format!("basis word {l2:?} outside the enumerated window"))
                    })?;
                    debug_assert_eq!(d2, t);
                    col.push((j, c.clone()));
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
            gens.insert((m, d), SparseMatrix::from_columns(labels[t].len(), cols));
        }
    }
    let text = labels
        .iter()
        .map(|labs| {
            labs.iter()
                .map(|l| label_text(spec.preset.kind, l, &spec.names))
                .collect()
        })
        .collect();
    let module = GradedModule::from_parts(
        spec.preset.clone(),
        spec.max_degree,
        text,
        gens,
        spec.lowest_weight.clone(),
    );
    Ok((module, labels))
}
