use serde::{Deserialize, Serialize};

use super::products::{circ_n, star_n, star_weight_bound};
use super::tracked::TrackedSpan;
use crate::rational::{serde_q, Q};
use crate::voa::{PbwMonomial, VacuumModule, VoaElement, VoaPreset};
use crate::{Error, Result};

/// Level `n` with its weight window `[0, cutoff]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZhuLevel {
    pub preset: VoaPreset,
    pub n: usize,
    pub cutoff: usize,
}

impl ZhuLevel {
    pub fn new(preset: VoaPreset, n: usize, cutoff: usize) -> Result<Self> {
        if cutoff < 2 * n + 2 {
            return Err(Error::InvalidSpec(format!(
                "weight cutoff {cutoff} is below 2n + 2 = {} for level {n}",
                2 * n + 2
            )));
        }
        Ok(Self { preset, n, cutoff })
    }
}

/// Which spanning element of `O_n` a generator is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `u o_n v`
    Circ { u: PbwMonomial, v: PbwMonomial },
    /// `(L(-1) + L(0)) v`
    Translate { v: PbwMonomial },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OnGenerator {
    pub kind: GeneratorKind,
    pub element: VoaElement,
}

/// All nonzero `u o_n v` with `wt u + wt v + 2n + 1 <= cutoff` and `(L(-1)+L(0)) v` with `wt v + 1 <= cutoff`.
pub fn on_generators(vac: &VacuumModule, n: usize, cutoff: usize) -> Result<Vec<OnGenerator>> {
    let preset = vac.preset().clone();
    let mut out = Vec::new();
    for wu in 0..=cutoff {
        for wv in 0..=cutoff {
            if wu + wv + 2 * n + 1 > cutoff {
                continue;
            }
            for u in crate::voa::weight_basis(&preset, wu as u32) {
                let ue = VoaElement::monomial(u.clone());
                for v in crate::voa::weight_basis(&preset, wv as u32) {
                    let e = circ_n(vac, &ue, &VoaElement::monomial(v.clone()), n)?;
                    if !e.is_zero() {
                        out.push(OnGenerator {
                            kind: GeneratorKind::Circ { u: u.clone(), v },
                            element: e,
                        });
                    }
                }
            }
        }
    }
    for wv in 0..cutoff {
        for v in crate::voa::weight_basis(&preset, wv as u32) {
            let e = vac.translate(&VoaElement::monomial(v.clone()))?;
            if !e.is_zero() {
                out.push(OnGenerator {
                    kind: GeneratorKind::Translate { v },
                    element: e,
                });
            }
        }
    }
    Ok(out)
}

/// A single coefficient of a membership witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub generator: usize,
    #[serde(with = "serde_q")]
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OnMembership {
    /// Certified: the element equals the stated combination of generators.
    Inside(Vec<WitnessTerm>),
    /// Not in the span of the generators that fit the window; carries the residual.
    NotInWindow(VoaElement),
}

impl OnMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, OnMembership::Inside(_))
    }
}

/// `V_{<=cutoff}` together with the truncated span of `O_n(V)`.
#[derive(Clone, Debug)]
pub struct ZhuAlgebra {
    level: ZhuLevel,
    vac: VacuumModule,
    gens: Vec<OnGenerator>,
    span: TrackedSpan,
    reps: Vec<PbwMonomial>,
    rep_coords: Vec<usize>,
}

impl ZhuAlgebra {
    pub fn new(level: ZhuLevel) -> Result<Self> {
        let vac = VacuumModule::new(&level.preset, level.cutoff)?;
        Self::with_vacuum(level, vac)
    }

    /// Reuses an existing vacuum module (its window must be at least the cutoff).
    pub fn with_vacuum(level: ZhuLevel, vac: VacuumModule) -> Result<Self> {
        if vac.max_weight() != level.cutoff {
            return Err(Error::InvalidSpec(
                "vacuum module window must equal the weight cutoff".into(),
            ));
        }
        let gens = on_generators(&vac, level.n, level.cutoff)?;
        let total = vac.module().total_dim();
        let mut span = TrackedSpan::new(total);
        for (i, g) in gens.iter().enumerate() {
            span.insert(i, vac.flat_coordinates(&g.element)?);
        }
        let rep_coords = span.free_columns();
        let flat: Vec<PbwMonomial> = (0..=level.cutoff)
            .flat_map(|w| vac.basis(w).to_vec())
            .collect();
        let reps = rep_coords.iter().map(|&i| flat[i].clone()).collect();
        Ok(Self {
            level,
            vac,
            gens,
            span,
            reps,
            rep_coords,
        })
    }

    pub fn level(&self) -> &ZhuLevel {
        &self.level
    }

    pub fn vacuum(&self) -> &VacuumModule {
        &self.vac
    }

    pub fn generators(&self) -> &[OnGenerator] {
        &self.gens
    }

    /// Dimension of the truncated `O_n` span.
    pub fn span_dim(&self) -> usize {
        self.span.dim()
    }

    /// Graded-lex-least monomials whose classes form a basis of the truncated quotient.
    pub fn representatives(&self) -> &[PbwMonomial] {
        &self.reps
    }

    pub fn membership(&self, v: &VoaElement) -> Result<OnMembership> {
        let coords = self.vac.flat_coordinates(v)?;
        Ok(match self.span.witness(coords) {
            Ok(w) => OnMembership::Inside(
                w.into_iter()
                    .map(|(generator, coeff)| WitnessTerm { generator, coeff })
                    .collect(),
            ),
            Err(res) => OnMembership::NotInWindow(self.vac.from_flat(&res)),
        })
    }

    /// Recomputes the combination of generators named by a witness.
    pub fn witness_value(&self, witness: &[WitnessTerm]) -> VoaElement {
        let mut e = VoaElement::zero();
        for t in witness {
            e.add_assign(&self.gens[t.generator].element.scale(&t.coeff));
        }
        e
    }

    /// Canonical representative: the residual modulo the span, supported on [`Self::representatives`].
    pub fn reduce(&self, v: &VoaElement) -> Result<VoaElement> {
        let r = self.span.reduce(self.vac.flat_coordinates(v)?);
        Ok(self.vac.from_flat(&r))
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn coordinates(&self, v: &VoaElement) -> Result<Vec<Q>> {
        let r = self.span.reduce(self.vac.flat_coordinates(v)?);
        Ok(self.rep_coords.iter().map(|&i| r[i].clone()).collect())
    }

    pub fn fits(&self, a: &VoaElement, b: &VoaElement) -> bool {
        star_weight_bound(a, b, self.level.n) <= self.level.cutoff
    }

    /// `a *_n b` in `V` (not reduced). Errors if the product can leave the window.
    pub fn star(&self, a: &VoaElement, b: &VoaElement) -> Result<VoaElement> {
        if !self.fits(a, b) {
            return Err(Error::TruncationExceeded {
                what: "star product".into(),
                degree: star_weight_bound(a, b, self.level.n) as i64,
                max: self.level.cutoff,
            });
        }
        star_n(&self.vac, a, b, self.level.n)
    }

    /// Reduced product of the classes of `a` and `b` (both are reduced first).
    pub fn product(&self, a: &VoaElement, b: &VoaElement) -> Result<VoaElement> {
        let (a, b) = (self.reduce(a)?, self.reduce(b)?);
        self.reduce(&self.star(&a, &b)?)
    }

    pub fn circ(&self, u: &VoaElement, v: &VoaElement) -> Result<VoaElement> {
        circ_n(&self.vac, u, v, self.level.n)
    }
}
