use serde::{Deserialize, Serialize};

use super::algebra::{ZhuAlgebra, ZhuLevel};
use super::presentation::{stability, PolyXY, RelationEvaluator};
use crate::voa::{VoaElement, VoaPreset};
use crate::{Error, Result};

/// Outcome of checking that `v + O_n -> v + O_{n-1}` is a well-defined algebra map on the window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurjectionReport {
    pub n: usize,
    pub cutoff: usize,
    /// Every level-`n` spanning element lies in the level-`n-1` span.
    pub on_contained: bool,
    pub generators_checked: usize,
    /// Images of reduced level-`n` products agree with level-`n-1` products of the images.
    pub multiplicative: bool,
    pub products_checked: usize,
    pub unit_preserved: bool,
    pub stabilized_upper: bool,
    pub stabilized_lower: bool,
}

impl SurjectionReport {
    pub fn passed(&self) -> bool {
        self.on_contained && self.multiplicative && self.unit_preserved
    }
}

/// The two algebras compared by [`surjection_consistency`].
pub struct SurjectionPair {
    pub upper: ZhuAlgebra,
    pub lower: ZhuAlgebra,
}

impl SurjectionPair {
    pub fn new(preset: &VoaPreset, n: usize, cutoff: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("the surjection needs level n >= 1".into()));
        }
        let upper = ZhuAlgebra::new(ZhuLevel::new(preset.clone(), n, cutoff)?)?;
        let lower = ZhuAlgebra::with_vacuum(
            ZhuLevel::new(preset.clone(), n - 1, cutoff)?,
            upper.vacuum().clone(),
        )?;
        Ok(Self { upper, lower })
    }

    /// Image in `A_{n-1}` (reduced) of an element of `V`, read through `A_n`.
    pub fn image(&self, v: &VoaElement) -> Result<VoaElement> {
        self.lower.reduce(&self.upper.reduce(v)?)
    }

    /// Image in `A_{n-1}` of a polynomial in `x`, `y` evaluated in `A_n`.
    pub fn image_of_poly(&self, p: &PolyXY) -> Result<VoaElement> {
        let mut ev = RelationEvaluator::new(&self.upper);
        let v = ev.poly(p)?;
        self.image(&v)
    }

    /// The same polynomial evaluated directly in `A_{n-1}`.
    pub fn lower_poly(&self, p: &PolyXY) -> Result<VoaElement> {
        let mut ev = RelationEvaluator::new(&self.lower);
        let v = ev.poly(p)?;
        self.lower.reduce(&v)
    }
}

pub fn surjection_consistency(preset: &VoaPreset, n: usize, cutoff: usize) -> Result<SurjectionReport> {
    let pair = SurjectionPair::new(preset, n, cutoff)?;
    let (upper, lower) = (&pair.upper, &pair.lower);
    let mut on_contained = true;
    for g in upper.generators() {
        if !lower.membership(&g.element)?.is_inside() {
            on_contained = false;
            break;
        }
    }
    let reps: Vec<VoaElement> = upper
        .representatives()
        .iter()
        .map(|m| VoaElement::monomial(m.clone()))
        .collect();
    let mut multiplicative = true;
    let mut checked = 0;
    for a in &reps {
        for b in &reps {
            if !upper.fits(a, b) {
                continue;
            }
            checked += 1;
            let via_upper = lower.reduce(&upper.reduce(&upper.star(a, b)?)?)?;
            let (ia, ib) = (pair.image(a)?, pair.image(b)?);
            let via_lower = if lower.fits(&ia, &ib) {
                lower.reduce(&lower.star(&ia, &ib)?)?
            } else {
                lower.reduce(&lower.star(a, b)?)?
            };
            if via_upper != via_lower {
                multiplicative = false;
            }
        }
    }
    let unit = VoaElement::vacuum();
    let unit_preserved = pair.image(&unit)? == lower.reduce(&unit)?;
    Ok(SurjectionReport {
        n,
        cutoff,
        on_contained,
        generators_checked: upper.generators().len(),
        multiplicative,
        products_checked: checked,
        unit_preserved,
        stabilized_upper: stability(upper)?.0,
        stabilized_lower: stability(lower)?.0,
    })
}
